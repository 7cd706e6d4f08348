#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "salem/central.hpp"
#include "salem/coding.hpp"
#include "salem/construction.hpp"
#include "salem/hofbauer.hpp"
#include "salem/polynomial.hpp"
#include "salem/roots.hpp"
#include "salem/window.hpp"

namespace salem {

inline constexpr const char* kToolVersion = "0.1.0";

// ---- polynomials ----------------------------------------------------------

inline void to_json(nlohmann::json& j, const IntPolynomial& f) {
    j = nlohmann::json{{"coeffs", f.c}};
}

inline void from_json(const nlohmann::json& j, IntPolynomial& f) {
    j.at("coeffs").get_to(f.c);
}

// ---- windows ---------------------------------------------------------------

template <class T>
inline void to_json(nlohmann::json& j, const Window<T>& w) {
    j = nlohmann::json{{"lo", w.lo},
                       {"hi", w.hi()},
                       {"values", w.values},
                       {"growth", w.growth == Growth::bounded ? "bounded" : "linear"}};
}

template <class T>
inline void from_json(const nlohmann::json& j, Window<T>& w) {
    j.at("lo").get_to(w.lo);
    j.at("values").get_to(w.values);
    std::string g = j.value("growth", "bounded");
    w.growth = g == "linear" ? Growth::linear : Growth::bounded;
}

// ---- roots -----------------------------------------------------------------

inline const char* root_class_name(RootClass c) {
    switch (c) {
        case RootClass::minus: return "minus";
        case RootClass::zero: return "zero";
        default: return "plus";
    }
}

inline void to_json(nlohmann::json& j, const Root& r) {
    j = nlohmann::json{{"re", static_cast<double>(r.omega.re)},
                       {"im", static_cast<double>(r.omega.im)},
                       {"cls", root_class_name(r.cls)},
                       {"b_re", static_cast<double>(r.b.re)},
                       {"b_im", static_cast<double>(r.b.im)}};
}

inline void to_json(nlohmann::json& j, const RootData& rd) {
    j = nlohmann::json{{"poly", rd.f}, {"digits", rd.digits}, {"roots", rd.roots}};
}

inline void to_json(nlohmann::json& j, const PolyClass& pc) {
    j = nlohmann::json{{"irreducible", pc.irreducible}, {"cyclotomic", pc.cyclotomic},
                       {"reciprocal", pc.reciprocal},   {"hyperbolic", pc.hyperbolic},
                       {"salem", pc.salem},             {"pisot", pc.pisot},
                       {"n_minus", pc.n_minus},         {"n_zero", pc.n_zero},
                       {"n_plus", pc.n_plus}};
}

// ---- central vectors -------------------------------------------------------

inline void to_json(nlohmann::json& j, const CentralVector& cv) {
    j = nlohmann::json::array();
    for (std::size_t i = 0; i < cv.terms(); ++i)
        j.push_back({{"omega_re", cv.omega[i].real()},
                     {"omega_im", cv.omega[i].imag()},
                     {"c_re", cv.c[i].real()},
                     {"c_im", cv.c[i].imag()}});
}

inline void from_json(const nlohmann::json& j, CentralVector& cv) {
    cv = CentralVector{};
    for (const auto& row : j) {
        cv.omega.emplace_back(row.at("omega_re").get<double>(), row.at("omega_im").get<double>());
        cv.c.emplace_back(row.at("c_re").get<double>(), row.at("c_im").get<double>());
    }
}

// ---- diagnostics -----------------------------------------------------------

inline void to_json(nlohmann::json& j, const DboundRow& r) {
    j = nlohmann::json{{"K", r.K}, {"k", r.k}, {"fraction", r.fraction}};
}

// ---- chains ----------------------------------------------------------------

inline void to_json(nlohmann::json& j, const ChainState& s) {
    j = nlohmann::json{{"digit", s.digit}, {"kind", s.follower ? "level" : "full"},
                       {"level", s.level}};
}

inline void to_json(nlohmann::json& j, const HofbauerChain& ch) {
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t s = 0; s < ch.size(); ++s)
        for (long t : ch.next[s]) edges.push_back({static_cast<long>(s), t});
    j = nlohmann::json{{"depth", ch.depth},   {"exact", ch.exact},
                       {"digit_max", ch.digit_max}, {"states", ch.states},
                       {"edges", edges}};
    if (ch.perron_done) {
        j["lambda"] = ch.lambda;
        j["y"] = ch.y;
        j["x"] = ch.x;
    }
}

// ---- construction ----------------------------------------------------------

inline void to_json(nlohmann::json& j, const InsertionLog& log) {
    nlohmann::json ins = nlohmann::json::array();
    for (const auto& pr : log.insertions) ins.push_back({pr.first, pr.second});
    std::vector<int> in_b(log.in_B.begin(), log.in_B.end());
    j = nlohmann::json{{"K", log.K},
                       {"J", log.J},
                       {"L", log.L},
                       {"stages", log.stages},
                       {"block_len", log.block_len},
                       {"l_list", log.l_list},
                       {"j_list", log.j_list},
                       {"in_B", in_b},
                       {"checkpoint_norm", log.checkpoint_norm},
                       {"insertions", ins},
                       {"consumed_input", log.consumed_input},
                       {"processed_end", log.processed_end}};
}

inline void to_json(nlohmann::json& j, const VerifyResult& r) {
    j = nlohmann::json{{"ok", r.ok},
                       {"worst", r.worst},
                       {"worst_j", r.worst_j},
                       {"worst_jprime", r.worst_jprime}};
}

inline void to_json(nlohmann::json& j, const EntropyEstimate& e) {
    j = nlohmann::json{{"log_count_rate", e.log_count_rate},
                       {"shannon_rate", e.shannon_rate},
                       {"distinct", e.distinct},
                       {"blocks", e.blocks}};
}

// Experiment configuration; L == 0 encodes "auto" (calibrate, then back off
// on insertion failures), stages == 0 encodes "as many as the length allows".
struct ExperimentConfig {
    IntPolynomial poly;
    double K = 0; // 0 = calibrate
    long J = 8;
    long L = 0; // 0 = auto
    long stages = 0;
    long samples = 10;
    long length = 2000;
    unsigned long long seed = 1;
    long block = 12;
};

inline void to_json(nlohmann::json& j, const ExperimentConfig& c) {
    j = nlohmann::json{{"poly", c.poly},       {"K", c.K},
                       {"J", c.J},             {"L", c.L == 0 ? nlohmann::json("auto")
                                                              : nlohmann::json(c.L)},
                       {"stages", c.stages},   {"samples", c.samples},
                       {"length", c.length},   {"seed", c.seed},
                       {"block", c.block}};
}

inline void from_json(const nlohmann::json& j, ExperimentConfig& c) {
    j.at("poly").get_to(c.poly);
    c.K = j.value("K", 0.0);
    c.J = j.value("J", 8L);
    if (j.contains("L") && j["L"].is_number())
        c.L = j["L"].get<long>();
    else
        c.L = 0;
    c.stages = j.value("stages", 0L);
    c.samples = j.value("samples", 10L);
    c.length = j.value("length", 2000L);
    c.seed = j.value("seed", 1ULL);
    c.block = j.value("block", 12L);
}

// ---- digit strings ----------------------------------------------------------

// Compact digit form "10100101" whenever every digit is a single decimal
// digit; otherwise a JSON array literal.
inline std::string digit_string(const IntWindow& v) {
    bool compact = true;
    for (long long d : v.values)
        if (d < 0 || d > 9) {
            compact = false;
            break;
        }
    if (compact) {
        std::string s;
        s.reserve(v.values.size());
        for (long long d : v.values) s.push_back(static_cast<char>('0' + d));
        return s;
    }
    nlohmann::json j = v.values;
    return j.dump();
}

inline std::vector<long long> digits_from_string(const std::string& s) {
    std::vector<long long> out;
    if (!s.empty() && s.front() == '[') {
        nlohmann::json j = nlohmann::json::parse(s);
        out = j.get<std::vector<long long>>();
        return out;
    }
    out.reserve(s.size());
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw Error("bad digit character in digit string");
        out.push_back(ch - '0');
    }
    return out;
}

// ---- CSV provenance ----------------------------------------------------------

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

// Header comment carrying the tool version and a hash of the fully resolved
// configuration, so a CSV can always be traced back to its run.
inline std::string csv_header(const nlohmann::json& resolved_config) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(resolved_config.dump())));
    return std::string("# salem v") + kToolVersion + " config=" + buf;
}

} // namespace salem
