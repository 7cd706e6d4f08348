// Command-line front end. Thin wrappers only: every number printed here is
// produced by a library call; this file just parses flags and formats output.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "salem/beta.hpp"
#include "salem/coding.hpp"
#include "salem/construction.hpp"
#include "salem/errors.hpp"
#include "salem/hofbauer.hpp"
#include "salem/homoclinic.hpp"
#include "salem/mp.hpp"
#include "salem/polynomial.hpp"
#include "salem/roots.hpp"
#include "salem/serialize.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
    std::vector<long long> poly;
    double beta = 0;
    unsigned precision = 60;
    unsigned long long seed = 1;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool wants_poly = true) {
    if (wants_poly)
        cmd->add_option("--poly", o.poly, "polynomial coefficients f_0,...,f_m (ascending)")
            ->delimiter(',');
    cmd->add_option("--precision", o.precision, "working precision in decimal digits")
        ->envname("SALEM_PRECISION")
        ->check(CLI::Range(20u, 10000u));
    cmd->add_option("--seed", o.seed, "root seed for all randomness");
    cmd->add_option("--out", o.out, "output file path (default: stdout)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw salem::Error("cannot open output file: " + out_path);
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
}

salem::IntPolynomial require_poly(const CommonOpts& o) {
    if (o.poly.empty())
        throw salem::Error("--poly is required (comma-separated ascending coefficients)");
    salem::IntPolynomial f{o.poly};
    f.validate();
    return f;
}

// Resolved run configuration: every command echoes this next to its results.
json resolved_config(const std::string& command, const CommonOpts& o, const json& extra) {
    json cfg{{"command", command},
             {"precision", o.precision},
             {"seed", o.seed},
             {"format", o.format}};
    if (!o.poly.empty()) cfg["poly"] = o.poly;
    if (o.beta > 0) cfg["beta"] = o.beta;
    for (auto it = extra.begin(); it != extra.end(); ++it) cfg[it.key()] = it.value();
    return cfg;
}

// ---- classify ---------------------------------------------------------------

int cmd_classify(const CommonOpts& o) {
    auto f = require_poly(o);
    json cfg = resolved_config("classify", o, {});
    salem::PolyClass pc = salem::classify(f, o.precision);
    salem::RootData rd = salem::find_roots(f, o.precision);

    if (o.format == "csv") {
        std::ostringstream csv;
        csv << salem::csv_header(cfg) << '\n';
        csv << "# config " << cfg.dump() << '\n';
        csv << "re,im,cls,b_re,b_im\n";
        for (const auto& r : rd.roots)
            csv << fmt_double(static_cast<double>(r.omega.re)) << ','
                << fmt_double(static_cast<double>(r.omega.im)) << ','
                << salem::root_class_name(r.cls) << ','
                << fmt_double(static_cast<double>(r.b.re)) << ','
                << fmt_double(static_cast<double>(r.b.im)) << '\n';
        emit(csv.str(), o.out);
        return 0;
    }

    json rep{{"config", cfg}, {"class", pc}, {"roots", rd.roots},
             {"lambda_inside", rd.lambda_inside()}, {"lambda_outside", rd.lambda_outside()}};
    if (auto b = rd.real_root_above_one()) rep["beta"] = static_cast<double>(*b);
    emit(rep.dump(2), o.out);
    return 0;
}

// ---- probe ------------------------------------------------------------------

int cmd_probe(const CommonOpts& o, long depth) {
    salem::BetaSystem bs = [&] {
        if (!o.poly.empty()) return salem::BetaSystem::from_poly(require_poly(o), o.precision);
        if (o.beta > 1) {
            // An integer beta has minimal polynomial u - n; route it through the
            // exact engine rather than the numeric one.
            double n = std::floor(o.beta + 0.5);
            if (n >= 2 && std::abs(o.beta - n) < 1e-12)
                return salem::BetaSystem::from_poly(
                    salem::IntPolynomial{{-static_cast<long long>(n), 1}}, o.precision);
            return salem::BetaSystem::from_real(o.beta, o.precision);
        }
        throw salem::Error("probe needs --poly or --beta > 1");
    }();

    json cfg = resolved_config("probe", o, {{"depth", depth}});
    auto period = bs.sofic_probe(depth);

    // Perron value of the depth-D truncation, for D = 1..min(depth, 60).
    long d_top = std::min<long>(depth, 60);
    json table = json::array();
    std::ostringstream csv;
    csv << salem::csv_header(cfg) << '\n' << "# config " << cfg.dump() << '\n';
    csv << "D,lambda,states,exact\n";
    for (long D = 1; D <= d_top; ++D) {
        salem::HofbauerChain ch = salem::build_chain(bs, D);
        salem::perron(ch);
        table.push_back({{"D", D},
                         {"lambda", ch.lambda},
                         {"states", static_cast<long>(ch.size())},
                         {"exact", ch.exact}});
        csv << D << ',' << fmt_double(ch.lambda) << ',' << ch.size() << ','
            << (ch.exact ? 1 : 0) << '\n';
    }

    if (o.format == "csv") {
        emit(csv.str(), o.out);
        return 0;
    }

    json rep{{"config", cfg},
             {"beta", bs.beta()},
             {"digit_max", bs.digit_max()},
             {"estar_prefix", salem::digit_string(bs.estar_prefix(std::min<long>(depth, 40)))},
             {"lambda_table", table}};
    if (period)
        rep["period"] = {{"p", period->first}, {"q", period->second}};
    else
        rep["period"] = "unknown";
    emit(rep.dump(2), o.out);
    return 0;
}

// ---- construct ----------------------------------------------------------------

int cmd_construct(const CommonOpts& o, salem::ExperimentConfig ec, long depth) {
    ec.poly = require_poly(o);
    ec.seed = o.seed;
    std::string stage = "classify";
    try {
        salem::PolyClass pc = salem::classify(ec.poly, o.precision);
        if (!pc.salem) throw salem::NotSalem("construction needs a Salem polynomial");

        stage = "homoclinic";
        salem::HomoclinicData h(ec.poly, o.precision);

        stage = "beta-system";
        salem::BetaSystem bs = salem::BetaSystem::from_poly(ec.poly, o.precision);
        double log_beta = std::log(bs.beta());

        stage = "hofbauer";
        salem::HofbauerChain ch = salem::build_chain(bs, depth);
        salem::perron(ch);

        stage = "sample";
        std::vector<salem::IntWindow> paths;
        paths.reserve(ec.samples);
        for (long i = 0; i < ec.samples; ++i) {
            salem::Rng rng(ec.seed, static_cast<unsigned long long>(i) + 1);
            paths.push_back(salem::sample_path(ch, ec.length, rng));
        }

        stage = "calibrate";
        double K = ec.K > 0 ? ec.K : salem::calibrate_K(h, paths, ec.J);
        long L = ec.L;
        if (L == 0) L = salem::minimality_L(h.roots(), 10000, salem::Rng(ec.seed, 0).u64());
        long block_len = static_cast<long>(std::ceil(K)) * ec.J;
        long stages = ec.stages > 0 ? ec.stages : ec.length / block_len;
        if (stages < 1)
            throw salem::Error("length " + std::to_string(ec.length) +
                               " shorter than one stage block of " + std::to_string(block_len));

        json cfg = resolved_config("construct", o,
                                   {{"K", K},
                                    {"J", ec.J},
                                    {"L", ec.L == 0 ? json("auto") : json(ec.L)},
                                    {"L_resolved", L},
                                    {"stages", stages},
                                    {"samples", ec.samples},
                                    {"length", ec.length},
                                    {"block", ec.block},
                                    {"depth", depth}});

        stage = "modify";
        std::vector<salem::ModifyResult> mods;
        mods.reserve(ec.samples);
        for (long i = 0; i < ec.samples; ++i)
            mods.push_back(salem::salem_modify_backoff(h, bs, paths[i], K, ec.J, L, stages));

        stage = "verify";
        std::vector<salem::VerifyResult> checks;
        long pass = 0;
        for (const auto& m : mods) {
            long end = m.log.processed_end;
            long j_max = std::min<long>(100, end);
            auto vr = salem::verify_dbound(h, m.vstar, 4 * K, j_max, 0, end - j_max);
            pass += vr.ok;
            checks.push_back(vr);
        }

        stage = "entropy";
        salem::EmpiricalMeasure mu;
        for (const auto& m : mods) {
            salem::IntWindow w;
            w.lo = 0;
            w.values.assign(m.vstar.values.begin() + (0 - m.vstar.lo),
                            m.vstar.values.begin() + (m.log.processed_end - m.vstar.lo));
            mu.samples.push_back(std::move(w));
        }
        salem::EntropyEstimate ent = salem::entropy_estimate(mu, ec.block);

        stage = "emit";
        std::ostringstream csv;
        csv << salem::csv_header(cfg) << '\n' << "# config " << cfg.dump() << '\n';
        csv << "sample,input_len,output_len,insertions,zeros_inserted,worst_dbound,verified\n";
        json rows = json::array();
        for (long i = 0; i < ec.samples; ++i) {
            const auto& log = mods[i].log;
            long zeros = 0;
            for (const auto& pr : log.insertions) zeros += pr.second;
            csv << i << ',' << ec.length << ',' << mods[i].vstar.size() << ','
                << log.insertions.size() << ',' << zeros << ',' << fmt_double(checks[i].worst)
                << ',' << (checks[i].ok ? 1 : 0) << '\n';
            rows.push_back({{"sample", i},
                            {"output_len", static_cast<long>(mods[i].vstar.size())},
                            {"insertions", log.insertions.size()},
                            {"zeros_inserted", zeros},
                            {"worst_dbound", checks[i].worst},
                            {"verified", checks[i].ok},
                            {"log", log}});
        }
        json rep{{"config", cfg},
                 {"beta", bs.beta()},
                 {"log_beta", log_beta},
                 {"lambda_chain", ch.lambda},
                 {"K", K},
                 {"four_K", 4 * K},
                 {"L", L},
                 {"verified_fraction", static_cast<double>(pass) / ec.samples},
                 {"entropy", ent},
                 {"entropy_floor", 0.85 * log_beta},
                 {"samples", rows}};

        if (o.out.empty()) {
            emit(o.format == "csv" ? csv.str() : rep.dump(2), o.out);
        } else {
            emit(csv.str(), o.out + ".csv");
            emit(rep.dump(2), o.out + ".json");
        }
        return 0;
    } catch (const salem::Inconclusive&) {
        throw;
    } catch (const salem::Error& e) {
        throw salem::Error("stage " + stage + ": " + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic codings of Salem and Pisot toral automorphisms"};
    app.require_subcommand(1);

    CommonOpts oc, op, ok;
    salem::ExperimentConfig ec;
    long probe_depth = 60;
    long chain_depth = 60;

    CLI::App* classify = app.add_subcommand("classify", "root classes and residue weights");
    add_common(classify, oc);

    CLI::App* probe = app.add_subcommand("probe", "expansion period scan and chain spectrum");
    add_common(probe, op);
    probe->add_option("--beta", op.beta, "probe a numeric beta instead of a polynomial");
    probe->add_option("--depth", probe_depth, "probe horizon / truncation depth")
        ->check(CLI::Range(1L, 2000000L));

    CLI::App* construct =
        app.add_subcommand("construct", "zero-insertion ensemble with verification");
    add_common(construct, ok);
    construct->add_option("--K", ec.K, "cocycle threshold (0 = calibrate)");
    construct->add_option("--J", ec.J, "segments per stage block")->check(CLI::Range(2L, 1000L));
    construct->add_option("--L", ec.L, "insertion window (0 = auto)");
    construct->add_option("--stages", ec.stages, "stage count (0 = as many as length allows)");
    construct->add_option("--samples", ec.samples, "ensemble size")->check(CLI::Range(1L, 100000L));
    construct->add_option("--length", ec.length, "input digits per sample")
        ->check(CLI::Range(10L, 100000000L));
    construct->add_option("--block", ec.block, "entropy block size")->check(CLI::Range(1L, 64L));
    construct->add_option("--depth", chain_depth, "chain truncation depth")
        ->check(CLI::Range(1L, 100000L));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1; // help/version exit 0; any parse failure is an error
    }

    try {
        if (classify->parsed()) {
            salem::ScopedPrecision guard(oc.precision);
            return cmd_classify(oc);
        }
        if (probe->parsed()) {
            salem::ScopedPrecision guard(op.precision);
            return cmd_probe(op, probe_depth);
        }
        salem::ScopedPrecision guard(ok.precision);
        return cmd_construct(ok, ec, chain_depth);
    } catch (const salem::Inconclusive& e) {
        std::cerr << "inconclusive: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
