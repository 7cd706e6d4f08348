#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "salem/beta.hpp"
#include "salem/coding.hpp"
#include "salem/errors.hpp"
#include "salem/homoclinic.hpp"
#include "salem/rng.hpp"
#include "salem/roots.hpp"
#include "salem/window.hpp"

namespace salem {

namespace detail {

inline std::complex<double> cx_pow_ll(std::complex<double> b, long long n) {
    std::complex<double> r{1, 0};
    if (n < 0) {
        b = std::complex<double>{1, 0} / b;
        n = -n;
    }
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

inline double l1norm(const std::vector<std::complex<double>>& c) {
    double s = 0;
    for (const auto& z : c) s += std::abs(z);
    return s;
}

} // namespace detail

// Smallest L (certified against a randomized test set) such that any two
// coefficient vectors of norm <= 1 can be brought within norm 1 of
// cancellation by rotating the first through at most L-1 powers of the
// circle roots. Exists because the circle roots are not roots of unity, so
// their joint rotation orbit is dense where it needs to be.
inline long minimality_L(const RootData& rd, long trials, unsigned long long seed,
                         double threshold = 1.0) {
    if (!classify(rd.f, rd.digits).salem) throw NotSalem(detail::poly_str(rd.f));
    std::vector<std::complex<double>> ws; // upper-half circle roots
    for (const auto& r : rd.roots) {
        if (r.cls != RootClass::zero) continue;
        if (static_cast<double>(r.omega.im) > 0)
            ws.emplace_back(static_cast<double>(r.omega.re), static_cast<double>(r.omega.im));
    }
    if (ws.empty()) throw NotSalem("no circle roots");
    const std::size_t m0 = ws.size();
    Rng rng(seed);
    auto draw = [&](std::vector<std::complex<double>>& c) {
        c.resize(m0);
        double norm = 0;
        for (std::size_t i = 0; i < m0; ++i) {
            double ang = 2 * 3.14159265358979323846 * rng.uniform();
            double mag = rng.uniform();
            c[i] = std::polar(mag, ang);
            norm += 2 * mag; // conjugate pair counts twice
        }
        double scale = rng.uniform() / std::max(norm, 1e-300);
        for (auto& z : c) z *= scale;
    };
    long worst = 0;
    std::vector<std::complex<double>> a, b, rot;
    for (long t = 0; t < trials; ++t) {
        draw(a);
        draw(b);
        rot = a;
        long l = 0;
        for (;; ++l) {
            if (l > (1 << 16))
                throw Inconclusive("no alignment rotation within 2^16 steps");
            double norm = 0;
            for (std::size_t i = 0; i < m0; ++i) norm += 2 * std::abs(rot[i] + b[i]);
            if (norm <= threshold) break;
            for (std::size_t i = 0; i < m0; ++i) rot[i] *= ws[i];
        }
        worst = std::max(worst, l);
    }
    return worst + 1;
}

// Membership in the good set for parameters (K, J): the cocycle's certified
// upper bracket stays within K for all k up to ceil(K)*J, which depends only
// on the first ceil(K)*J coordinates.
inline bool in_BKJ(const HomoclinicData& h, const IntWindow& v, double K, long J) {
    const long kb = static_cast<long>(std::ceil(K));
    const long k_top = kb * J;
    if (!v.covers(0, k_top - 1)) throw WindowTooSmall("need coordinates [0, ceil(K)J)");
    auto ps = detail::circle_pairs(h);
    std::vector<std::complex<double>> c(ps.size(), {0, 0});
    for (long k = 1; k <= k_top; ++k) {
        double norm = 0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            c[i] = ps[i].w * c[i] + ps[i].bw * static_cast<double>(v.at(k - 1));
            norm += std::abs(c[i]);
        }
        if (norm > K) return false;
    }
    return true;
}

struct InsertionLog {
    double K = 0;
    long J = 0, L = 0, stages = 0;
    long block_len = 0;                           // ceil(K)*J input digits per stage
    std::vector<long> l_list;                     // zeros inserted inside stage i's block
    std::vector<long> j_list;                     // alignment zeros glued before stage i
    std::vector<char> in_B;                       // stage block passed the membership test
    std::vector<double> checkpoint_norm;          // cocycle bracket at each stage checkpoint
    std::vector<std::pair<long, long>> insertions; // (output position, length), all zeros
    long consumed_input = 0;                      // input coordinates processed
    long processed_end = 0;                       // output coordinate of the last checkpoint
};

struct ModifyResult {
    IntWindow vstar;
    InsertionLog log;
};

// Zero-insertion modification: process the input in stages of ceil(K)*J
// digits. A stage whose block already has a small cocycle profile passes
// through; otherwise the block is cut into J segments and up to L-1 zeros
// go in front of each segment after the first, chosen so the running
// coefficient vector returns under K at each segment checkpoint. Between
// stages, up to L-1 alignment zeros rotate the accumulated vector against
// the incoming block so the stage checkpoint also lands under K. Everything
// before index 0 is copied untouched, and inserting zeros can only lower
// suffixes lexicographically, so admissibility survives (asserted).
inline ModifyResult salem_modify(const HomoclinicData& h, const BetaSystem& bs, const IntWindow& v,
                                 double K, long J, long L, long stages) {
    if (K <= 0 || J < 2 || L < 1 || stages < 1) throw Error("bad construction parameters");
    const long kb = static_cast<long>(std::ceil(K));
    const long block_len = kb * J;
    if (!v.covers(0, stages * block_len - 1))
        throw WindowTooSmall("need " + std::to_string(stages * block_len) + " coordinates");

    auto ps = detail::circle_pairs(h);
    const std::size_t m0 = ps.size();
    if (m0 == 0) throw NotSalem("no circle roots to control");

    InsertionLog log;
    log.K = K;
    log.J = J;
    log.L = L;
    log.stages = stages;
    log.block_len = block_len;

    std::vector<long long> out;
    for (long n = v.lo; n < 0; ++n) out.push_back(v.at(n)); // untouched past

    std::vector<std::complex<double>> A(m0, {0, 0}); // accumulated checkpoint vector
    long T = 0;                                      // output length of the processed part

    // d-vector of a digit span scanned from a zero seed; also reports the
    // sup of the running bracket when asked
    auto scan_span = [&](long in_lo, long len, std::vector<std::complex<double>>& c,
                         double* sup) {
        c.assign(m0, {0, 0});
        double worst = 0;
        for (long t = 0; t < len; ++t) {
            double norm = 0;
            for (std::size_t i = 0; i < m0; ++i) {
                c[i] = ps[i].w * c[i] + ps[i].bw * static_cast<double>(v.at(in_lo + t));
                norm += std::abs(c[i]);
            }
            worst = std::max(worst, norm);
        }
        if (sup) *sup = worst;
    };

    std::vector<std::complex<double>> W, seg, rot;
    for (long stage = 0; stage < stages; ++stage) {
        const long in_lo = stage * block_len;
        double block_sup = 0;
        scan_span(in_lo, block_len, W, &block_sup);
        const bool good = block_sup <= K;
        log.in_B.push_back(good ? 1 : 0);

        std::vector<long long> body; // this stage's output block
        long l_total = 0;
        std::vector<std::pair<long, long>> body_ins; // offsets within body
        if (good) {
            for (long t = 0; t < block_len; ++t) body.push_back(v.at(in_lo + t));
        } else {
            std::vector<std::complex<double>> c(m0, {0, 0});
            for (long kseg = 0; kseg < J; ++kseg) {
                scan_span(in_lo + kseg * kb, kb, seg, nullptr);
                if (kseg == 0) {
                    c = seg;
                } else {
                    // rotate the running vector past the segment (and l
                    // inserted zeros) and require the checkpoint under K
                    rot = c;
                    for (std::size_t i = 0; i < m0; ++i)
                        rot[i] *= detail::cx_pow_ll(ps[i].w, kb);
                    long l = 0;
                    bool found = false;
                    for (; l < L; ++l) {
                        double norm = 0;
                        for (std::size_t i = 0; i < m0; ++i) norm += std::abs(rot[i] + seg[i]);
                        if (norm <= K) {
                            found = true;
                            break;
                        }
                        for (std::size_t i = 0; i < m0; ++i) rot[i] *= ps[i].w;
                    }
                    if (!found)
                        throw InsertionFailed("stage " + std::to_string(stage) + ", segment " +
                                              std::to_string(kseg) + ": no l in [0," +
                                              std::to_string(L) + ")");
                    if (l > 0) body_ins.emplace_back(static_cast<long>(body.size()), l);
                    for (long z = 0; z < l; ++z) body.push_back(0);
                    l_total += l;
                    for (std::size_t i = 0; i < m0; ++i) c[i] = rot[i] + seg[i];
                }
                for (long t = 0; t < kb; ++t) body.push_back(v.at(in_lo + kseg * kb + t));
            }
            W = c;
        }
        log.l_list.push_back(l_total);

        // alignment zeros between the previous checkpoint and this block
        const long Tb = static_cast<long>(body.size());
        rot = A;
        for (std::size_t i = 0; i < m0; ++i) rot[i] *= detail::cx_pow_ll(ps[i].w, Tb);
        long j = 0;
        bool found = false;
        for (; j < L; ++j) {
            double norm = 0;
            for (std::size_t i = 0; i < m0; ++i) norm += std::abs(rot[i] + W[i]);
            if (norm <= K) {
                found = true;
                break;
            }
            for (std::size_t i = 0; i < m0; ++i) rot[i] *= ps[i].w;
        }
        if (!found)
            throw InsertionFailed("stage " + std::to_string(stage) + ", alignment: no j in [0," +
                                  std::to_string(L) + ")");
        log.j_list.push_back(j);
        if (j > 0) log.insertions.emplace_back(T, j);
        for (long z = 0; z < j; ++z) out.push_back(0);
        for (const auto& bi : body_ins) log.insertions.emplace_back(T + j + bi.first, bi.second);
        out.insert(out.end(), body.begin(), body.end());
        for (std::size_t i = 0; i < m0; ++i) A[i] = rot[i] + W[i];
        T += j + Tb;
        log.checkpoint_norm.push_back(detail::l1norm(A));
    }

    log.consumed_input = stages * block_len;
    log.processed_end = T;
    for (long n = log.consumed_input; n <= v.hi(); ++n) out.push_back(v.at(n));

    ModifyResult res;
    res.vstar.lo = v.lo;
    res.vstar.growth = Growth::bounded;
    res.vstar.values = std::move(out);
    res.log = std::move(log);
    if (!bs.is_admissible(res.vstar))
        throw Error("internal: zero insertion broke admissibility");
    return res;
}

// Retry wrapper growing L on failure, for callers that asked for L = auto.
inline ModifyResult salem_modify_backoff(const HomoclinicData& h, const BetaSystem& bs,
                                         const IntWindow& v, double K, long J, long L0,
                                         long stages, long L_cap = 1024) {
    long L = std::max(1L, L0);
    for (;;) {
        try {
            return salem_modify(h, bs, v, K, J, L, stages);
        } catch (const InsertionFailed&) {
            if (2 * L > L_cap) throw;
            L *= 2;
        }
    }
}

struct VerifyResult {
    bool ok = false;
    double worst = 0;
    long worst_j = 0;
    long worst_jprime = 0;
};

// Exhaustive cocycle check over start offsets jprime and horizons j: the
// certified upper bracket of d(j, shift(v, jprime)) must stay within the
// bound everywhere.
inline VerifyResult verify_dbound(const HomoclinicData& h, const IntWindow& v, double bound,
                                  long j_max, long jp_lo, long jp_hi) {
    if (j_max < 1 || jp_lo > jp_hi) throw Error("bad verification range");
    if (!v.covers(jp_lo, jp_hi + j_max - 1))
        throw WindowTooSmall("need coordinates [jp_lo, jp_hi + j_max)");
    auto ps = detail::circle_pairs(h);
    VerifyResult res;
    std::vector<std::complex<double>> c(ps.size());
    for (long jp = jp_lo; jp <= jp_hi; ++jp) {
        std::fill(c.begin(), c.end(), std::complex<double>{0, 0});
        for (long j = 1; j <= j_max; ++j) {
            double norm = 0;
            for (std::size_t i = 0; i < ps.size(); ++i) {
                c[i] = ps[i].w * c[i] + ps[i].bw * static_cast<double>(v.at(jp + j - 1));
                norm += std::abs(c[i]);
            }
            if (norm > res.worst) {
                res.worst = norm;
                res.worst_j = j;
                res.worst_jprime = jp;
            }
        }
    }
    res.ok = res.worst <= bound;
    return res;
}

struct EmpiricalMeasure {
    std::vector<IntWindow> samples;
};

struct EntropyEstimate {
    double log_count_rate = 0; // log(#distinct blocks) / block
    double shannon_rate = 0;   // plug-in block entropy / block
    long long distinct = 0;
    long long blocks = 0;
};

inline EntropyEstimate entropy_estimate(const EmpiricalMeasure& mu, long block) {
    if (block < 1) throw Error("need block >= 1");
    if (mu.samples.empty()) throw EmptyResult("no samples to estimate from");
    for (const auto& s : mu.samples)
        if (static_cast<long>(s.size()) < block)
            throw WindowTooSmall("sample shorter than the block length");
    std::map<std::vector<long long>, long long> counts;
    long long total = 0;
    std::vector<long long> key(static_cast<std::size_t>(block));
    for (const auto& s : mu.samples) {
        for (long n = s.lo; n + block - 1 <= s.hi(); ++n) {
            for (long i = 0; i < block; ++i) key[static_cast<std::size_t>(i)] = s.at(n + i);
            ++counts[key];
            ++total;
        }
    }
    EntropyEstimate est;
    est.distinct = static_cast<long long>(counts.size());
    est.blocks = total;
    est.log_count_rate = std::log(double(est.distinct)) / double(block);
    double H = 0;
    for (const auto& kv : counts) {
        double p = double(kv.second) / double(total);
        H -= p * std::log(p);
    }
    est.shannon_rate = H / double(block);
    return est;
}

// Data-driven threshold: iterate K -> percentile of per-sample cocycle sups
// over the horizon ceil(K)*J until the ceiling stabilizes. The sup profile
// only depends on ceil(K), so this settles in a handful of rounds.
inline double calibrate_K(const HomoclinicData& h, const std::vector<IntWindow>& samples, long J,
                          double percentile = 0.9) {
    if (samples.empty()) throw EmptyResult("no calibration samples");
    auto ps = detail::circle_pairs(h);
    double K = 1.0;
    for (int round = 0; round < 16; ++round) {
        const long kb = static_cast<long>(std::ceil(K));
        const long horizon = kb * J;
        std::vector<double> sups;
        sups.reserve(samples.size());
        std::vector<std::complex<double>> c(ps.size());
        for (const auto& s : samples) {
            if (!s.covers(0, horizon - 1))
                throw WindowTooSmall("calibration sample shorter than ceil(K)*J");
            std::fill(c.begin(), c.end(), std::complex<double>{0, 0});
            double worst = 0;
            for (long k = 1; k <= horizon; ++k) {
                double norm = 0;
                for (std::size_t i = 0; i < ps.size(); ++i) {
                    c[i] = ps[i].w * c[i] + ps[i].bw * static_cast<double>(s.at(k - 1));
                    norm += std::abs(c[i]);
                }
                worst = std::max(worst, norm);
            }
            sups.push_back(worst);
        }
        std::sort(sups.begin(), sups.end());
        std::size_t idx = static_cast<std::size_t>(
            std::min<double>(double(sups.size()) - 1,
                             std::max(0.0, std::ceil(percentile * double(sups.size())) - 1)));
        double K_new = sups[idx];
        if (static_cast<long>(std::ceil(K_new)) == kb) return K_new;
        K = K_new;
    }
    return K;
}

} // namespace salem
