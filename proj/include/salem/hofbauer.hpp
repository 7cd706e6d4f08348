#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "salem/beta.hpp"
#include "salem/errors.hpp"
#include "salem/rng.hpp"
#include "salem/window.hpp"

namespace salem {

struct ChainState {
    long digit = 0;        // symbol emitted by the state
    bool follower = false; // false: full-interval state, true: level state
    long level = 0;        // level k for follower states, 0 otherwise
};

// Countable-state presentation of the beta-shift, cut at a finite depth.
// Full-interval states carry digits 0..digit_max-1; the level-k state
// continues the expansion of 1 through digit k. From a full state every
// full state and level 1 are reachable; from level k the legal digits are
// a < estar(k+1) (dropping to the full state of a) or estar(k+1) itself
// (climbing to level k+1). When the expansion of 1 is certified eventually
// periodic with preperiod+period <= depth, the climb out of the last level
// wraps back and the chain is exact; the level state whose remaining
// expansion is the whole expansion of 1 is the full state of its digit and
// is merged away when its digit fits.
struct HofbauerChain {
    long depth = 0;
    bool exact = false;
    long digit_max = 0;
    std::vector<ChainState> states;
    std::vector<std::vector<long>> next;

    double lambda = 0;
    std::vector<double> x, y; // left / right Perron vectors, each summing to 1
    bool perron_done = false;

    std::size_t size() const { return states.size(); }
};

namespace detail {

// strongly connected component containing `anchor` (iterative Tarjan),
// with states outside it dropped and everything reindexed.
inline void prune_to_core(HofbauerChain& ch, long anchor) {
    const long n = static_cast<long>(ch.size());
    std::vector<long> comp(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
        num(static_cast<std::size_t>(n), -1), stk;
    std::vector<char> on(static_cast<std::size_t>(n), 0);
    long counter = 0, ncomp = 0;
    struct Frame {
        long v;
        std::size_t ei;
    };
    for (long s = 0; s < n; ++s) {
        if (num[static_cast<std::size_t>(s)] != -1) continue;
        std::vector<Frame> call{{s, 0}};
        num[static_cast<std::size_t>(s)] = low[static_cast<std::size_t>(s)] = counter++;
        stk.push_back(s);
        on[static_cast<std::size_t>(s)] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            auto& adj = ch.next[static_cast<std::size_t>(f.v)];
            if (f.ei < adj.size()) {
                long w = adj[f.ei++];
                if (num[static_cast<std::size_t>(w)] == -1) {
                    num[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
                    stk.push_back(w);
                    on[static_cast<std::size_t>(w)] = 1;
                    call.push_back({w, 0});
                } else if (on[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)], num[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(f.v)] == num[static_cast<std::size_t>(f.v)]) {
                    for (;;) {
                        long w = stk.back();
                        stk.pop_back();
                        on[static_cast<std::size_t>(w)] = 0;
                        comp[static_cast<std::size_t>(w)] = ncomp;
                        if (w == f.v) break;
                    }
                    ++ncomp;
                }
                long v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[static_cast<std::size_t>(call.back().v)] = std::min(
                        low[static_cast<std::size_t>(call.back().v)], low[static_cast<std::size_t>(v)]);
            }
        }
    }
    const long keep = comp[static_cast<std::size_t>(anchor)];
    std::vector<long> remap(static_cast<std::size_t>(n), -1);
    HofbauerChain out;
    out.depth = ch.depth;
    out.exact = ch.exact;
    out.digit_max = ch.digit_max;
    for (long s = 0; s < n; ++s)
        if (comp[static_cast<std::size_t>(s)] == keep) {
            remap[static_cast<std::size_t>(s)] = static_cast<long>(out.states.size());
            out.states.push_back(ch.states[static_cast<std::size_t>(s)]);
        }
    out.next.resize(out.states.size());
    for (long s = 0; s < n; ++s) {
        long rs = remap[static_cast<std::size_t>(s)];
        if (rs < 0) continue;
        for (long t : ch.next[static_cast<std::size_t>(s)]) {
            long rt = remap[static_cast<std::size_t>(t)];
            if (rt >= 0) out.next[static_cast<std::size_t>(rs)].push_back(rt);
        }
    }
    ch = std::move(out);
}

} // namespace detail

inline HofbauerChain build_chain(const BetaSystem& bs, long D) {
    if (D < 1) throw Error("need depth >= 1");
    HofbauerChain ch;
    ch.depth = D;
    ch.digit_max = bs.digit_max();
    const long dm = ch.digit_max;

    auto pinfo = bs.period_info();
    const bool closes = pinfo && pinfo->first + pinfo->second <= D;
    const long levels = closes ? pinfo->first + pinfo->second : D;
    const long p = closes ? pinfo->first : 0, q = closes ? pinfo->second : 0;
    const bool merge_last = closes && p == 0 && bs.estar(q) <= dm - 1;

    for (long a = 0; a < dm; ++a) ch.states.push_back({a, false, 0});
    std::vector<long> level_idx(static_cast<std::size_t>(levels + 1), -1);
    for (long k = 1; k <= levels; ++k) {
        if (merge_last && k == levels) {
            level_idx[static_cast<std::size_t>(k)] = bs.estar(q);
        } else {
            level_idx[static_cast<std::size_t>(k)] = static_cast<long>(ch.states.size());
            ch.states.push_back({bs.estar(k), true, k});
        }
    }
    ch.next.resize(ch.states.size());
    for (long a = 0; a < dm; ++a) {
        for (long b = 0; b < dm; ++b) ch.next[static_cast<std::size_t>(a)].push_back(b);
        ch.next[static_cast<std::size_t>(a)].push_back(level_idx[1]);
    }
    for (long k = 1; k <= levels; ++k) {
        if (merge_last && k == levels) continue; // the merged state already has its row
        auto& row = ch.next[static_cast<std::size_t>(level_idx[static_cast<std::size_t>(k)])];
        for (long a = 0; a < std::min(bs.estar(k + 1), dm); ++a) row.push_back(a);
        if (k < levels) {
            row.push_back(level_idx[static_cast<std::size_t>(k + 1)]);
        } else if (closes) {
            row.push_back(level_idx[static_cast<std::size_t>(p + 1)]); // periodic wrap
        } // truncated chains drop the climb out of the last level
    }
    ch.exact = closes;
    detail::prune_to_core(ch, 0); // component of the digit-0 full state
    if (ch.states.empty()) throw NotIrreducible("no recurrent core");
    return ch;
}

inline void perron(HofbauerChain& ch, double tol = 1e-12) {
    const std::size_t n = ch.size();
    if (n == 0) throw NotIrreducible("empty chain");
    std::vector<std::vector<long>> prev(n);
    for (std::size_t s = 0; s < n; ++s)
        for (long t : ch.next[s]) prev[static_cast<std::size_t>(t)].push_back(static_cast<long>(s));

    auto iterate = [&](const std::vector<std::vector<long>>& adj, std::vector<double>& vec,
                       double& lam) {
        vec.assign(n, 1.0 / double(n));
        std::vector<double> nxt(n);
        for (long it = 0; it < 1000000; ++it) {
            double dot = 0, nrm = 0;
            for (std::size_t s = 0; s < n; ++s) {
                double acc = 0;
                for (long t : adj[s]) acc += vec[static_cast<std::size_t>(t)];
                nxt[s] = acc;
                dot += acc * vec[s];
                nrm += vec[s] * vec[s];
            }
            lam = dot / nrm;
            double resid = 0, total = 0;
            for (std::size_t s = 0; s < n; ++s) {
                resid = std::max(resid, std::abs(nxt[s] - lam * vec[s]));
                total += nxt[s];
            }
            for (std::size_t s = 0; s < n; ++s) vec[s] = nxt[s] / total;
            if (resid <= tol * std::max(1.0, lam)) return;
        }
        throw PrecisionExhausted("power iteration did not settle");
    };

    double lam_r = 0, lam_l = 0;
    iterate(ch.next, ch.y, lam_r);
    iterate(prev, ch.x, lam_l);
    ch.lambda = lam_r;
    (void)lam_l;
    ch.perron_done = true;
}

inline double entropy(const HofbauerChain& ch) {
    if (!ch.perron_done) throw Error("run perron first");
    return std::log(ch.lambda);
}

struct CylinderMeasure {
    double stationary = 0;  // starts from the stationary state distribution
    double conditional = 0; // given the first state, as printed in the source formula
};

inline CylinderMeasure cylinder_measure(const HofbauerChain& ch, const std::vector<long>& path) {
    if (!ch.perron_done) throw Error("run perron first");
    if (path.empty()) throw InvalidPath("empty path");
    const long n = static_cast<long>(ch.size());
    for (long s : path)
        if (s < 0 || s >= n) throw InvalidPath("state index out of range");
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const auto& row = ch.next[static_cast<std::size_t>(path[i])];
        if (std::find(row.begin(), row.end(), path[i + 1]) == row.end())
            throw InvalidPath("transition " + std::to_string(path[i]) + " -> " +
                              std::to_string(path[i + 1]) + " not in the chain");
    }
    double z = 0;
    for (std::size_t s = 0; s < ch.size(); ++s) z += ch.x[s] * ch.y[s];
    CylinderMeasure out;
    const long a0 = path.front(), ae = path.back();
    out.conditional = std::pow(ch.lambda, -double(path.size() - 1)) *
                      ch.y[static_cast<std::size_t>(ae)] / ch.y[static_cast<std::size_t>(a0)];
    out.stationary =
        (ch.x[static_cast<std::size_t>(a0)] * ch.y[static_cast<std::size_t>(a0)] / z) *
        out.conditional;
    return out;
}

// Stationary sample of the maximal-entropy digit process: start from the
// stationary state law, step with P(a,b) = y(b) / (lambda y(a)), emit each
// state's digit. Deterministic per rng state.
inline IntWindow sample_path(const HofbauerChain& ch, long n, Rng& rng) {
    if (!ch.perron_done) throw Error("run perron first");
    if (n < 1) throw Error("need n >= 1");
    double z = 0;
    for (std::size_t s = 0; s < ch.size(); ++s) z += ch.x[s] * ch.y[s];
    long state = 0;
    {
        double r = rng.uniform() * z, acc = 0;
        for (std::size_t s = 0; s < ch.size(); ++s) {
            acc += ch.x[s] * ch.y[s];
            if (r <= acc) {
                state = static_cast<long>(s);
                break;
            }
        }
    }
    IntWindow out;
    out.lo = 0;
    out.growth = Growth::bounded;
    out.values.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        out.values.push_back(ch.states[static_cast<std::size_t>(state)].digit);
        const auto& row = ch.next[static_cast<std::size_t>(state)];
        double total = 0;
        for (long t : row) total += ch.y[static_cast<std::size_t>(t)];
        double r = rng.uniform() * total, acc = 0;
        long chosen = row.back();
        for (long t : row) {
            acc += ch.y[static_cast<std::size_t>(t)];
            if (r <= acc) {
                chosen = t;
                break;
            }
        }
        state = chosen;
    }
    return out;
}

inline IntWindow sample_path(const HofbauerChain& ch, long n, unsigned long long seed) {
    Rng rng(seed);
    return sample_path(ch, n, rng);
}

} // namespace salem
