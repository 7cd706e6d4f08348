#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "salem/errors.hpp"
#include "salem/homoclinic.hpp"
#include "salem/torus.hpp"
#include "salem/window.hpp"

namespace salem {

namespace detail {

// Orbit lift at full precision: first coordinate of M_f^n x reduced into
// [0,1) for n in [lo,hi]. Precision scales with the orbit length because the
// expanding direction multiplies roundoff by at most the largest root
// modulus per step.
inline std::vector<Real> lift_first_coord(const IntPolynomial& f, const TorusPoint& x, long lo,
                                          long hi, unsigned digits) {
    f.validate();
    if (!f.monic()) throw Error("torus lift needs a monic polynomial");
    const int m = f.degree();
    if (static_cast<int>(x.x.size()) != m) throw Error("torus point has wrong dimension");
    if (lo > hi) throw Error("bad lift range");
    const double span = static_cast<double>(std::max(hi, -lo) + m);
    const unsigned work =
        digits + 20 + static_cast<unsigned>(std::ceil(span * std::log10(double(f.l1()) + 1.0)));
    ScopedPrecision prec(work);
    std::vector<Real> out(static_cast<std::size_t>(hi - lo + 1));
    std::vector<Real> cur(x.x.begin(), x.x.end());
    for (auto& c : cur) c = mod1(c);
    if (0 >= lo && 0 <= hi) out[static_cast<std::size_t>(-lo)] = cur[0];
    // forward
    std::vector<Real> fwd = cur;
    for (long n = 1; n <= hi; ++n) {
        companion_step(f, fwd);
        if (n >= lo) out[static_cast<std::size_t>(n - lo)] = fwd[0];
    }
    // backward (needs |f_0| = 1)
    if (lo < 0) {
        if (f.c[0] != 1 && f.c[0] != -1)
            throw NotInvertible("backward orbit needs |f_0| = 1");
        std::vector<Real> bwd = cur;
        for (long n = -1; n >= lo; --n) {
            companion_step_back(f, bwd);
            if (n <= hi) out[static_cast<std::size_t>(n - lo)] = bwd[0];
        }
    }
    return out;
}

} // namespace detail

struct TorusCode {
    IntWindow v;  // integer symbol sequence f(S)w on the requested window
    RealWindow w; // the [0,1) orbit lift on [lo, hi+deg]
};

// Symbolic encoding of a torus point: lift the orbit's first coordinate into
// [0,1) on [lo, hi+m], apply f coefficientwise and round. The result is an
// integer sequence with sup norm below the coefficient l1 norm of f; the
// rounding residual certifies the computation.
inline TorusCode encode_torus_full(const IntPolynomial& f, const TorusPoint& x, long lo, long hi,
                                   unsigned digits = 60) {
    const int m = f.degree();
    std::vector<Real> w = detail::lift_first_coord(f, x, lo, hi + m, digits);
    ScopedPrecision prec(digits + 20);
    TorusCode code;
    code.w.lo = lo;
    code.w.growth = Growth::bounded;
    code.w.values.reserve(w.size());
    for (const Real& r : w) code.w.values.push_back(static_cast<double>(r));
    code.v.lo = lo;
    code.v.growth = Growth::bounded;
    code.v.values.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long n = lo; n <= hi; ++n) {
        Real s(0);
        for (int k = 0; k <= m; ++k)
            s += Real(f.c[static_cast<std::size_t>(k)]) * w[static_cast<std::size_t>(n + k - lo)];
        Real r = floor(s + Real(0.5));
        Real resid = abs(s - r);
        if (resid > Real(1e-6))
            throw NonIntegerResidual("rounding residual " + std::to_string(static_cast<double>(resid)));
        code.v.values.push_back(static_cast<long long>(r));
    }
    return code;
}

inline IntWindow encode_torus(const IntPolynomial& f, const TorusPoint& x, long lo, long hi,
                              unsigned digits = 60) {
    return encode_torus_full(f, x, lo, hi, digits).v;
}

// Residual of the pseudo-cover identity: with v the encoding of x and w the
// orbit lift, xi(v) - w should lie in ker f(S), so applying f annihilates
// it up to the certified truncation tail. Near-zero over the window means
// the symbolic point covers x modulo the central subgroup.
inline double pseudocover_residual(const HomoclinicData& h, const TorusPoint& x, long lo, long hi,
                                   unsigned digits = 60) {
    const IntPolynomial& f = h.poly();
    const int m = f.degree();
    const double vmax = static_cast<double>(f.l1());
    long pad = 1;
    while (pad < 8192 && vmax * vmax * xi_tail_bound(h, pad) > 1e-9) ++pad;
    TorusCode code = encode_torus_full(f, x, lo - pad, hi + m + pad, digits);
    RealWindow u = xi_bar_star(h, code.v, lo, hi + m);
    RealWindow diff;
    diff.lo = lo;
    diff.values.reserve(static_cast<std::size_t>(hi + m - lo + 1));
    for (long n = lo; n <= hi + m; ++n) diff.values.push_back(u.at(n) - code.w.at(n));
    RealWindow r = apply_poly(f, diff, Extend::strict);
    double worst = 0;
    for (long n = lo; n <= hi; ++n) worst = std::max(worst, std::abs(r.at(n)));
    return worst;
}

struct DboundRow {
    double K = 0;
    long k = 0;
    double fraction = 0;
};

namespace detail {

struct CirclePair {
    std::complex<double> w;  // circle root
    std::complex<double> bw; // b_w / f_m
};

inline std::vector<CirclePair> circle_pairs(const HomoclinicData& h) {
    CentralVector cv = h.central_part();
    std::vector<CirclePair> out;
    out.reserve(cv.terms());
    for (std::size_t i = 0; i < cv.terms(); ++i)
        out.push_back({cv.omega[i], cv.c[i] * cv.omega[i]});
    return out;
}

// Coefficient-norm profile of the cocycle along one sample: slot k+k_max
// holds the l1 coefficient norm (the certified upper bracket) of d(k, v)
// for k in [-k_max, k_max].
inline std::vector<double> cocycle_norm_profile(const std::vector<CirclePair>& ps,
                                                const IntWindow& v, long k_max) {
    std::vector<double> prof(static_cast<std::size_t>(2 * k_max + 1), 0.0);
    std::vector<std::complex<double>> c(ps.size(), {0, 0});
    for (long k = 1; k <= k_max; ++k) {
        double norm = 0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            c[i] = ps[i].w * c[i] + ps[i].bw * static_cast<double>(v.at(k - 1));
            norm += std::abs(c[i]);
        }
        prof[static_cast<std::size_t>(k_max + k)] = norm;
    }
    std::fill(c.begin(), c.end(), std::complex<double>{0, 0});
    for (long t = 1; t <= k_max; ++t) {
        double norm = 0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            c[i] = (c[i] + ps[i].bw * static_cast<double>(v.at(-t))) / ps[i].w;
            norm += std::abs(c[i]);
        }
        prof[static_cast<std::size_t>(k_max - t)] = norm;
    }
    return prof;
}

} // namespace detail

// Empirical profile of the tightness condition behind weak d-boundedness:
// for each threshold K and each time k, the fraction of samples whose
// cocycle upper bracket at k stays within K. Reported, never asserted.
inline std::vector<DboundRow> weak_dbound_diagnostic(const HomoclinicData& h,
                                                     const std::vector<IntWindow>& samples,
                                                     const std::vector<double>& K_grid,
                                                     long k_max) {
    for (const auto& s : samples)
        if (!s.covers(-k_max, k_max)) throw WindowTooSmall("sample must cover [-k_max, k_max]");
    auto ps = detail::circle_pairs(h);
    std::vector<std::vector<double>> profs;
    profs.reserve(samples.size());
    for (const auto& s : samples) profs.push_back(detail::cocycle_norm_profile(ps, s, k_max));
    std::vector<DboundRow> rows;
    for (double K : K_grid) {
        for (long k = -k_max; k <= k_max; ++k) {
            long hits = 0;
            for (const auto& p : profs)
                if (p[static_cast<std::size_t>(k + k_max)] <= K) ++hits;
            rows.push_back({K, k, samples.empty() ? 1.0 : double(hits) / double(samples.size())});
        }
    }
    return rows;
}

} // namespace salem
