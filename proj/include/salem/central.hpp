#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "salem/errors.hpp"
#include "salem/roots.hpp"
#include "salem/window.hpp"

namespace salem {

// Element of the kernel of f(S) spanned by the unit-circle roots: the
// sequence n -> sum_w c_w w^n. Stored as (root, coefficient) pairs in
// double precision; real sequences keep the invariant c_{conj w} = conj c_w.
struct CentralVector {
    std::vector<std::complex<double>> omega;
    std::vector<std::complex<double>> c;

    std::size_t terms() const { return omega.size(); }
    bool empty() const { return omega.empty(); }

    // conjugate-closure defect, 0 for exactly symmetric data
    double symmetry_defect() const {
        double worst = 0;
        for (std::size_t i = 0; i < omega.size(); ++i) {
            double best = 1e300;
            for (std::size_t j = 0; j < omega.size(); ++j) {
                double d = std::abs(omega[j] - std::conj(omega[i])) +
                           std::abs(c[j] - std::conj(c[i]));
                best = std::min(best, d);
            }
            worst = std::max(worst, best);
        }
        return omega.empty() ? 0.0 : worst;
    }
};

// Zero vector on the circle roots of rd (one slot per circle root).
inline CentralVector central_zero(const RootData& rd) {
    CentralVector v;
    for (const auto& r : rd.roots) {
        if (r.cls != RootClass::zero) continue;
        v.omega.emplace_back(static_cast<double>(r.omega.re), static_cast<double>(r.omega.im));
        v.c.emplace_back(0.0, 0.0);
    }
    return v;
}

// Value at index n, certified real: the imaginary parts must cancel to
// within `tol` times the coefficient scale, else NotReal.
inline double central_eval(const CentralVector& v, long n, double tol = 1e-8) {
    std::complex<double> s{0.0, 0.0};
    double scale = 0;
    for (std::size_t i = 0; i < v.terms(); ++i) {
        s += v.c[i] * std::pow(v.omega[i], static_cast<double>(n));
        scale += std::abs(v.c[i]);
    }
    if (scale > 0 && std::abs(s.imag()) > tol * std::max(1.0, scale))
        throw NotReal("imaginary residual in central evaluation");
    return s.real();
}

// The shift acts diagonally: coefficients pick up a factor w^k.
inline CentralVector shift_central(const CentralVector& v, long k) {
    CentralVector r = v;
    for (std::size_t i = 0; i < r.terms(); ++i)
        r.c[i] *= std::pow(r.omega[i], static_cast<double>(k));
    return r;
}

inline CentralVector central_add(const CentralVector& a, const CentralVector& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.terms() != b.terms()) throw Error("central vectors over different root sets");
    CentralVector r = a;
    for (std::size_t i = 0; i < r.terms(); ++i) {
        // match by root, not by position, to stay order-independent
        std::size_t j = 0;
        double best = 1e300;
        for (std::size_t k = 0; k < b.terms(); ++k) {
            double d = std::abs(b.omega[k] - a.omega[i]);
            if (d < best) { best = d; j = k; }
        }
        r.c[i] += b.c[j];
    }
    return r;
}

struct NormBracket {
    double lower = 0; // attained on sampled indices
    double upper = 0; // l1 bound, valid for every index
};

// Bracket for sup_n |value_n|. The l1 norm of the coefficients is an upper
// bound everywhere; sampling |n| <= horizon gives the lower end. For
// irrational rotations the bracket tightens as horizon grows.
inline NormBracket central_sup_norm(const CentralVector& v, long horizon = 4096) {
    NormBracket nb;
    for (const auto& cc : v.c) nb.upper += std::abs(cc);
    if (v.empty()) return nb;
    // walk powers incrementally; one multiply per term per step
    std::vector<std::complex<double>> fwd(v.terms(), {1.0, 0.0}), bwd(v.terms(), {1.0, 0.0});
    for (long n = 0; n <= horizon; ++n) {
        std::complex<double> sf{0, 0}, sb{0, 0};
        for (std::size_t i = 0; i < v.terms(); ++i) {
            sf += v.c[i] * fwd[i];
            sb += v.c[i] * bwd[i];
            fwd[i] *= v.omega[i];
            bwd[i] /= v.omega[i];
        }
        nb.lower = std::max({nb.lower, std::abs(sf.real()), std::abs(sb.real())});
    }
    return nb;
}

// Materialize values on [lo,hi] as a bounded-growth window.
inline RealWindow central_window(const CentralVector& v, long lo, long hi, double tol = 1e-8) {
    RealWindow w;
    w.lo = lo;
    w.growth = Growth::bounded;
    w.values.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long n = lo; n <= hi; ++n) w.values.push_back(central_eval(v, n, tol));
    return w;
}

} // namespace salem
