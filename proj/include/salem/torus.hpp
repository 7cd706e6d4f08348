#pragma once

#include <vector>

#include "salem/errors.hpp"
#include "salem/mp.hpp"
#include "salem/polynomial.hpp"
#include "salem/rng.hpp"

namespace salem {

// Point on the m-torus, coordinates in [0,1), stored at working precision.
struct TorusPoint {
    std::vector<Real> x;
    std::size_t dim() const { return x.size(); }
};

inline Real mod1(const Real& v) {
    Real r = v - floor(v);
    if (r >= 1) r -= 1;  // guard against rounding up to exactly 1
    if (r < 0) r += 1;
    return r;
}

// One application of the companion matrix of monic f:
//   (Mx)_i = x_{i+1} for i < m-1,   (Mx)_{m-1} = -sum_j f_j x_j  (mod 1).
inline void companion_step(const IntPolynomial& f, std::vector<Real>& x) {
    const int m = f.degree();
    Real last(0);
    for (int j = 0; j < m; ++j) last -= Real(f.c[j]) * x[j];
    for (int j = 0; j + 1 < m; ++j) x[j] = x[j + 1];
    x[m - 1] = mod1(last);
}

// One application of the inverse, which is an integer matrix iff |f_0| = 1.
inline void companion_step_back(const IntPolynomial& f, std::vector<Real>& x) {
    const int m = f.degree();
    Real y0 = x[m - 1];
    for (int j = 1; j < m; ++j) y0 += Real(f.c[j]) * x[j - 1];
    y0 = -Real(f.c[0]) * y0; // 1/f_0 = f_0 when f_0 = +-1
    for (int j = m - 1; j >= 1; --j) x[j] = x[j - 1];
    x[0] = mod1(y0);
}

// M_f^n x on the torus. Requires monic f (otherwise the matrix is not
// integral and the torus action is undefined); n < 0 additionally requires
// |f_0| = 1. Cost is |n| steps; every step reduces mod 1 so coordinates
// stay in [0,1) throughout.
inline TorusPoint companion_apply(const IntPolynomial& f, const TorusPoint& p, long n) {
    f.validate();
    if (!f.monic()) throw Error("companion_apply needs a monic polynomial");
    if (p.dim() != static_cast<std::size_t>(f.degree()))
        throw Error("point dimension does not match polynomial degree");
    if (n < 0 && f.c[0] != 1 && f.c[0] != -1)
        throw NotInvertible("backward orbit needs |f_0| = 1");
    TorusPoint q = p;
    for (auto& v : q.x) v = mod1(v);
    for (long i = 0; i < n; ++i) companion_step(f, q.x);
    for (long i = 0; i > n; --i) companion_step_back(f, q.x);
    return q;
}

inline TorusPoint random_torus_point(const IntPolynomial& f, Rng& rng) {
    TorusPoint p;
    p.x.reserve(f.degree());
    for (int i = 0; i < f.degree(); ++i) p.x.emplace_back(rng.uniform());
    return p;
}

} // namespace salem
