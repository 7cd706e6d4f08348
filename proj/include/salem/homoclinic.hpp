#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "salem/central.hpp"
#include "salem/errors.hpp"
#include "salem/mp.hpp"
#include "salem/roots.hpp"
#include "salem/window.hpp"

namespace salem {

// Fundamental solutions of f(S) x = delta_0 built from the partial-fraction
// expansion of 1/f. With weights b_w = f_m/f'(w):
//
//   plus variant   n >= 1: (1/f_m) sum_{|w|<1}        b_w w^{n-1}
//                  n <= 0: (1/f_m) sum_{|w|>=1}      -b_w w^{n-1}
//   minus variant  n >= 1: (1/f_m) sum_{|w|<=1}       b_w w^{n-1}
//                  n <= 0: (1/f_m) sum_{|w|>1}       -b_w w^{n-1}
//
// Both solve f(S) x = delta_0 exactly; their difference is the circle part
//   central variant  all n: (1/f_m) sum_{|w|=1} b_w w^{n-1},
// the kernel element with coefficients b_w/(f_m w). The plus variant decays
// as n -> +infinity, the minus variant as n -> -infinity; on their
// non-decaying side both stay bounded (circle terms) plus a geometric
// correction. Inputs must be irreducible and not cyclotomic.
class HomoclinicData {
  public:
    HomoclinicData(const IntPolynomial& f, unsigned digits = 60)
        : rd_(find_roots(f, digits)) {
        ScopedPrecision prec(digits + 20);
        if (is_cyclotomic_like(f)) throw CyclotomicInput(detail::poly_str(f));
        PolyClass pc = classify(f, digits); // throws NotIrreducible
        (void)pc;
        const Real lead(f.leading());
        for (const auto& r : rd_.roots) {
            Term t;
            t.omega = r.omega;
            t.weight = Cx{Real(1) / lead, Real(0)} * r.b;
            t.cls = r.cls;
            terms_.push_back(t);
        }
        // decay data (doubles are plenty for tail bookkeeping)
        lam_plus_ = rd_.lambda_inside();
        double lo = rd_.lambda_outside();
        lam_minus_ = lo > 0 ? 1.0 / lo : 0.0;
        for (const auto& t : terms_) {
            double w = static_cast<double>(abs(t.weight));
            if (t.cls == RootClass::minus) c_plus_ += w;
            if (t.cls == RootClass::plus) c_minus_ += w;
        }
    }

    const IntPolynomial& poly() const { return rd_.f; }
    const RootData& roots() const { return rd_; }

    // geometric tail data: |plus_n| <= c_plus * lam_plus^{n-1} for n >= 1,
    // |minus_{-j}| <= c_minus * lam_minus^{j+1} for j >= 0.
    double lam_plus() const { return lam_plus_; }
    double lam_minus() const { return lam_minus_; }
    double c_plus() const { return c_plus_; }
    double c_minus() const { return c_minus_; }

    enum class Variant { plus, minus };

    double value(Variant v, long n) const {
        ScopedPrecision prec(rd_.digits + 20);
        Cx s{Real(0), Real(0)};
        for (const auto& t : terms_) {
            if (!contributes(v, t.cls, n)) continue;
            Cx term = t.weight * pow_int(t.omega, n - 1);
            s += (n >= 1) ? term : -term;
        }
        return static_cast<double>(s.re);
    }

    // Values on [lo,hi] with one multiplication per root per index.
    RealWindow window(Variant v, long lo, long hi) const {
        ScopedPrecision prec(rd_.digits + 20);
        RealWindow out;
        out.lo = lo;
        out.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
        for (const auto& t : terms_) {
            // upper side n >= 1
            if (contributes(v, t.cls, 1) && hi >= 1) {
                Cx p = pow_int(t.omega, std::max(lo, 1L) - 1);
                for (long n = std::max(lo, 1L); n <= hi; ++n) {
                    out.values[static_cast<std::size_t>(n - lo)] +=
                        static_cast<double>((t.weight * p).re);
                    p *= t.omega;
                }
            }
            // lower side n <= 0
            if (contributes(v, t.cls, 0) && lo <= 0) {
                Cx wi = inv(t.omega);
                Cx p = pow_int(t.omega, std::min(hi, 0L) - 1);
                for (long n = std::min(hi, 0L); n >= lo; --n) {
                    out.values[static_cast<std::size_t>(n - lo)] -=
                        static_cast<double>((t.weight * p).re);
                    p *= wi;
                }
            }
        }
        return out;
    }

    // The circle part as a kernel element (empty for hyperbolic f).
    CentralVector central_part() const {
        CentralVector cv;
        for (const auto& t : terms_) {
            if (t.cls != RootClass::zero) continue;
            ScopedPrecision prec(rd_.digits + 20);
            Cx coeff = t.weight * inv(t.omega); // weight * w^{-1}
            cv.omega.emplace_back(static_cast<double>(t.omega.re),
                                  static_cast<double>(t.omega.im));
            cv.c.emplace_back(static_cast<double>(coeff.re), static_cast<double>(coeff.im));
        }
        return cv;
    }

  private:
    struct Term {
        Cx omega;
        Cx weight; // b_w / f_m
        RootClass cls;
    };

    static bool contributes(Variant v, RootClass cls, long n) {
        if (n >= 1) {
            if (v == Variant::plus) return cls == RootClass::minus;
            return cls == RootClass::minus || cls == RootClass::zero;
        }
        if (v == Variant::plus) return cls == RootClass::zero || cls == RootClass::plus;
        return cls == RootClass::plus;
    }

    RootData rd_;
    std::vector<Term> terms_;
    double lam_plus_ = 0, lam_minus_ = 0, c_plus_ = 0, c_minus_ = 0;
};

using Variant = HomoclinicData::Variant;

inline HomoclinicData homoclinic(const IntPolynomial& f, unsigned digits = 60) {
    return HomoclinicData(f, digits);
}

// The coding map on finitely supported integer sequences:
//   xi(v)_k = sum_{n >= 0} v_n minus_{k-n} + sum_{n < 0} v_n plus_{k-n},
// evaluated exactly (the window of v is its entire support). Result on
// [lo,hi]. The split at n = 0 pairs each digit with the fundamental
// solution that decays toward the far end of its half line, which is what
// makes the sum converge for bounded infinite v as well; for those, callers
// pad the support window and account for the geometric tail (see
// xi_tail_bound).
inline RealWindow xi_bar_star(const HomoclinicData& h, const IntWindow& v, long lo, long hi) {
    const long a = v.lo, b = v.hi();
    // Need minus values on [lo-b, hi] hitting indices k-n for n in [0,b],
    // and plus values on [lo-(-1), hi-a] for n in [a,-1].
    RealWindow minus = h.window(HomoclinicData::Variant::minus, lo - std::max(b, 0L), hi);
    RealWindow plus = (a < 0)
                          ? h.window(HomoclinicData::Variant::plus, lo + 1, hi - a)
                          : RealWindow{};
    RealWindow out;
    out.lo = lo;
    out.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (long k = lo; k <= hi; ++k) {
        double acc = 0;
        for (long n = std::max(a, 0L); n <= b; ++n)
            acc += static_cast<double>(v.at(n)) * minus.at(k - n);
        for (long n = a; n <= std::min(b, -1L); ++n)
            acc += static_cast<double>(v.at(n)) * plus.at(k - n);
        out.values[static_cast<std::size_t>(k - lo)] = acc;
    }
    return out;
}

// Upper bound on what truncating v to a window whose support ends at
// distance >= pad from every evaluation index can change in xi, per unit of
// |v| beyond the truncation.
inline double xi_tail_bound(const HomoclinicData& h, long pad) {
    double t1 = 0, t2 = 0;
    if (h.lam_plus() > 0)
        t1 = h.c_plus() * std::pow(h.lam_plus(), static_cast<double>(pad)) /
             (1.0 - h.lam_plus());
    if (h.lam_minus() > 0)
        t2 = h.c_minus() * std::pow(h.lam_minus(), static_cast<double>(pad + 1)) /
             (1.0 - h.lam_minus());
    return std::max(t1, t2);
}

// Obstruction cocycle measuring how far xi is from commuting with the
// shift: a kernel element, identified by its coefficients on the circle
// roots. Empty for hyperbolic f. For n > 0 it accumulates the digits
// v_0..v_{n-1}; for n < 0 the digits v_n..v_{-1} with opposite sign:
//   n > 0:  c_w = (b_w/f_m) sum_{j=0}^{n-1} v_j w^{n-1-j}
//   n < 0:  c_w = -(b_w/f_m) sum_{j=1}^{-n} v_{-j} w^{n-1+j}
// These satisfy the cocycle equation d(m+n,v) = d(m, S^n v) + S^m d(n,v).
inline CentralVector cocycle_d(const HomoclinicData& h, long n, const IntWindow& v) {
    CentralVector out = central_zero(h.roots());
    if (out.empty() || n == 0) return out;
    CentralVector base = h.central_part(); // coefficients b_w/(f_m w)
    if (n > 0) {
        if (!v.covers(0, n - 1)) throw WindowTooSmall("cocycle needs v on [0,n)");
        for (std::size_t i = 0; i < out.terms(); ++i) {
            std::complex<double> w = out.omega[i];
            std::complex<double> bw = base.c[i] * w; // back to b_w/f_m
            std::complex<double> c{0, 0};
            for (long j = 0; j < n; ++j)
                c = w * c + bw * static_cast<double>(v.at(j));
            out.c[i] = c;
        }
    } else {
        if (!v.covers(n, -1)) throw WindowTooSmall("cocycle needs v on [n,-1]");
        for (std::size_t i = 0; i < out.terms(); ++i) {
            std::complex<double> w = out.omega[i];
            std::complex<double> bw = base.c[i] * w;
            std::complex<double> c{0, 0};
            std::complex<double> p = std::pow(w, static_cast<double>(n)); // w^{n-1+j} at j=1
            for (long j = 1; j <= -n; ++j) {
                c += bw * static_cast<double>(v.at(-j)) * p;
                p *= w;
            }
            out.c[i] = -c;
        }
    }
    return out;
}

} // namespace salem
