#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <optional>
#include <vector>

#include "salem/errors.hpp"
#include "salem/mp.hpp"
#include "salem/polynomial.hpp"

namespace salem {

// Position of a root relative to the unit circle.
enum class RootClass { minus, zero, plus }; // |w| < 1, |w| = 1, |w| > 1

struct Root {
    Cx omega;
    RootClass cls;
    Cx b; // residue weight f_m / f'(omega)
};

struct RootData {
    IntPolynomial f;
    unsigned digits = 60;
    std::vector<Root> roots;

    int count(RootClass c) const {
        int n = 0;
        for (const auto& r : roots) n += (r.cls == c);
        return n;
    }

    // Largest contracting modulus (0 if no root inside the circle).
    double lambda_inside() const {
        double m = 0;
        for (const auto& r : roots)
            if (r.cls == RootClass::minus) m = std::max(m, static_cast<double>(abs(r.omega)));
        return m;
    }

    // Smallest expanding modulus (0 sentinel when no root outside).
    double lambda_outside() const {
        double m = 0;
        for (const auto& r : roots)
            if (r.cls == RootClass::plus) {
                double a = static_cast<double>(abs(r.omega));
                m = (m == 0) ? a : std::min(m, a);
            }
        return m;
    }

    // The real root > 1, when there is one (spectral radius for the
    // polynomial families this library is about).
    std::optional<Real> real_root_above_one() const {
        for (const auto& r : roots)
            if (r.cls == RootClass::plus && r.omega.im == 0 && r.omega.re > 1)
                return r.omega.re;
        return std::nullopt;
    }
};

namespace detail {

inline std::string poly_str(const IntPolynomial& f) {
    std::string s = "[";
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(f.c[i]);
    }
    return s + "]";
}

inline std::vector<std::complex<double>> companion_eigenvalues(const IntPolynomial& f) {
    const int m = f.degree();
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i + 1 < m; ++i) C(i, i + 1) = 1.0;
    const double lead = static_cast<double>(f.leading());
    for (int j = 0; j < m; ++j) C(m - 1, j) = -static_cast<double>(f.c[j]) / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> out(m);
    for (int i = 0; i < m; ++i) out[i] = es.eigenvalues()[i];
    return out;
}

// Newton refinement at the current default precision. Throws
// PrecisionExhausted if the iteration fails to certify, NonSquarefree if
// the derivative collapses under it.
inline Cx refine_newton(const IntPolynomial& f, Cx z, unsigned digits) {
    const Real eps = pow(Real(10), -static_cast<long>(digits));
    const Real certify = pow(Real(10), -static_cast<long>(digits) / 2);
    Real scale = abs(z);
    if (scale < 1) scale = 1;
    for (int it = 0; it < 400; ++it) {
        Cx fv = f.eval_cx(z);
        Cx dv = f.eval_derivative_cx(z);
        if (abs(dv) < certify * certify)
            throw NonSquarefree("derivative vanishes near a root of " + poly_str(f));
        Cx step = fv / dv;
        z -= step;
        if (abs(step) <= eps * scale && abs(f.eval_cx(z)) < certify) return z;
    }
    if (abs(f.eval_cx(z)) < certify) return z;
    throw PrecisionExhausted("root refinement stalled for " + poly_str(f));
}

} // namespace detail

// Locate all roots of f: double-precision companion eigenvalues as seeds,
// then Newton at `digits` decimal digits (>= 30, default 60). Roots are
// classified against the unit circle with tolerance 1e-12 on the modulus,
// conjugate symmetry is enforced exactly, and for palindromic f off-circle
// roots are snapped into exact (w, 1/w) pairs. Residue weights
// b = f_m/f'(w) ride along with each root.
inline RootData find_roots(const IntPolynomial& f, unsigned digits = 60) {
    f.validate();

    // Exact pre-test: a root at u = +-1 is an integer factor (u -+ 1), and
    // those are the only rational points the unit circle offers. Catching
    // them here keeps the numeric circle test below free of exact ties.
    long long f_at_1 = 0, f_at_m1 = 0;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        f_at_1 += f.c[i];
        f_at_m1 += (i % 2 ? -f.c[i] : f.c[i]);
    }
    if (f.degree() >= 2 && (f_at_1 == 0 || f_at_m1 == 0))
        throw NotIrreducible(detail::poly_str(f));

    if (digits < 30) digits = 30;
    ScopedPrecision prec(digits + 20);

    auto seeds = detail::companion_eigenvalues(f);
    std::vector<Cx> refined;
    for (const auto& s : seeds) {
        if (s.imag() < -1e-9) continue; // mirror of an upper-half seed
        Cx z{Real(s.real()), s.imag() < 1e-9 ? Real(0) : Real(s.imag())};
        z = detail::refine_newton(f, z, digits);
        // a seed that drifted onto the real axis during refinement is real
        if (z.im != 0 && abs(z.im) < pow(Real(10), -static_cast<long>(digits) * 3 / 4))
            z.im = 0;
        refined.push_back(z);
        if (z.im != 0) refined.push_back(conj(z));
    }
    if (static_cast<int>(refined.size()) != f.degree())
        throw PrecisionExhausted("root count mismatch after refinement");

    // Coincident refined roots mean f was not squarefree (or the precision
    // collapsed; same remedy either way).
    const Real sep = pow(Real(10), -static_cast<long>(digits) / 2);
    for (std::size_t i = 0; i < refined.size(); ++i)
        for (std::size_t j = i + 1; j < refined.size(); ++j)
            if (abs(refined[i] - refined[j]) < sep)
                throw NonSquarefree("two roots coincide at the working precision");

    // Palindromic f: snap the partner of each outside root to exactly 1/w.
    const Real circle_tol = Real("1e-12");
    if (f.reciprocal()) {
        for (auto& z : refined) {
            if (abs(z) <= 1 + circle_tol) continue;
            Cx want = inv(z);
            for (auto& cand : refined)
                if (abs(cand - want) < Real("1e-6")) { cand = want; break; }
        }
        for (auto& z : refined) { // re-assert conjugate symmetry after snapping
            if (z.im <= 0) continue;
            for (auto& cand : refined)
                if (cand.im < 0 && abs(cand - conj(z)) < Real("1e-6")) cand = conj(z);
        }
    }

    RootData rd;
    rd.f = f;
    rd.digits = digits;
    const Real lead(f.leading());
    for (const auto& z : refined) {
        Root r;
        r.omega = z;
        Real mod = abs(z);
        r.cls = mod > 1 + circle_tol   ? RootClass::plus
                : mod < 1 - circle_tol ? RootClass::minus
                                       : RootClass::zero;
        Cx deriv = f.eval_derivative_cx(z);
        if (abs(deriv) == 0) throw NonSquarefree("derivative exactly zero at a root");
        r.b = Cx{lead, Real(0)} / deriv;
        rd.roots.push_back(r);
    }

    // Deterministic order: by modulus, then real part, then imaginary part.
    std::sort(rd.roots.begin(), rd.roots.end(), [](const Root& a, const Root& b) {
        Real ma = abs2(a.omega), mb = abs2(b.omega);
        if (ma != mb) return ma < mb;
        if (a.omega.re != b.omega.re) return a.omega.re < b.omega.re;
        return a.omega.im < b.omega.im;
    });

    // Circle roots of an integer polynomial force a palindrome, except the
    // exact points +-1 already certified above (reachable only at degree 1
    // now); seeing any other one without the palindrome means the
    // classification cannot be trusted.
    long uncertified_circle = 0;
    for (const auto& r : rd.roots) {
        bool exact_unit = r.omega.im == 0 && ((r.omega.re == 1 && f_at_1 == 0) ||
                                              (r.omega.re == -1 && f_at_m1 == 0));
        if (r.cls == RootClass::zero && !exact_unit) ++uncertified_circle;
    }
    if (!f.reciprocal() && uncertified_circle > 0)
        throw Inconclusive("near-circle root of a non-palindromic polynomial");

    return rd;
}

// Structural classification of a valid input polynomial.
struct PolyClass {
    bool irreducible = false;
    bool cyclotomic = false;
    bool reciprocal = false;
    bool hyperbolic = false; // no root on the unit circle
    bool pisot = false;      // one real root > 1, all others strictly inside
    bool salem = false;      // palindrome: one root out, one in, the rest on the circle
    int n_minus = 0, n_zero = 0, n_plus = 0;
};

namespace detail {

// Multiply ascending-coefficient polynomial p by (u - w), in place.
inline void mul_linear(std::vector<Cx>& p, const Cx& w) {
    p.push_back(Cx{Real(0), Real(0)});
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
        Cx shifted = i > 0 ? p[i - 1] : Cx{Real(0), Real(0)};
        p[i] = shifted - w * p[i];
    }
}

// Irreducibility over the integers by factor reconstruction: any integer
// factor corresponds to a conjugation-closed subset of roots whose
// elementary symmetric functions, scaled by a divisor of the leading
// coefficient, are integers. Degrees here are small, so enumerating
// subsets is cheap, and every candidate is verified by exact division
// before we believe it.
inline bool has_integer_factor(const IntPolynomial& f, const RootData& rd) {
    const int m = f.degree();
    std::vector<long long> leads;
    for (long long d = 1; d <= f.leading(); ++d)
        if (f.leading() % d == 0) leads.push_back(d);

    for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
        bool closed = true; // subset closed under conjugation?
        for (int i = 0; i < m && closed; ++i) {
            if (!(mask >> i & 1)) continue;
            const Cx& w = rd.roots[i].omega;
            if (w.im == 0) continue;
            bool found = false;
            for (int j = 0; j < m && !found; ++j)
                if ((mask >> j & 1) && abs(rd.roots[j].omega - conj(w)) < Real("1e-25"))
                    found = true;
            closed = found;
        }
        if (!closed) continue;

        std::vector<Cx> prod{Cx{Real(1), Real(0)}}; // ascending, starts at constant 1
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) mul_linear(prod, rd.roots[i].omega);

        for (long long lead : leads) {
            std::vector<long long> cand(prod.size());
            bool integral = true;
            for (std::size_t k = 0; k < prod.size() && integral; ++k) {
                Real v = Real(lead) * prod[k].re;
                Real r = round(v);
                if (abs(v - r) > Real("1e-18") ||
                    abs(Real(lead) * prod[k].im) > Real("1e-18"))
                    integral = false;
                else
                    cand[k] = static_cast<long long>(r);
            }
            if (!integral || cand.back() == 0) continue;
            BigPoly q, fb = to_big(f);
            BigPoly cb(cand.begin(), cand.end());
            if (divide_exact(fb, cb, q)) return true;
        }
    }
    return false;
}

} // namespace detail

// Residue weights of 1/f: with b_w = f_m/f'(w),
//   1/f(z) = (1/f_m) * sum_w b_w / (z - w)
// for squarefree f. Returned in the same order as rd.roots.
inline std::vector<Cx> partial_fractions(const RootData& rd) {
    std::vector<Cx> out;
    out.reserve(rd.roots.size());
    for (const auto& r : rd.roots) out.push_back(r.b);
    return out;
}

// |1/f(z) - (1/f_m) sum b_w/(z-w)| at a probe point; tests and diagnostics
// use this to certify the expansion independently of how b was produced.
inline Real partial_fraction_residual(const RootData& rd, const Cx& z) {
    ScopedPrecision prec(rd.digits + 20);
    Cx lhs = inv(rd.f.eval_cx(z));
    Cx sum{Real(0), Real(0)};
    for (const auto& r : rd.roots) sum += r.b / (z - r.omega);
    sum = Cx{Real(1) / Real(rd.f.leading()), Real(0)} * sum;
    return abs(lhs - sum);
}

// Classify f: irreducibility (exact, via verified factor reconstruction),
// cyclotomicity (exact division tests), and the root-location flags.
// Throws NotIrreducible for reducible input.
inline PolyClass classify(const IntPolynomial& f, unsigned digits = 60) {
    RootData rd = find_roots(f, digits);
    ScopedPrecision prec(digits + 20);
    PolyClass pc;
    pc.n_minus = rd.count(RootClass::minus);
    pc.n_zero = rd.count(RootClass::zero);
    pc.n_plus = rd.count(RootClass::plus);
    pc.reciprocal = f.reciprocal();
    pc.hyperbolic = pc.n_zero == 0;
    pc.cyclotomic = is_cyclotomic_like(f);
    pc.irreducible = !detail::has_integer_factor(f, rd);
    if (!pc.irreducible) throw NotIrreducible(detail::poly_str(f));

    auto beta = rd.real_root_above_one();
    pc.pisot = beta.has_value() && pc.n_plus == 1 && pc.n_zero == 0;
    pc.salem = beta.has_value() && pc.reciprocal && pc.n_plus == 1 && pc.n_minus == 1 &&
               pc.n_zero == f.degree() - 2 && f.degree() >= 4;
    return pc;
}

} // namespace salem
