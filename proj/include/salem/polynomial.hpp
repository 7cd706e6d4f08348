#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

#include "salem/errors.hpp"
#include "salem/mp.hpp"

namespace salem {

using BigInt = boost::multiprecision::cpp_int;

// Integer polynomial f = f_0 + f_1 u + ... + f_m u^m, coefficients ascending.
// Valid inputs have m > 0, f_m > 0 and f_0 != 0 (no root at zero, positive
// leading coefficient).
struct IntPolynomial {
    std::vector<long long> c;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<long long> coeffs) : c(std::move(coeffs)) {}

    int degree() const { return static_cast<int>(c.size()) - 1; }
    long long leading() const { return c.back(); }

    void validate() const {
        if (c.size() < 2) throw Error("polynomial must have positive degree");
        if (c.back() <= 0) throw Error("leading coefficient must be positive");
        if (c.front() == 0) throw Error("constant coefficient must be nonzero");
    }

    bool monic() const { return c.back() == 1; }

    // Sum of absolute coefficient values.
    long long l1() const {
        long long s = 0;
        for (long long a : c) s += std::llabs(a);
        return s;
    }

    bool reciprocal() const { // palindromic coefficient vector
        for (std::size_t i = 0, j = c.size() - 1; i < j; ++i, --j)
            if (c[i] != c[j]) return false;
        return true;
    }

    template <class T>
    T eval(const T& z) const { // Horner
        T acc(c.back());
        for (int i = degree() - 1; i >= 0; --i) acc = acc * z + T(c[i]);
        return acc;
    }

    template <class T>
    T eval_derivative(const T& z) const {
        T acc(static_cast<double>(degree()) * c.back());
        for (int i = degree() - 1; i >= 1; --i) acc = acc * z + T(static_cast<double>(i) * c[i]);
        return acc;
    }

    Cx eval_cx(const Cx& z) const {
        Cx acc{Real(c.back()), Real(0)};
        for (int i = degree() - 1; i >= 0; --i) acc = acc * z + Cx{Real(c[i]), Real(0)};
        return acc;
    }

    Cx eval_derivative_cx(const Cx& z) const {
        Cx acc{Real(degree()) * c.back(), Real(0)};
        for (int i = degree() - 1; i >= 1; --i) acc = acc * z + Cx{Real(i) * c[i], Real(0)};
        return acc;
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
        return a.c == b.c;
    }
};

namespace detail {

using BigPoly = std::vector<BigInt>; // ascending, may be empty (zero poly)

inline void trim(BigPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline BigPoly to_big(const IntPolynomial& f) {
    BigPoly p(f.c.begin(), f.c.end());
    trim(p);
    return p;
}

// Exact division of a by b over the rationals with integer result demanded:
// returns true and fills q when a == q*b with integer q.
inline bool divide_exact(const BigPoly& a, const BigPoly& b, BigPoly& q) {
    if (b.empty()) return false;
    BigPoly r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, BigInt(0));
    if (q.empty()) { trim(r); return r.empty(); }
    const BigInt& lead = b.back();
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
        if (r.size() < b.size() + k) continue;
        BigInt top = r[b.size() - 1 + k];
        if (top == 0) { q[k] = 0; continue; }
        if (top % lead != 0) return false;
        BigInt qk = top / lead;
        q[k] = qk;
        for (std::size_t i = 0; i < b.size(); ++i) r[i + k] -= qk * b[i];
    }
    trim(r);
    return r.empty();
}

// Remainder of u^k - 1 modulo monic-scaled f, exactly. Used for the
// root-of-unity test; works for any valid f via fraction-free reduction:
// we reduce lead(f)^t * (u^k - 1) instead, which has the same zero set.
inline bool divides_u_pow_minus_1(const IntPolynomial& f, long k) {
    BigPoly fb = to_big(f);
    BigPoly p(static_cast<std::size_t>(k) + 1, BigInt(0));
    p[0] = -1;
    p[k] = 1;
    BigPoly q;
    return divide_exact(p, fb, q);
}

} // namespace detail

// True when f divides u^k - 1 for some k <= bound, i.e. every root of f is
// a k-th root of unity. For degree m the relevant k never exceeds 2*m^2
// at the degrees this library targets.
inline bool is_cyclotomic_like(const IntPolynomial& f, long bound = 0) {
    if (!f.reciprocal() && f.degree() > 1) return false; // circle roots force a palindrome
    if (bound <= 0) bound = 2L * f.degree() * f.degree() + 2;
    for (long k = 1; k <= bound; ++k)
        if (detail::divides_u_pow_minus_1(f, k)) return true;
    return false;
}

} // namespace salem
