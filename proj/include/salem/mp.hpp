#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <utility>

namespace salem {

// Arbitrary-precision real. Variable precision, plain value semantics
// (no expression templates) so it composes with our own complex type.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Scoped default precision, in decimal digits. New Real values constructed
// while the guard is alive carry this precision.
class ScopedPrecision {
  public:
    explicit ScopedPrecision(unsigned digits)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    ~ScopedPrecision() { Real::default_precision(saved_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

  private:
    unsigned saved_;
};

// Minimal complex arithmetic over Real. std::complex is only specified for
// builtin floating types, so we carry our own; just the operations the
// root refinement and series evaluation need.
struct Cx {
    Real re{0}, im{0};

    Cx() = default;
    Cx(Real r) : re(std::move(r)) {}
    Cx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Cx(double r) : re(r) {}
    Cx(double r, double i) : re(r), im(i) {}

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator*(const Real& s, const Cx& a) { return {s * a.re, s * a.im}; }
    friend Cx operator/(const Cx& a, const Cx& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Cx& operator+=(const Cx& b) { re += b.re; im += b.im; return *this; }
    Cx& operator-=(const Cx& b) { re -= b.re; im -= b.im; return *this; }
    Cx& operator*=(const Cx& b) { *this = *this * b; return *this; }
};

inline Cx conj(const Cx& a) { return {a.re, -a.im}; }
inline Real abs2(const Cx& a) { return a.re * a.re + a.im * a.im; }
inline Real abs(const Cx& a) { return sqrt(abs2(a)); }
inline Cx inv(const Cx& a) {
    Real d = abs2(a);
    return {a.re / d, -a.im / d};
}

// z^n for any integer n (binary powering; n < 0 inverts first).
inline Cx pow_int(Cx z, long n) {
    if (n < 0) { z = inv(z); n = -n; }
    Cx acc{Real(1), Real(0)};
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

} // namespace salem
