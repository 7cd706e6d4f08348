#pragma once

#include <cstdint>
#include <vector>

#include "salem/errors.hpp"
#include "salem/polynomial.hpp"

namespace salem {

// How a windowed view of an infinite sequence is allowed to grow.
enum class Growth { bounded, linear };

// How operators treat indices outside the window: strict shrinks the
// result window to indices that are fully determined; zeros extends the
// sequence by zero beyond the window.
enum class Extend { strict, zeros };

// Finite view w_lo..w_hi of a bi-infinite sequence.
template <class T>
struct Window {
    long lo = 0;
    std::vector<T> values;
    Growth growth = Growth::bounded;

    Window() = default;
    Window(long lo_, std::vector<T> v, Growth g = Growth::bounded)
        : lo(lo_), values(std::move(v)), growth(g) {}

    long hi() const { return lo + static_cast<long>(values.size()) - 1; }
    long size() const { return static_cast<long>(values.size()); }
    bool covers(long a, long b) const { return lo <= a && b <= hi(); }

    const T& at(long n) const {
        if (n < lo || n > hi()) throw WindowTooSmall("index outside window");
        return values[static_cast<std::size_t>(n - lo)];
    }
    T& at(long n) {
        if (n < lo || n > hi()) throw WindowTooSmall("index outside window");
        return values[static_cast<std::size_t>(n - lo)];
    }
    // zero-extended read
    T get(long n) const {
        if (n < lo || n > hi()) return T{};
        return values[static_cast<std::size_t>(n - lo)];
    }

    T sup_norm() const {
        T m{};
        for (const T& v : values) {
            T a = v < T{} ? static_cast<T>(-v) : v;
            if (a > m) m = a;
        }
        return m;
    }

    friend bool operator==(const Window& a, const Window& b) {
        return a.lo == b.lo && a.values == b.values;
    }
};

using IntWindow = Window<long long>;
using RealWindow = Window<double>;

// (shift_seq^k w)_n = w_{n+k}: the view slides left for k > 0. Pure
// reindexing, exact for any value type.
template <class T>
Window<T> shift_seq(const Window<T>& w, long k) {
    Window<T> r = w;
    r.lo = w.lo - k;
    return r;
}

// Apply f under the shift: (f(S) w)_n = sum_k f_k w_{n+k}.
// strict: result window [lo, hi-m] (every term inside the input window);
// zeros:  result window [lo-m, hi] (input read as zero outside).
// Exact when T is an integer type.
template <class T>
Window<T> apply_poly(const IntPolynomial& f, const Window<T>& w, Extend mode = Extend::strict) {
    f.validate();
    const int m = f.degree();
    Window<T> r;
    r.growth = w.growth;
    if (mode == Extend::strict) {
        if (w.size() <= m) throw WindowTooSmall("window shorter than degree+1");
        r.lo = w.lo;
        r.values.resize(static_cast<std::size_t>(w.size() - m));
        for (long n = w.lo; n <= w.hi() - m; ++n) {
            T acc{};
            for (int k = 0; k <= m; ++k) acc += static_cast<T>(f.c[k]) * w.at(n + k);
            r.values[static_cast<std::size_t>(n - w.lo)] = acc;
        }
    } else {
        r.lo = w.lo - m;
        r.values.resize(static_cast<std::size_t>(w.size() + m));
        for (long n = r.lo; n <= w.hi(); ++n) {
            T acc{};
            for (int k = 0; k <= m; ++k) acc += static_cast<T>(f.c[k]) * w.get(n + k);
            r.values[static_cast<std::size_t>(n - r.lo)] = acc;
        }
    }
    return r;
}

} // namespace salem
