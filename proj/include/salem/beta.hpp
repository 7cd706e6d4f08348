#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "salem/errors.hpp"
#include "salem/mp.hpp"
#include "salem/polynomial.hpp"
#include "salem/roots.hpp"
#include "salem/window.hpp"

namespace salem {

struct EtaValue {
    double value = 0;      // sum of v_n beta^{-n} over the window
    double tail_bound = 0; // what digits beyond the right edge could still add
};

// Beta-shift arithmetic around a base beta > 1: greedy expansions, the
// quasi-greedy expansion of 1 (the lexicographic ceiling for admissibility),
// evaluation, and soficity probing.
//
// When beta is tied to a monic integer polynomial, the orbit of 1 under the
// beta-transformation is tracked as an exact integer vector in the power
// basis 1, beta, ..., beta^{m-1}: multiplication by beta is a shift reduced
// by the polynomial, the orbit hitting zero or repeating is decided exactly,
// and floors are certified by escalating-precision evaluation (the value can
// only BE an integer when the vector is concentrated in its constant
// coordinate, so escalation terminates on honest inputs). Constructed from a
// bare real, everything falls back to fixed-precision numerics and the
// results carry no exactness claim.
class BetaSystem {
  public:
    static BetaSystem from_poly(const IntPolynomial& f, unsigned digits = 60) {
        f.validate();
        if (!f.monic()) throw Error("beta system needs a monic polynomial");
        BetaSystem bs;
        bs.f_ = f;
        bs.exact_ = true;
        bs.digits_ = std::max(30u, digits);
        RootData rd = find_roots(f, bs.digits_);
        {
            ScopedPrecision prec(bs.digits_ + 20);
            bool found = false;
            for (const auto& r : rd.roots) {
                if (abs(r.omega.im) < Real(1e-30) && r.omega.re > Real(1)) {
                    bs.beta_ = r.omega.re;
                    found = true;
                    break;
                }
            }
            if (!found) throw Error("polynomial has no real root above 1");
        }
        bs.init_common();
        bs.orb_.assign(static_cast<std::size_t>(f.degree()), 0);
        bs.orb_[0] = 1;
        bs.seen_.emplace(bs.orb_, 0L);
        return bs;
    }

    // Exploratory constructor; digit decisions are certified only to the
    // fixed working precision, so nothing downstream may claim exactness.
    static BetaSystem from_real(double beta, unsigned digits = 60) {
        if (!(beta > 1.0)) throw Error("beta must exceed 1");
        BetaSystem bs;
        bs.exact_ = false;
        bs.digits_ = std::max(30u, digits);
        ScopedPrecision prec(bs.digits_ + 20);
        bs.beta_ = Real(beta);
        bs.init_common();
        bs.orb_real_ = Real(1);
        return bs;
    }

    bool exact() const { return exact_; }
    unsigned digits() const { return digits_; }
    double beta() const { return static_cast<double>(beta_); }
    const Real& beta_mp() const { return beta_; }
    const IntPolynomial& poly() const {
        if (!exact_) throw Error("no polynomial attached");
        return f_;
    }
    long digit_max() const { return digit_max_; }

    // (preperiod, period) of the quasi-greedy expansion of 1, when certified
    // by the exact integer orbit (finite expansion or orbit repeat).
    std::optional<std::pair<long, long>> period_info() const {
        if (!period_) probe_ahead(kDetectCap);
        return period_;
    }

    // k-th digit (1-indexed) of the quasi-greedy expansion of 1.
    long estar(long k) const {
        if (k < 1) throw Error("estar index is 1-based");
        for (;;) {
            if (period_) {
                long p = period_->first, q = period_->second;
                long idx = (k <= p + q) ? k : p + (k - p - 1) % q + 1;
                return estar_[static_cast<std::size_t>(idx - 1)];
            }
            if (k <= static_cast<long>(estar_.size()))
                return estar_[static_cast<std::size_t>(k - 1)];
            grow_one();
        }
    }

    IntWindow estar_prefix(long n) const {
        if (n < 1) throw Error("need n >= 1");
        IntWindow w;
        w.lo = 1;
        w.growth = Growth::bounded;
        w.values.reserve(static_cast<std::size_t>(n));
        for (long k = 1; k <= n; ++k) w.values.push_back(estar(k));
        return w;
    }

    // Greedy digits of x in [0,1), as a window on positions 1..n. Replays at
    // doubled precision whenever a floor is not certified, which
    // binary-double inputs always allow.
    IntWindow beta_expand(double x, long n) const {
        if (!(x >= 0.0 && x < 1.0)) throw Error("x must lie in [0,1)");
        if (n < 1) throw Error("need n >= 1");
        const double lb = std::log10(static_cast<double>(beta_));
        unsigned work = digits_ + 20 + static_cast<unsigned>(std::ceil(double(n) * lb));
        for (int attempt = 0; attempt < 4; ++attempt, work *= 2) {
            IntWindow digits(1, {});
            digits.values.reserve(static_cast<std::size_t>(n));
            ScopedPrecision prec(work);
            const Real& b = beta_at(work);
            const Real margin = pow(Real(10), -static_cast<long>(work - 12));
            Real t(x);
            bool certified = true;
            for (long k = 0; k < n; ++k) {
                Real u = b * t;
                Real fl = floor(u);
                if (u - fl < margin || fl + Real(1) - u < margin) {
                    certified = false;
                    break;
                }
                digits.values.push_back(static_cast<long long>(fl));
                t = u - fl;
            }
            if (certified) return digits;
        }
        throw PrecisionExhausted("greedy digit of x not certified");
    }

    // Window evaluation sum v_n beta^{-n} plus the certified bound on what
    // indices beyond the right edge could contribute.
    EtaValue eta_eval(const IntWindow& v) const {
        ScopedPrecision prec(digits_ + 20);
        EtaValue out;
        out.value = static_cast<double>(eta_mp(v));
        Real ib = Real(1) / beta_;
        // sum over k > hi of digit_max beta^{-k}
        Real tail = Real(digit_max_) * pow_real(ib, v.hi()) / (beta_ - Real(1));
        out.tail_bound = static_cast<double>(tail);
        return out;
    }

    Real eta_mp(const IntWindow& v) const {
        ScopedPrecision prec(digits_ + 20);
        Real acc(0);
        Real ib = Real(1) / beta_;
        Real p = pow_real(ib, v.lo); // beta^{-lo}
        for (long n = v.lo; n <= v.hi(); ++n) {
            acc += Real(v.at(n)) * p;
            p *= ib;
        }
        return acc;
    }

    // Every in-window suffix must stay lexicographically at or below the
    // expansion of 1. A suffix still tied when the window ends cannot
    // witness inadmissibility either way (strict mode skips it; lenient
    // zero-extension passes it, because the comparison sequence has no
    // all-zero tail), so the flag only documents intent.
    bool is_admissible(const IntWindow& v, bool two_sided = true,
                       Extend mode = Extend::strict) const {
        (void)two_sided;
        (void)mode;
        for (long n = v.lo; n <= v.hi(); ++n) {
            long d = v.at(n);
            if (d < 0 || d > digit_max_)
                throw DigitOutOfRange("digit " + std::to_string(d) + " at index " +
                                      std::to_string(n));
        }
        for (long s = v.lo; s <= v.hi(); ++s) {
            for (long j = 0; s + j <= v.hi(); ++j) {
                long d = v.at(s + j);
                long e = estar(j + 1);
                if (d < e) break;
                if (d > e) return false;
            }
        }
        return true;
    }

    // Glue the past of v (indices <= 0) to the future of w (indices >= 1);
    // legal whenever w's future is strictly below v's, and then the result
    // is again admissible.
    IntWindow splice(const IntWindow& v, const IntWindow& w) const {
        long horizon = std::max(v.hi(), w.hi()) + 1;
        int cmp = 0; // future of w vs future of v
        for (long j = 1; j <= horizon; ++j) {
            long a = w.get(j), b = v.get(j);
            if (a != b) {
                cmp = a < b ? -1 : 1;
                break;
            }
        }
        if (cmp != -1) throw PreconditionViolated("future of w must be strictly below future of v");
        IntWindow out;
        out.lo = std::min(v.lo, 0L);
        out.growth = Growth::bounded;
        long hi = std::max(w.hi(), 0L);
        out.values.reserve(static_cast<std::size_t>(hi - out.lo + 1));
        for (long n = out.lo; n <= hi; ++n) out.values.push_back(n <= 0 ? v.get(n) : w.get(n));
        if (!is_admissible(out)) throw Error("splice produced an inadmissible window");
        return out;
    }

    // Look for eventual periodicity of the expansion of 1 within a finite
    // horizon. A hit is certain for exact systems (integer orbit repeat); a
    // miss never claims aperiodicity.
    std::optional<std::pair<long, long>> sofic_probe(long n_max) const {
        if (n_max < 2) throw Error("need n_max >= 2");
        if (period_) return period_;
        std::vector<long> e;
        e.reserve(static_cast<std::size_t>(n_max));
        for (long k = 1; k <= n_max; ++k) {
            e.push_back(estar(k));
            if (period_) return period_; // extension certified it on the way
        }
        for (long q = 1; q <= n_max / 2; ++q) {
            long p = 0;
            for (long k = n_max - q; k >= 1; --k) {
                if (e[static_cast<std::size_t>(k + q - 1)] != e[static_cast<std::size_t>(k - 1)]) {
                    p = k;
                    break;
                }
            }
            if (n_max - q - p >= q) return std::make_pair(p, q);
        }
        return std::nullopt;
    }

  private:
    BetaSystem() = default;

    static constexpr long kDetectCap = 1 << 14;

    void init_common() {
        ScopedPrecision prec(digits_ + 20);
        Real t = beta_ - Real(1);
        Real r = floor(t + Real(0.5));
        Real snap = pow(Real(10), -static_cast<long>(digits_ / 2));
        digit_max_ = (abs(t - r) < snap) ? static_cast<long>(r) : static_cast<long>(ceil(t));
    }

    static Real pow_real(const Real& b, long n) {
        Real r(1), base = b;
        long k = n;
        if (k < 0) {
            base = Real(1) / base;
            k = -k;
        }
        while (k) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    // beta recomputed at the requested precision (Newton from the stored
    // approximation; correct digits double every step).
    const Real& beta_at(unsigned prec_digits) const {
        if (!exact_) return beta_;
        auto it = beta_cache_.find(prec_digits);
        if (it != beta_cache_.end()) return it->second;
        ScopedPrecision prec(prec_digits + 10);
        Real x(beta_);
        for (int i = 0; i < 64; ++i) {
            Real step = f_.eval(x) / f_.eval_derivative(x);
            x -= step;
            if (abs(step) < pow(Real(10), -static_cast<long>(prec_digits + 5))) break;
        }
        return beta_cache_.emplace(prec_digits, x).first->second;
    }

    // --- expansion-of-1 machinery ----------------------------------------

    // multiply the power-basis vector by beta and reduce (monic f).
    std::vector<long long> shift_reduce(const std::vector<long long>& a) const {
        const int m = f_.degree();
        const long long top = a[static_cast<std::size_t>(m - 1)];
        const long long guard = 4000000000000000000LL / (f_.l1() + 2);
        std::vector<long long> s(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            long long prev = i > 0 ? a[static_cast<std::size_t>(i - 1)] : 0;
            if (std::llabs(prev) > guard || std::llabs(top) > guard)
                throw PrecisionExhausted("orbit coefficients exceed the safe integer range");
            s[static_cast<std::size_t>(i)] = prev - top * f_.c[static_cast<std::size_t>(i)];
        }
        return s;
    }

    static bool concentrated(const std::vector<long long>& a) {
        for (std::size_t i = 1; i < a.size(); ++i)
            if (a[i] != 0) return false;
        return true;
    }

    static bool all_zero(const std::vector<long long>& a) {
        for (long long c : a)
            if (c != 0) return false;
        return true;
    }

    // floor of the power-basis value, certified by escalating precision.
    long long certified_floor(const std::vector<long long>& s) const {
        if (concentrated(s)) return s[0];
        unsigned work = digits_;
        for (int attempt = 0; attempt < 5; ++attempt, work *= 2) {
            ScopedPrecision prec(work + 20);
            const Real& b = beta_at(work + 20);
            Real val(0), scale(0);
            for (std::size_t i = s.size(); i-- > 0;) {
                val = val * b + Real(s[i]);
                scale = scale * b + Real(std::llabs(s[i]));
            }
            Real fl = floor(val);
            Real margin = scale * pow(Real(10), -static_cast<long>(work + 8));
            if (val - fl > margin && fl + Real(1) - val > margin)
                return static_cast<long long>(fl);
        }
        throw PrecisionExhausted("orbit floor not certified");
    }

    static long smallest_cyclic_period(const std::vector<long>& w, long p, long q) {
        for (long cand = 1; cand < q; ++cand) {
            if (q % cand) continue;
            bool ok = true;
            for (long i = 0; ok && i < q; ++i)
                ok = w[static_cast<std::size_t>(p + i)] ==
                     w[static_cast<std::size_t>(p + (i + cand) % q)];
            if (ok) return cand;
        }
        return q;
    }

    void fold_finite() const {
        // greedy expansion of 1 ended: d_1..d_p becomes the repeated word
        // d_1 .. d_{p-1} (d_p - 1), the largest expansion with no zero tail
        std::vector<long> w = greedy_;
        w.back() -= 1;
        long q = smallest_cyclic_period(w, 0, static_cast<long>(w.size()));
        estar_.assign(w.begin(), w.begin() + q);
        period_ = std::make_pair(0L, q);
    }

    void fold_periodic(long j) const {
        long k = static_cast<long>(greedy_.size());
        long q = k - j, p = j;
        q = smallest_cyclic_period(greedy_, p, q); // digits may beat the orbit period
        while (p > 0 && greedy_[static_cast<std::size_t>(p - 1)] ==
                            greedy_[static_cast<std::size_t>(p - 1 + q)])
            --p;
        estar_ = greedy_;
        estar_.resize(static_cast<std::size_t>(p + q));
        period_ = std::make_pair(p, q);
    }

    // append one digit of the expansion of 1 (or certify periodicity).
    void grow_one() const {
        if (exact_) {
            std::vector<long long> s = shift_reduce(orb_);
            long long d = certified_floor(s);
            s[0] -= d;
            greedy_.push_back(static_cast<long>(d));
            orb_ = std::move(s);
            if (all_zero(orb_)) {
                fold_finite();
                return;
            }
            if (static_cast<long>(greedy_.size()) <= kDetectCap) {
                auto it = seen_.find(orb_);
                if (it != seen_.end()) {
                    fold_periodic(it->second);
                    return;
                }
                seen_.emplace(orb_, static_cast<long>(greedy_.size()));
            }
            estar_.push_back(greedy_.back());
            return;
        }
        ScopedPrecision prec(digits_ + 20);
        const Real margin = pow(Real(10), -static_cast<long>(digits_));
        Real u = beta_ * orb_real_;
        Real fl = floor(u);
        if (u - fl < margin || fl + Real(1) - u < margin)
            throw PrecisionExhausted("expansion of 1 hit an uncertified floor; use from_poly");
        estar_.push_back(static_cast<long>(fl));
        orb_real_ = u - fl;
    }

    void probe_ahead(long cap) const {
        if (!exact_) return;
        while (!period_ && static_cast<long>(greedy_.size()) < cap) grow_one();
    }

    IntPolynomial f_;
    bool exact_ = false;
    unsigned digits_ = 60;
    Real beta_;
    long digit_max_ = 1;

    mutable std::vector<long> estar_;  // quasi-greedy digits (folded when periodic)
    mutable std::vector<long> greedy_; // raw greedy digits of 1 (exact mode)
    mutable std::vector<long long> orb_;
    mutable std::map<std::vector<long long>, long> seen_;
    mutable Real orb_real_;
    mutable std::optional<std::pair<long, long>> period_;
    mutable std::map<unsigned, Real> beta_cache_;
};

} // namespace salem
