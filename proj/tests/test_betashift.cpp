#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "salem/beta.hpp"
#include "salem/rng.hpp"

using namespace salem;

namespace {
const IntPolynomial kGolden{{-1, -1, 1}};
const IntPolynomial kSalem4{{1, -1, -1, -1, 1}};
const IntPolynomial kLehmer{{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}};
const IntPolynomial kTwo{{-2, 1}}; // u - 2

std::string prefix_str(const BetaSystem& bs, long n) {
    auto w = bs.estar_prefix(n);
    std::string s;
    for (auto d : w.values) s.push_back(static_cast<char>('0' + d));
    return s;
}
} // namespace

TEST_CASE("quasi-greedy expansion of 1") {
    SECTION("golden: alternating, period (0,2)") {
        auto bs = BetaSystem::from_poly(kGolden);
        REQUIRE(bs.exact());
        REQUIRE(bs.digit_max() == 1);
        REQUIRE(prefix_str(bs, 12) == "101010101010");
        auto p = bs.period_info();
        REQUIRE(p);
        REQUIRE(p->first == 0);
        REQUIRE(p->second == 2);
    }

    SECTION("integer base: all ones, period (0,1)") {
        auto bs = BetaSystem::from_poly(kTwo);
        REQUIRE(bs.digit_max() == 1);
        REQUIRE(prefix_str(bs, 10) == "1111111111");
        auto p = bs.period_info();
        REQUIRE(p);
        REQUIRE(p->first == 0);
        REQUIRE(p->second == 1);
    }

    SECTION("degree-4 Salem: 1 then repeating 100, period (1,3)") {
        auto bs = BetaSystem::from_poly(kSalem4);
        REQUIRE(bs.digit_max() == 1);
        REQUIRE(prefix_str(bs, 13) == "1100100100100");
        auto p = bs.period_info();
        REQUIRE(p);
        REQUIRE(p->first == 1);
        REQUIRE(p->second == 3);
    }

    SECTION("Lehmer: long but eventually periodic") {
        auto bs = BetaSystem::from_poly(kLehmer);
        auto p = bs.sofic_probe(2000);
        REQUIRE(p);
        REQUIRE(p->first == 1);
        REQUIRE(p->second == 74);
    }

    SECTION("periodic fold agrees with direct growth") {
        auto bs = BetaSystem::from_poly(kSalem4);
        // force the fold, then check digits far beyond the detected cycle
        REQUIRE(bs.period_info());
        for (long k = 1; k <= 50; ++k) {
            long want = (k == 1) ? 1 : ((k - 2) % 3 == 0 ? 1 : 0);
            REQUIRE(bs.estar(k) == want);
        }
    }
}

TEST_CASE("maximality of the expansion") {
    // every shift of e* is lexicographically no larger than e* itself
    for (const auto* f : {&kGolden, &kSalem4, &kLehmer}) {
        auto bs = BetaSystem::from_poly(*f);
        auto w = bs.estar_prefix(400);
        for (long k = 1; k <= 200; ++k) {
            bool le = false, decided = false;
            for (long i = 1; i + k <= 400; ++i) {
                long a = w.at(i + k), b = w.at(i);
                if (a != b) {
                    le = a < b;
                    decided = true;
                    break;
                }
            }
            if (decided) REQUIRE(le);
        }
    }
}

TEST_CASE("greedy expansion round trip") {
    Rng rng(17);
    for (const auto* f : {&kGolden, &kSalem4, &kLehmer}) {
        auto bs = BetaSystem::from_poly(*f);
        double beta = bs.beta();
        for (int trial = 0; trial < 30; ++trial) {
            double x = rng.uniform();
            auto v = bs.beta_expand(x, 60);
            REQUIRE(v.lo == 1);
            REQUIRE(v.size() == 60);
            REQUIRE(bs.is_admissible(v, false));
            auto ev = bs.eta_eval(v);
            REQUIRE(std::abs(ev.value - x) < std::pow(beta, -59.0));
        }
    }
}

TEST_CASE("eta evaluates digit windows") {
    auto bs = BetaSystem::from_poly(kGolden);
    double phi = bs.beta();

    IntWindow w(1, {1, 0, 1});
    auto ev = bs.eta_eval(w);
    REQUIRE(ev.value == Catch::Approx(1 / phi + 1 / (phi * phi * phi)).margin(1e-14));
    // geometric sum of digit_max beta^{-k} over k > 3
    REQUIRE(ev.tail_bound ==
            Catch::Approx(std::pow(phi, -3.0) / (phi - 1)).margin(1e-12));

    // high-precision variant agrees
    REQUIRE(static_cast<double>(bs.eta_mp(w)) == Catch::Approx(ev.value).margin(1e-15));
}

TEST_CASE("admissibility") {
    auto bs = BetaSystem::from_poly(kGolden);

    SECTION("the expansion itself passes, one- and two-sided") {
        auto w = bs.estar_prefix(50);
        REQUIRE(bs.is_admissible(w, false));
        IntWindow two(-10, std::vector<long long>(21, 0));
        two.at(0) = 1;
        REQUIRE(bs.is_admissible(two));
    }

    SECTION("golden forbids adjacent ones") {
        IntWindow bad(0, {0, 1, 1, 0});
        REQUIRE_FALSE(bs.is_admissible(bad, false));
        IntWindow good(0, {0, 1, 0, 1});
        REQUIRE(bs.is_admissible(good, false));
    }

    SECTION("digits outside the alphabet are an error, not a verdict") {
        IntWindow big(0, {0, 2, 0});
        REQUIRE_THROWS_AS(bs.is_admissible(big, false), DigitOutOfRange);
        IntWindow neg(0, {0, -1, 0});
        REQUIRE_THROWS_AS(bs.is_admissible(neg, false), DigitOutOfRange);
    }

    SECTION("salem case matches the expansion bound") {
        auto s4 = BetaSystem::from_poly(kSalem4);
        // 1101... exceeds e* = 1100100... at the fourth digit
        IntWindow bad(0, {1, 1, 0, 1});
        REQUIRE_FALSE(s4.is_admissible(bad, false));
        IntWindow edge(0, {1, 1, 0, 0, 1, 0, 0});
        REQUIRE(s4.is_admissible(edge, false));
    }
}

TEST_CASE("splicing a past onto a strictly smaller future") {
    auto bs = BetaSystem::from_poly(kSalem4);
    Rng rng(4);

    int done = 0;
    for (int trial = 0; trial < 40 && done < 15; ++trial) {
        // two admissible stretches; both are placed two-sided around 0
        auto a = bs.beta_expand(rng.uniform(), 81);
        auto b = bs.beta_expand(rng.uniform(), 81);
        IntWindow va(-40, a.values), vb(-40, b.values);
        // order them so the second's future (indices >= 1) is strictly below
        int cmp = 0;
        for (long j = 1; j <= 40 && cmp == 0; ++j)
            cmp = va.get(j) < vb.get(j) ? -1 : (va.get(j) > vb.get(j) ? 1 : 0);
        if (cmp == 0) continue; // identical futures cannot be spliced
        const IntWindow& big = cmp > 0 ? va : vb;
        const IntWindow& sml = cmp > 0 ? vb : va;
        auto glued = bs.splice(big, sml);
        ++done;
        REQUIRE(glued.covers(-40, 40));
        REQUIRE(bs.is_admissible(glued));
        // past comes from the first argument, future from the second
        for (long n = -40; n <= 0; ++n) REQUIRE(glued.at(n) == big.at(n));
        for (long n = 1; n <= 40; ++n) REQUIRE(glued.at(n) == sml.at(n));
    }
    REQUIRE(done >= 15);

    SECTION("tied futures are refused") {
        auto a = bs.beta_expand(0.37, 30);
        IntWindow v(-29, a.values), w(-29, a.values);
        REQUIRE_THROWS_AS(bs.splice(v, w), PreconditionViolated);
    }
}

TEST_CASE("numeric fallback") {
    // a non-algebraic-looking beta still yields a consistent expansion
    auto bs = BetaSystem::from_real(1.8);
    REQUIRE_FALSE(bs.exact());
    REQUIRE(bs.digit_max() == 1);
    auto w = bs.estar_prefix(30);
    REQUIRE(w.at(1) == 1);
    // maximality still holds on the computed stretch
    for (long k = 1; k <= 15; ++k) {
        for (long i = 1; i + k <= 30; ++i) {
            long a = w.at(i + k), b = w.at(i);
            if (a != b) {
                REQUIRE(a < b);
                break;
            }
        }
    }
}

TEST_CASE("sofic probe") {
    REQUIRE(BetaSystem::from_poly(kGolden).sofic_probe(100) ==
            std::make_pair(0L, 2L));
    REQUIRE(BetaSystem::from_poly(kTwo).sofic_probe(100) == std::make_pair(0L, 1L));
    REQUIRE(BetaSystem::from_poly(kSalem4).sofic_probe(100) == std::make_pair(1L, 3L));
}
