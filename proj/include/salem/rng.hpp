#pragma once

#include <cstdint>

namespace salem {

// Deterministic, splittable random generator.
//
// Algorithm: xoshiro256++ (Blackman/Vigna), state expanded from the seed by
// SplitMix64. Child streams are derived by offsetting the seed with the
// stream index times the 64-bit golden gamma before expansion, so
// Rng(seed).split(i) is reproducible on every platform and independent of
// how much the parent has already drawn. Uniform doubles take the top 53
// bits; bounded integers use rejection sampling. No libc or libstdc++
// distribution objects are involved, so byte-identical output is guaranteed
// across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(seed + stream * 0x9E3779B97F4A7C15ull) {
        std::uint64_t x = base_;
        for (auto& word : s_) word = splitmix64(x);
    }

    // Child generator #child, derived from this generator's seed material
    // (not its evolving state): splitting commutes with drawing.
    Rng split(std::uint64_t child) const {
        return Rng(base_ ^ 0xA5A5A5A55A5A5A5Aull, child + 1);
    }

    std::uint64_t u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), n >= 1. Rejection keeps it exactly uniform.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t cutoff = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
        std::uint64_t v;
        do { v = u64(); } while (v >= cutoff);
        return v % n;
    }

    long long range(long long lo, long long hi) { // inclusive ends
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t base_;
    std::uint64_t s_[4];
};

} // namespace salem
