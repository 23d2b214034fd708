#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace iceberg {

/// One-shot splitmix64 finalizer. Used for seed expansion and for deriving
/// child-stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// xoshiro256** seeded through splitmix64.
///
/// The raw 64-bit stream is fully specified, so identical seeds produce
/// bit-identical draws on every platform. Bounded draws use rejection
/// sampling rather than std::uniform_int_distribution, which is
/// implementation-defined.
///
/// Stream splitting rule: child(i) is an independent generator seeded with
/// mix64(seed ^ mix64(i + 1)). Schedule builders take one child per level,
/// the Monte Carlo driver one child per trial, experiment drivers one child
/// per instance.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : seed_(seed) {
        std::uint64_t s = seed;
        bool nonzero = false;
        for (auto& word : state_) {
            word = mix64(s);
            s = word;
            nonzero = nonzero || word != 0;
        }
        if (!nonzero) state_[0] = 0x9e3779b97f4a7c15ull;
    }

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform draw from [0, n). Unbiased via rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        std::uint64_t r;
        do {
            r = next();
        } while (r < threshold);
        return r % n;
    }

    /// Uniform draw from the inclusive range [lo, hi].
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        if (hi < lo) throw std::invalid_argument("Rng::range: empty range");
        return lo + below(hi - lo + 1);
    }

    /// Independent child stream number `index` (see class comment).
    Rng child(std::uint64_t index) const noexcept {
        return Rng(mix64(seed_ ^ mix64(index + 1)));
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace iceberg
