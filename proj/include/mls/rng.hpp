#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace mls {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stable substream derivation: hash(seed, replication, component).
/// The chain of mix64 steps is the documented contract; changing it
/// changes every downstream artifact.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replication,
                                 std::uint64_t component) {
    return mix64(mix64(mix64(seed) + replication) + component);
}

/// xoshiro256++ with splitmix64 state expansion. All randomness in the
/// library flows through explicit Rng instances; there is no global state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            w = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in the open interval (0,1); never returns 0 or 1, so it is
    /// safe under log().
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Unit-rate exponential.
    double exponential() { return -std::log(uniform()); }

    /// Fair Rademacher sign.
    double sign() { return (next() >> 63) ? 1.0 : -1.0; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> state_;
};

}  // namespace mls
