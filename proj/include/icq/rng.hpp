#pragma once
#include <array>
#include <cmath>
#include <cstdint>

namespace icq {

// splitmix64 step; also used to mix lane ids into substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic combine for substream derivation: each (trial, arm, lane)
// gets an independent stream so trial order cannot change results.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
    std::uint64_t h = splitmix64(s);
    s ^= b + 0x517cc1b727220a95ULL;
    return h ^ splitmix64(s);
}

// xoshiro256** seeded via splitmix64. Self-contained so that streams are
// bit-reproducible across platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : state_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
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

    // Uniform on [0,1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo,hi).
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    // Standard normal, Marsaglia polar method with one cached deviate.
    double next_normal() {
        if (has_cache_) {
            has_cache_ = false;
            return cache_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_unit() - 1.0;
            v = 2.0 * next_unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        cache_ = v * m;
        has_cache_ = true;
        return u * m;
    }

    // Beta(a,b) for a,b in (0,1), Johnk's rejection method. The reward models
    // only ever need Beta(g, 1-g), where the acceptance rate stays above 0.78.
    double next_beta_sub1(double a, double b) {
        for (;;) {
            const double x = std::pow(next_unit(), 1.0 / a);
            const double y = std::pow(next_unit(), 1.0 / b);
            const double s = x + y;
            if (s <= 1.0 && s > 0.0) return x / s;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> state_{};
    double cache_ = 0.0;
    bool has_cache_ = false;
};

inline Rng fork_rng(std::uint64_t seed, std::uint64_t lane) {
    return Rng(mix_seed(seed, lane));
}

inline Rng fork_rng(std::uint64_t seed, std::uint64_t lane_a, std::uint64_t lane_b) {
    return Rng(mix_seed(mix_seed(seed, lane_a), lane_b));
}

} // namespace icq
