// rng.hpp — seeded, platform-stable random streams.
//
// Every run derives its randomness from one root seed. Modules draw from
// named streams so that adding a consumer never perturbs another module's
// sequence: stream(seed, id) seeds an mt19937_64 via splitmix64(seed ^ id).
// Uniforms and normals are generated from the raw 64-bit output (no
// std::*_distribution, whose sequences are implementation-defined).

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "common.hpp"

namespace lierkhs {

// Stream ids (documented splitting scheme).
namespace stream {
inline constexpr std::uint64_t kHaarSampling = 0x68616172;   // group point draws
inline constexpr std::uint64_t kCoefficients = 0x636f6566;   // random coefficient fields
inline constexpr std::uint64_t kBallCloud = 0x62616c6c;      // unit-ball image clouds
inline constexpr std::uint64_t kCustomSymbol = 0x73796d62;   // random test symbols
}  // namespace stream

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t s = seed ^ (stream_id * 0x9e3779b97f4a7c15ull);
        gen_.seed(splitmix64(s));
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box–Muller; pairs generated eagerly, spare cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * kPi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    cplx normal_complex() { return {normal(), normal()}; }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace lierkhs
