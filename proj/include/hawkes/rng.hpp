#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hawkes {

/// SplitMix64 mixing step; used to derive substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seedable random stream with a fixed, documented draw discipline.
///
/// The engine is std::mt19937_64 (bit-exact by the standard). Uniform and
/// exponential variates are derived from the raw 64-bit output by inverse
/// CDF rather than through std::uniform_real_distribution, whose output is
/// implementation-defined. One stream drives one run; substreams are derived
/// with split().
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1): 53 mantissa bits of the raw draw.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Exponential with the given rate via inverse CDF. rate must be > 0.
    double exponential(double rate) {
        // uniform() < 1, so the log argument stays in (0, 1].
        return -std::log1p(-uniform()) / rate;
    }

    /// Independent substream: a pure function of (construction seed, stream).
    Rng split(std::uint64_t stream) const {
        std::uint64_t s = seed_ ^ (0xD1B54A32D192ED03ULL * (stream + 1));
        return Rng(splitmix64(s));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace hawkes
