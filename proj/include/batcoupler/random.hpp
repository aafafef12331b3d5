#pragma once

#include <cstdint>
#include <random>

namespace batcoupler {

/// The single random stream a run draws from.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
/// Spelled out instead of std::uniform_real_distribution so the stream is
/// reproducible across standard library implementations.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

}  // namespace batcoupler
