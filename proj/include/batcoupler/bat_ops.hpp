#pragma once

// Per-bat update rules: frequency tuning, flight, local random walk and the
// loudness / pulse-rate schedules.

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "bat.hpp"
#include "search_space.hpp"

namespace batcoupler {

/// f = f_min + (f_max - f_min) * beta, beta in [0, 1].
inline double draw_frequency(const BatParams& params, double beta) noexcept {
    return params.f_min + (params.f_max - params.f_min) * beta;
}

struct Flight {
    std::vector<double> velocity;  ///< unclamped
    std::vector<double> position;  ///< clamped into the search space
};

/// v' = v + (x - best) f,  x' = clamp(x + v').
inline Flight move_bat(const Bat& bat, std::span<const double> best_position, double frequency,
                       const SearchSpace& space) {
    const std::size_t dims = space.dims();
    detail::require(
        bat.position.size() == dims && bat.velocity.size() == dims && best_position.size() == dims,
        "move_bat: vector length does not match search space");
    Flight out{std::vector<double>(dims), std::vector<double>(dims)};
    for (std::size_t d = 0; d < dims; ++d) {
        out.velocity[d] = bat.velocity[d] + (bat.position[d] - best_position[d]) * frequency;
        out.position[d] = bat.position[d] + out.velocity[d];
    }
    space.clamp(out.position);
    return out;
}

/// x_new = clamp(best + epsilon * avg_loudness), componentwise.
inline std::vector<double> random_walk(std::span<const double> best_position, double avg_loudness,
                                       std::span<const double> epsilon, const SearchSpace& space) {
    const std::size_t dims = space.dims();
    detail::require(best_position.size() == dims && epsilon.size() == dims,
                    "random_walk: vector length does not match search space");
    detail::require(avg_loudness >= 0.0, "random_walk: loudness must be non-negative");
    std::vector<double> out(dims);
    for (std::size_t d = 0; d < dims; ++d) out[d] = best_position[d] + epsilon[d] * avg_loudness;
    space.clamp(out);
    return out;
}

/// A' = alpha A.
inline double update_loudness(double loudness, double alpha) noexcept { return alpha * loudness; }

/// r = r0 (1 - exp(-gamma t)).
inline double update_pulse_rate(double r0, double gamma, std::size_t t) noexcept {
    return r0 * -std::expm1(-gamma * static_cast<double>(t));
}

}  // namespace batcoupler
