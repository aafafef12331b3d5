#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace batcoupler {

/// Algorithm constants. Defaults follow the coupler experiment (20 bats, f in [0, 100], 1e-6).
struct BatParams {
    std::size_t pop_size = 20;
    double f_min = 0.0;
    double f_max = 100.0;
    double alpha = 0.9;  ///< loudness decay per iteration, in (0, 1)
    double gamma = 0.9;  ///< pulse-rate growth, > 0
    double r0 = 0.5;     ///< pulse-rate ceiling, in (0, 1]
    double a0 = 1.0;     ///< initial loudness, > 0
    std::size_t replace_count = 2;
    std::size_t max_iter = 1000;
    double tol = 1e-6;

    void validate() const {
        using detail::require;
        require(pop_size >= 1, "pop_size must be positive");
        require(std::isfinite(f_min) && std::isfinite(f_max) && f_min < f_max,
                "f_min must be below f_max");
        require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
        require(gamma > 0.0 && std::isfinite(gamma), "gamma must be positive");
        require(r0 > 0.0 && r0 <= 1.0, "r0 must lie in (0, 1]");
        require(a0 > 0.0 && std::isfinite(a0), "a0 must be positive");
        require(replace_count < pop_size, "replace_count must be below pop_size");
        require(max_iter >= 1, "max_iter must be positive");
        require(tol > 0.0 && std::isfinite(tol), "tol must be positive");
    }
};

struct Bat {
    std::uint64_t id = 0;  ///< stable identity; replacement bats get fresh ids
    std::vector<double> position;
    std::vector<double> velocity;
    double frequency = 0.0;
    double loudness = 0.0;
    double pulse_rate = 0.0;
    double fitness = std::numeric_limits<double>::infinity();

    bool operator==(const Bat&) const = default;
};

struct Population {
    std::vector<Bat> bats;  ///< ranked by fitness, ascending, ties by previous order
    std::vector<double> best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
    std::size_t t = 0;
    std::uint64_t next_id = 0;
    std::size_t failed_evaluations = 0;

    double mean_loudness() const {
        if (bats.empty()) return 0.0;
        double sum = 0.0;
        for (const auto& b : bats) sum += b.loudness;
        return sum / static_cast<double>(bats.size());
    }

    bool operator==(const Population&) const = default;
};

enum class Termination { ToleranceReached, MaxIterations };

inline std::string_view to_string(Termination t) {
    return t == Termination::ToleranceReached ? "ToleranceReached" : "MaxIterations";
}

struct ConvergenceRecord {
    std::size_t iteration = 0;
    double best_fitness = 0.0;
    std::vector<double> best_position;

    bool operator==(const ConvergenceRecord&) const = default;
};

struct RunResult {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    double initial_best_fitness = 0.0;
    std::size_t iterations_used = 0;
    std::vector<ConvergenceRecord> history;
    std::uint64_t seed = 0;
    Termination terminated = Termination::MaxIterations;
    std::size_t failed_evaluations = 0;

    /// First iteration whose best fitness is <= threshold; 0 if the initial population already was.
    /// Empty when never reached.
    std::optional<std::size_t> iterations_to(double threshold) const {
        if (initial_best_fitness <= threshold) return std::size_t{0};
        for (const auto& rec : history)
            if (rec.best_fitness <= threshold) return rec.iteration;
        return std::nullopt;
    }

    bool operator==(const RunResult&) const = default;
};

}  // namespace batcoupler
