#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "bat.hpp"
#include "bat_ops.hpp"
#include "random.hpp"
#include "search_space.hpp"

namespace batcoupler {

/// Minimisation target: a pure map from a position in space() to a non-negative cost.
template <class F>
concept Objective = requires(const F& f, std::span<const double> x) {
    { f.space() } -> std::convertible_to<const SearchSpace&>;
    { f(x) } -> std::convertible_to<double>;
};

/// Adapts any callable plus a search space into an Objective.
template <class Fn>
class FunctionObjective {
public:
    FunctionObjective(SearchSpace space, Fn fn) : space_(std::move(space)), fn_(std::move(fn)) {}
    const SearchSpace& space() const noexcept { return space_; }
    std::size_t dims() const noexcept { return space_.dims(); }
    double operator()(std::span<const double> x) const { return fn_(x); }

private:
    SearchSpace space_;
    Fn fn_;
};

namespace detail {

/// Evaluates and maps exceptions / non-finite values to nullopt.
template <Objective F>
std::optional<double> try_evaluate(const F& objective, std::span<const double> x) {
    try {
        const double c = objective(x);
        if (std::isfinite(c)) return c;
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

inline std::vector<double> uniform_position(const SearchSpace& space, Rng& rng) {
    std::vector<double> x(space.dims());
    for (std::size_t d = 0; d < x.size(); ++d) x[d] = uniform(rng, space.lower(d), space.upper(d));
    return x;
}

template <Objective F>
Bat fresh_bat(Population& pop, const F& objective, double loudness, Rng& rng) {
    const SearchSpace& space = objective.space();
    Bat bat;
    bat.id = pop.next_id++;
    bat.position = uniform_position(space, rng);
    bat.velocity.assign(space.dims(), 0.0);
    bat.loudness = loudness;
    bat.pulse_rate = 0.0;
    if (auto c = try_evaluate(objective, bat.position)) {
        bat.fitness = *c;
    } else {
        bat.fitness = std::numeric_limits<double>::infinity();
        ++pop.failed_evaluations;
    }
    return bat;
}

inline void rank(Population& pop) {
    std::stable_sort(pop.bats.begin(), pop.bats.end(),
                     [](const Bat& a, const Bat& b) { return a.fitness < b.fitness; });
}

inline void offer_best(Population& pop, const std::vector<double>& x, double cost) {
    if (cost < pop.best_fitness) {
        pop.best_fitness = cost;
        pop.best_position = x;
    }
}

template <Objective F>
void check_inputs(const BatParams& params, const F& objective) {
    params.validate();
    require(objective.space().dims() >= 1, "objective has no dimensions");
}

}  // namespace detail

/// Uniform random positions, zero velocity, loudness a0, pulse rate 0 (r0 is the ceiling), t = 0.
template <Objective F>
Population init_population(const BatParams& params, const F& objective, Rng& rng) {
    detail::check_inputs(params, objective);
    Population pop;
    pop.bats.reserve(params.pop_size);
    for (std::size_t i = 0; i < params.pop_size; ++i)
        pop.bats.push_back(detail::fresh_bat(pop, objective, params.a0, rng));
    detail::rank(pop);
    pop.best_position = pop.bats.front().position;
    pop.best_fitness = pop.bats.front().fitness;
    return pop;
}

/// Overload that checks the caller's space against the objective's own.
template <Objective F>
Population init_population(const BatParams& params, const SearchSpace& space, const F& objective,
                           std::uint64_t seed) {
    detail::require(space.dims() == objective.space().dims(),
                    "objective and search space differ in dimension");
    Rng rng(seed);
    return init_population(params, objective, rng);
}

/// One iteration. Draw order per bat, in rank order:
///   beta, pulse draw, [epsilon_1..epsilon_dims if walking], acceptance draw.
/// Then: loudness decay for every bat, elitist update, ranking, replacement of
/// the replace_count worst bats, ranking, t += 1.
template <Objective F>
void step(Population& pop, const BatParams& params, const F& objective, Rng& rng) {
    const SearchSpace& space = objective.space();
    const std::size_t dims = space.dims();
    const double avg_loudness = pop.mean_loudness();
    const std::vector<double> best = pop.best_position;

    std::optional<std::vector<double>> sweep_best;
    double sweep_best_cost = pop.best_fitness;
    std::vector<double> epsilon(dims);

    for (Bat& bat : pop.bats) {
        const double frequency = draw_frequency(params, uniform01(rng));
        Flight flight = move_bat(bat, best, frequency, space);
        if (uniform01(rng) > bat.pulse_rate) {
            for (double& e : epsilon) e = uniform(rng, -1.0, 1.0);
            flight.position = random_walk(best, avg_loudness, epsilon, space);
        }
        const std::optional<double> cost = detail::try_evaluate(objective, flight.position);
        const double accept_draw = uniform01(rng);
        if (!cost) {
            ++pop.failed_evaluations;
        } else {
            if (*cost < sweep_best_cost) {
                sweep_best_cost = *cost;
                sweep_best = flight.position;
            }
            if (accept_draw < bat.loudness && *cost <= bat.fitness) {
                bat.position = std::move(flight.position);
                bat.velocity = std::move(flight.velocity);
                bat.frequency = frequency;
                bat.fitness = *cost;
                bat.pulse_rate = update_pulse_rate(params.r0, params.gamma, pop.t + 1);
            }
        }
        bat.loudness = update_loudness(bat.loudness, params.alpha);
    }
    if (sweep_best) detail::offer_best(pop, *sweep_best, sweep_best_cost);

    detail::rank(pop);
    if (params.replace_count > 0) {
        const double loudness = pop.mean_loudness();
        const std::size_t n = pop.bats.size();
        for (std::size_t k = 0; k < params.replace_count && k + 1 < n; ++k) {
            Bat& slot = pop.bats[n - 1 - k];
            slot = detail::fresh_bat(pop, objective, loudness, rng);
            detail::offer_best(pop, slot.position, slot.fitness);
        }
        detail::rank(pop);
    }
    ++pop.t;
}

/// Iterates step() until best fitness <= tol or max_iter iterations.
template <Objective F>
RunResult run(const F& objective, const BatParams& params, std::uint64_t seed) {
    detail::check_inputs(params, objective);
    Rng rng(seed);
    Population pop = init_population(params, objective, rng);

    RunResult result;
    result.seed = seed;
    result.initial_best_fitness = pop.best_fitness;
    result.history.reserve(params.max_iter);
    while (pop.best_fitness > params.tol && pop.t < params.max_iter) {
        step(pop, params, objective, rng);
        result.history.push_back({pop.t, pop.best_fitness, pop.best_position});
    }
    result.best_position = pop.best_position;
    result.best_fitness = pop.best_fitness;
    result.iterations_used = pop.t;
    result.terminated =
        pop.best_fitness <= params.tol ? Termination::ToleranceReached : Termination::MaxIterations;
    result.failed_evaluations = pop.failed_evaluations;
    return result;
}

/// Overload taking an explicit search space, which must match the objective's.
template <Objective F>
RunResult run(const F& objective, const BatParams& params, const SearchSpace& space,
              std::uint64_t seed) {
    detail::require(space == objective.space(), "objective and search space differ");
    return run(objective, params, seed);
}

}  // namespace batcoupler
