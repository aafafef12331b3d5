#include <catch_amalgamated.hpp>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "batcoupler/bench.hpp"
#include "batcoupler/coupler_objective.hpp"
#include "batcoupler/optimizer.hpp"

using namespace batcoupler;

namespace {

auto sphere_objective(std::size_t dims, double lo = -5.12, double hi = 5.12) {
    return FunctionObjective(SearchSpace::uniform(dims, lo, hi),
                             [](std::span<const double> x) { return bench::sphere(x); });
}

void require_in_bounds(const Population& pop, const SearchSpace& space) {
    for (const Bat& b : pop.bats) REQUIRE(space.contains(b.position));
    REQUIRE(space.contains(pop.best_position));
}

void require_ranked(const Population& pop) {
    for (std::size_t i = 1; i < pop.bats.size(); ++i)
        REQUIRE(pop.bats[i - 1].fitness <= pop.bats[i].fitness);
}

}  // namespace

TEST_CASE("init_population") {
    const auto obj = sphere_objective(3);
    BatParams p;
    const Population pop = init_population(p, obj.space(), obj, 17);
    REQUIRE(pop.bats.size() == 20);
    CHECK(pop.t == 0);
    require_in_bounds(pop, obj.space());
    require_ranked(pop);
    CHECK(pop.best_fitness == pop.bats.front().fitness);
    CHECK(pop.best_position == pop.bats.front().position);
    for (const Bat& b : pop.bats) {
        CHECK(b.velocity == std::vector<double>(3, 0.0));
        CHECK(b.loudness == p.a0);
        CHECK(b.pulse_rate == 0.0);
        CHECK(b.fitness == bench::sphere(b.position));
    }

    SECTION("same seed, same population") {
        CHECK(init_population(p, obj.space(), obj, 17) == pop);
        CHECK_FALSE(init_population(p, obj.space(), obj, 18) == pop);
    }
    SECTION("single bat") {
        p.pop_size = 1;
        p.replace_count = 0;
        const Population one = init_population(p, obj.space(), obj, 5);
        REQUIRE(one.bats.size() == 1);
        CHECK(one.best_position == one.bats[0].position);
    }
    SECTION("dimension mismatch") {
        CHECK_THROWS_AS(init_population(p, SearchSpace::uniform(2, -1, 1), obj, 1), InvalidInput);
    }
    SECTION("invalid params") {
        p.replace_count = p.pop_size;
        CHECK_THROWS_AS(init_population(p, obj.space(), obj, 1), InvalidInput);
    }
}

TEST_CASE("step with every acceptance draw failing leaves positions alone") {
    const auto obj = sphere_objective(2);
    BatParams p;
    p.replace_count = 0;
    p.a0 = 1e-300;  // acceptance needs a uniform draw below the loudness
    Rng rng(4);
    Population pop = init_population(p, obj, rng);
    const Population before = pop;
    step(pop, p, obj, rng);
    CHECK(pop.t == 1);
    REQUIRE(pop.bats.size() == before.bats.size());
    for (std::size_t i = 0; i < pop.bats.size(); ++i) {
        CHECK(pop.bats[i].id == before.bats[i].id);
        CHECK(pop.bats[i].position == before.bats[i].position);
        CHECK(pop.bats[i].velocity == before.bats[i].velocity);
        CHECK(pop.bats[i].fitness == before.bats[i].fitness);
    }
    CHECK(pop.best_fitness <= before.best_fitness);
}

TEST_CASE("step is deterministic for identical state") {
    const auto obj = sphere_objective(4);
    const BatParams p;
    Rng rng(8);
    Population pop = init_population(p, obj, rng);
    for (int i = 0; i < 5; ++i) step(pop, p, obj, rng);

    Population a = pop, b = pop;
    Rng ra = rng, rb = rng;
    step(a, p, obj, ra);
    step(b, p, obj, rb);
    CHECK(a == b);
    CHECK(ra == rb);
}

TEST_CASE("step invariants over many iterations") {
    const auto obj = sphere_objective(3);
    BatParams p;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        Population pop = init_population(p, obj, rng);
        for (int it = 0; it < 60; ++it) {
            std::map<std::uint64_t, Bat> prev;
            for (const Bat& b : pop.bats) prev[b.id] = b;
            const double prev_best = pop.best_fitness;

            step(pop, p, obj, rng);

            REQUIRE(pop.best_fitness <= prev_best);
            REQUIRE(pop.t == static_cast<std::size_t>(it + 1));
            require_in_bounds(pop, obj.space());
            require_ranked(pop);
            REQUIRE(pop.bats.size() == p.pop_size);
            REQUIRE(pop.best_fitness <= pop.bats.front().fitness);
            for (const Bat& b : pop.bats) {
                REQUIRE(b.pulse_rate <= p.r0);
                auto old = prev.find(b.id);
                if (old == prev.end()) continue;  // replacement bat
                REQUIRE(b.loudness < old->second.loudness);
                REQUIRE(b.pulse_rate >= old->second.pulse_rate);
                REQUIRE(b.fitness <= old->second.fitness);
            }
        }
    }
}

TEST_CASE("replacement spares the best-ranked bat") {
    const auto obj = sphere_objective(2);
    BatParams p;
    p.pop_size = 4;
    p.replace_count = 3;
    Rng rng(21);
    Population pop = init_population(p, obj, rng);
    for (int i = 0; i < 30; ++i) {
        std::map<std::uint64_t, double> prev;
        for (const Bat& b : pop.bats) prev[b.id] = b.fitness;
        const double prev_min = pop.bats.front().fitness;
        step(pop, p, obj, rng);
        int survivors = 0;
        for (const Bat& b : pop.bats) {
            if (!prev.count(b.id)) continue;
            ++survivors;
            REQUIRE(b.fitness <= prev_min);
        }
        REQUIRE(survivors == 1);
    }
}

TEST_CASE("failed evaluations reject the candidate") {
    // Throws everywhere except a small patch, so most candidates fail.
    const FunctionObjective obj(SearchSpace::uniform(2, -1.0, 1.0), [](std::span<const double> x) {
        if (x[0] > 0.5) throw std::runtime_error("outside model");
        return x[0] * x[0] + x[1] * x[1];
    });
    BatParams p;
    Rng rng(12);
    Population pop = init_population(p, obj, rng);
    for (int i = 0; i < 20; ++i) {
        std::map<std::uint64_t, Bat> prev;
        for (const Bat& b : pop.bats) prev[b.id] = b;
        step(pop, p, obj, rng);
        for (const Bat& b : pop.bats) {
            auto old = prev.find(b.id);
            if (old != prev.end() && b.position != old->second.position)
                REQUIRE(b.position[0] <= 0.5);
        }
    }
    CHECK(pop.failed_evaluations > 0);
    CHECK(std::isfinite(pop.best_fitness));

    const FunctionObjective nan_obj(
        SearchSpace::uniform(1, 0.0, 1.0),
        [](std::span<const double> x) { return x[0] < 0.5 ? std::nan("") : x[0]; });
    const RunResult r = run(nan_obj, p, 3);
    CHECK(std::isfinite(r.best_fitness));
    CHECK(r.failed_evaluations > 0);
}

TEST_CASE("run stops immediately when the initial population is optimal") {
    const FunctionObjective flat(SearchSpace::uniform(2, 0.0, 1.0),
                                 [](std::span<const double>) { return 0.0; });
    const RunResult r = run(flat, BatParams{}, 1);
    CHECK(r.iterations_used == 0);
    CHECK(r.history.empty());
    CHECK(r.terminated == Termination::ToleranceReached);
    CHECK(r.iterations_to(1e-6) == std::size_t{0});
}

TEST_CASE("run history contract") {
    const auto obj = sphere_objective(5);
    BatParams p;
    p.max_iter = 1000;
    const RunResult r = run(obj, p, 42);
    REQUIRE(r.history.size() == r.iterations_used);
    REQUIRE_FALSE(r.history.empty());
    CHECK(r.history.back().best_fitness == r.best_fitness);
    CHECK(r.history.back().best_position == r.best_position);
    for (std::size_t i = 0; i < r.history.size(); ++i) {
        REQUIRE(r.history[i].iteration == i + 1);
        REQUIRE(obj.space().contains(r.history[i].best_position));
        if (i) REQUIRE(r.history[i].best_fitness <= r.history[i - 1].best_fitness);
    }
    CHECK(r.terminated == Termination::ToleranceReached);
    CHECK(r.best_fitness <= p.tol);
    CHECK(r.iterations_used < 1000);

    CHECK(run(obj, p, 42) == r);
    CHECK_FALSE(run(obj, p, 43) == r);
}

TEST_CASE("run reports MaxIterations when the budget runs out") {
    const auto obj = sphere_objective(5);
    BatParams p;
    p.max_iter = 3;
    p.tol = 1e-300;
    const RunResult r = run(obj, p, 1);
    CHECK(r.iterations_used == 3);
    CHECK(r.history.size() == 3);
    CHECK(r.terminated == Termination::MaxIterations);
}

TEST_CASE("single bat, no replacement: elitist best never worsens") {
    const auto obj = sphere_objective(2);
    BatParams p;
    p.pop_size = 1;
    p.replace_count = 0;
    p.max_iter = 200;
    p.tol = 1e-300;
    const RunResult r = run(obj, p, 9);
    for (std::size_t i = 1; i < r.history.size(); ++i)
        REQUIRE(r.history[i].best_fitness <= r.history[i - 1].best_fitness);
}

TEST_CASE("run validates inputs before iterating") {
    const auto obj = sphere_objective(2);
    BatParams p;
    p.alpha = 1.5;
    CHECK_THROWS_AS(run(obj, p, 1), InvalidInput);
    CHECK_THROWS_AS(run(obj, BatParams{}, SearchSpace::uniform(2, 0, 1), 1), InvalidInput);
}

TEST_CASE("coupler design run converges to the target coupling") {
    const CouplerObjective obj(DesignSpec{});
    const RunResult r = run(obj, BatParams{}, 1);
    REQUIRE(r.terminated == Termination::ToleranceReached);
    const CouplerAnalysis a =
        analyze({r.best_position[0], r.best_position[1], r.best_position[2], 3.9});
    CHECK(std::abs(a.coupling - 0.2) <= 1e-6);
    CHECK(feasible(a, obj.spec()));
}
