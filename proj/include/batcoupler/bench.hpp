#pragma once

// Standard continuous test functions for checking the optimizer on its own.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "search_space.hpp"

namespace batcoupler::bench {

inline double sphere(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum += v * v;
    return sum;
}

inline double rosenbrock(std::span<const double> x) {
    detail::require(x.size() >= 2, "rosenbrock needs at least 2 dimensions");
    double sum = 0.0;
    for (std::size_t d = 0; d + 1 < x.size(); ++d) {
        const double a = x[d + 1] - x[d] * x[d];
        const double b = 1.0 - x[d];
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

inline double rastrigin(std::span<const double> x) {
    double sum = 10.0 * static_cast<double>(x.size());
    for (double v : x) sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    return sum;
}

struct BenchFunction {
    std::string name;
    std::size_t dims = 0;
    SearchSpace default_bounds;
    double known_minimum = 0.0;
    std::vector<double> known_argmin;
    std::function<double(std::span<const double>)> evaluate;

    const SearchSpace& space() const noexcept { return default_bounds; }
    double operator()(std::span<const double> x) const { return evaluate(x); }
};

inline const std::vector<std::string>& available() {
    static const std::vector<std::string> names{"sphere", "rosenbrock", "rastrigin"};
    return names;
}

/// Looks a function up by name. Throws InvalidInput for unknown names or dims.
inline BenchFunction make(std::string_view name, std::size_t dims) {
    detail::require(dims >= 1, "bench dimension must be positive");
    if (name == "sphere")
        return {"sphere",
                dims,
                SearchSpace::uniform(dims, -5.12, 5.12),
                0.0,
                std::vector<double>(dims, 0.0),
                sphere};
    if (name == "rastrigin")
        return {"rastrigin",
                dims,
                SearchSpace::uniform(dims, -5.12, 5.12),
                0.0,
                std::vector<double>(dims, 0.0),
                rastrigin};
    if (name == "rosenbrock") {
        detail::require(dims >= 2, "rosenbrock needs at least 2 dimensions");
        return {"rosenbrock",
                dims,
                SearchSpace::uniform(dims, -2.048, 2.048),
                0.0,
                std::vector<double>(dims, 1.0),
                rosenbrock};
    }
    std::string list;
    for (const auto& n : available()) list += (list.empty() ? "" : ", ") + n;
    throw InvalidInput("unknown bench function '" + std::string(name) + "' (available: " + list +
                       ")");
}

}  // namespace batcoupler::bench
