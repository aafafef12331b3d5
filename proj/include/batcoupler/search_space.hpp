#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace batcoupler {

/// Axis-aligned box [lower, upper] in R^dims.
class SearchSpace {
public:
    SearchSpace(std::vector<double> lower, std::vector<double> upper)
        : lower_(std::move(lower)), upper_(std::move(upper)) {
        detail::require(!lower_.empty(), "search space needs at least one dimension");
        detail::require(lower_.size() == upper_.size(), "lower and upper bounds differ in length");
        for (std::size_t d = 0; d < lower_.size(); ++d) {
            detail::require(std::isfinite(lower_[d]) && std::isfinite(upper_[d]),
                            "bounds must be finite (dimension " + std::to_string(d) + ")");
            detail::require(
                lower_[d] < upper_[d],
                "lower bound must be below upper bound (dimension " + std::to_string(d) + ")");
        }
    }

    /// Same [lo, hi] interval in every dimension.
    static SearchSpace uniform(std::size_t dims, double lo, double hi) {
        return SearchSpace(std::vector<double>(dims, lo), std::vector<double>(dims, hi));
    }

    std::size_t dims() const noexcept { return lower_.size(); }
    const std::vector<double>& lower() const noexcept { return lower_; }
    const std::vector<double>& upper() const noexcept { return upper_; }
    double lower(std::size_t d) const { return lower_[d]; }
    double upper(std::size_t d) const { return upper_[d]; }

    bool contains(std::span<const double> x) const noexcept {
        if (x.size() != dims()) return false;
        for (std::size_t d = 0; d < x.size(); ++d)
            if (!(x[d] >= lower_[d] && x[d] <= upper_[d])) return false;
        return true;
    }

    /// Componentwise clamp into the box. NaN components land on the lower bound.
    void clamp(std::span<double> x) const noexcept {
        for (std::size_t d = 0; d < x.size() && d < dims(); ++d)
            x[d] = std::isnan(x[d]) ? lower_[d] : std::clamp(x[d], lower_[d], upper_[d]);
    }

    bool operator==(const SearchSpace&) const = default;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

}  // namespace batcoupler
