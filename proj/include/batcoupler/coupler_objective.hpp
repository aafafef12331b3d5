#pragma once

#include <algorithm>
#include <cmath>
#include <exception>
#include <span>

#include "errors.hpp"
#include "rf_model.hpp"
#include "search_space.hpp"

namespace batcoupler {

/// Design target for a coupled pair. Positions are (W, S, H).
struct DesignSpec {
    double target_coupling = 0.2;
    double eps_r = 3.9;
    double z_min = 20.0;  ///< ohms, exclusive
    double z_max = 75.0;  ///< ohms, exclusive
    double penalty_weight = 10.0;
    SearchSpace bounds = SearchSpace::uniform(3, 0.5, 20.0);
    ImpedanceModel model = ImpedanceModel::wheeler;

    void validate() const {
        using detail::require;
        require(target_coupling > 0.0 && target_coupling < 1.0,
                "target_coupling must lie in (0, 1)");
        detail::require_eps_r(eps_r);
        require(z_min > 0.0 && z_min < z_max && std::isfinite(z_max),
                "impedance window needs 0 < z_min < z_max");
        require(penalty_weight > 0.0 && std::isfinite(penalty_weight),
                "penalty_weight must be positive");
        require(bounds.dims() == 3, "design bounds must cover (W, S, H)");
        require(bounds.lower(0) > 0.0 && bounds.lower(1) > 0.0 && bounds.lower(2) > 0.0,
                "design bounds must be strictly positive");
    }
};

/// Cost returned when the model cannot be evaluated at a position.
inline constexpr double kInfeasibleCost = 1e6;

/// Both mode impedances strictly inside (z_min, z_max).
inline bool feasible(const CouplerAnalysis& analysis, const DesignSpec& spec) {
    return spec.z_min < analysis.zoo && analysis.zoe < spec.z_max;
}

inline CouplerGeometry geometry_at(std::span<const double> position, const DesignSpec& spec) {
    detail::require(position.size() == 3, "coupler position must be (W, S, H)");
    return {position[0], position[1], position[2], spec.eps_r};
}

/// |C - target| plus linear penalties for Zoo below z_min and Zoe above z_max.
/// Total: model failures map to kInfeasibleCost.
inline double cost(std::span<const double> position, const DesignSpec& spec) {
    if (position.size() != 3) return kInfeasibleCost;
    try {
        const CouplerAnalysis a = analyze(geometry_at(position, spec), spec.model);
        const double violation =
            std::max(0.0, spec.z_min - a.zoo) + std::max(0.0, a.zoe - spec.z_max);
        const double c =
            std::abs(a.coupling - spec.target_coupling) + spec.penalty_weight * violation;
        return std::isfinite(c) ? c : kInfeasibleCost;
    } catch (const std::exception&) {
        return kInfeasibleCost;
    }
}

/// DesignSpec as an optimizer objective over (W, S, H).
class CouplerObjective {
public:
    explicit CouplerObjective(DesignSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

    const SearchSpace& space() const noexcept { return spec_.bounds; }
    std::size_t dims() const noexcept { return 3; }
    const DesignSpec& spec() const noexcept { return spec_; }

    double operator()(std::span<const double> position) const { return cost(position, spec_); }

private:
    DesignSpec spec_;
};

}  // namespace batcoupler
