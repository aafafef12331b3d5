#pragma once

// Quasi-static coupled-microstrip model: geometry -> equivalent single-line
// shape ratios (even/odd) -> mode impedances -> coupling coefficient.
// Only W/H and S/H enter, so any consistent length unit works.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace batcoupler {

/// Closed form used to turn a shape ratio w/h into a single-line impedance.
enum class ImpedanceModel {
    wheeler,     ///< Wheeler (1977), one expression for all w/h
    hammerstad,  ///< two-branch form split at w/h = 1
};

inline std::string_view to_string(ImpedanceModel m) {
    return m == ImpedanceModel::wheeler ? "wheeler" : "hammerstad";
}

inline std::optional<ImpedanceModel> parse_impedance_model(std::string_view name) {
    if (name == "wheeler") return ImpedanceModel::wheeler;
    if (name == "hammerstad") return ImpedanceModel::hammerstad;
    return std::nullopt;
}

struct CouplerGeometry {
    double w = 0.0;      ///< strip width
    double s = 0.0;      ///< gap between strips
    double h_sub = 0.0;  ///< substrate thickness
    double eps_r = 0.0;  ///< relative permittivity, (1, 6)

    /// Throws InvalidInput unless w, s, h_sub > 0 and 1 < eps_r < 6.
    void validate() const;
};

struct CouplerAnalysis {
    double w_over_h = 0.0;
    double s_over_h = 0.0;
    double g = 0.0;
    double h_param = 0.0;
    double whse = 0.0;
    double whso = 0.0;
    double zoe = 0.0;
    double zoo = 0.0;
    double coupling = 0.0;
};

struct ModeImpedances {
    double zoe = 0.0;
    double zoo = 0.0;
};

namespace detail {

inline void require_eps_r(double eps_r) {
    if (!(eps_r > 1.0 && eps_r < 6.0))
        throw InvalidInput("eps_r = " + std::to_string(eps_r) +
                           " outside the model's validity range (1, 6)");
}

inline void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw InvalidInput(std::string(name) + " must be positive and finite, got " +
                           std::to_string(v));
}

inline double checked_acosh(double arg, const char* what) {
    if (!(arg >= 1.0) || !std::isfinite(arg))
        throw DomainError(std::string(what) + ": acosh argument " + std::to_string(arg) +
                          " is not in [1, inf)");
    return std::acosh(arg);
}

/// Odd-mode ratio given g - 1 directly; g - 1 is cancellation-prone for small gaps.
inline double whso_with(double g_minus_1, double g, double h, double w_over_h, double s_over_h,
                        double eps_r) {
    using std::numbers::pi;
    if (!(g_minus_1 > 0.0))
        throw DomainError("whso: g = 1 (zero spacing) makes the odd-mode ratio singular");
    const double first = checked_acosh((2.0 * h - g - 1.0) / g_minus_1, "whso");
    const double second = checked_acosh(1.0 + 2.0 * w_over_h / s_over_h, "whso");
    return 2.0 / pi * first + 4.0 / (pi * (1.0 + eps_r / 2.0)) * second;
}

inline double z0_wheeler(double ratio, double eps_r) {
    using std::numbers::pi;
    const double k = 4.0 / ratio;  // 4h/w
    const double x = (14.0 + 8.0 / eps_r) / 11.0 * k;
    const double root = std::sqrt(x * x + (1.0 + 1.0 / eps_r) / 2.0 * pi * pi);
    return 42.4 / std::sqrt(eps_r + 1.0) * std::log(1.0 + k * (x + root));
}

inline double z0_hammerstad(double ratio, double eps_r) {
    using std::numbers::pi;
    const double a = (eps_r + 1.0) / 2.0;
    const double b = (eps_r - 1.0) / 2.0;
    const double fill = 1.0 / std::sqrt(1.0 + 12.0 / ratio);
    if (ratio >= 1.0) {
        const double eps_eff = a + b * fill;
        return 120.0 * pi /
               (std::sqrt(eps_eff) * (ratio + 1.393 + 0.667 * std::log(ratio + 1.444)));
    }
    const double eps_eff = a + b * (fill + 0.04 * (1.0 - ratio) * (1.0 - ratio));
    return 60.0 / std::sqrt(eps_eff) * std::log(8.0 / ratio + ratio / 4.0);
}

}  // namespace detail

inline void CouplerGeometry::validate() const {
    detail::require_positive(w, "w");
    detail::require_positive(s, "s");
    detail::require_positive(h_sub, "h_sub");
    detail::require_eps_r(eps_r);
}

/// g = cosh(pi/2 * S/H).
inline double g_param(double s_over_h) {
    detail::require_positive(s_over_h, "s_over_h");
    return std::cosh(0.5 * std::numbers::pi * s_over_h);
}

/// h = cosh(pi * W/H + pi/2 * S/H).
inline double h_param(double w_over_h, double s_over_h) {
    detail::require_positive(w_over_h, "w_over_h");
    detail::require_positive(s_over_h, "s_over_h");
    const double h = std::cosh(std::numbers::pi * (w_over_h + 0.5 * s_over_h));
    if (!std::isfinite(h)) throw DomainError("h_param: shape ratios too large to evaluate");
    return h;
}

/// Even-mode equivalent single-line shape ratio.
inline double whse(double g, double h) {
    return 2.0 / std::numbers::pi * detail::checked_acosh((2.0 * h - g + 1.0) / (g + 1.0), "whse");
}

/// Odd-mode equivalent single-line shape ratio.
inline double whso(double g, double h, double w_over_h, double s_over_h, double eps_r) {
    detail::require_positive(w_over_h, "w_over_h");
    detail::require_positive(s_over_h, "s_over_h");
    detail::require_eps_r(eps_r);
    return detail::whso_with(g - 1.0, g, h, w_over_h, s_over_h, eps_r);
}

/// Characteristic impedance (ohms) of one microstrip with shape ratio w/h.
inline double z0_single(double ratio, double eps_r,
                        ImpedanceModel model = ImpedanceModel::wheeler) {
    detail::require_positive(ratio, "ratio");
    if (!(eps_r > 1.0) || !std::isfinite(eps_r))
        throw InvalidInput("z0_single: eps_r must exceed 1");
    return model == ImpedanceModel::wheeler ? detail::z0_wheeler(ratio, eps_r)
                                            : detail::z0_hammerstad(ratio, eps_r);
}

/// C = (Zoe - Zoo) / (Zoe + Zoo).
inline double coupling(double zoe, double zoo) {
    detail::require_positive(zoe, "zoe");
    detail::require_positive(zoo, "zoo");
    return (zoe - zoo) / (zoe + zoo);
}

/// Full chain for one geometry.
inline CouplerAnalysis analyze(const CouplerGeometry& geometry,
                               ImpedanceModel model = ImpedanceModel::wheeler) {
    geometry.validate();
    CouplerAnalysis a;
    a.w_over_h = geometry.w / geometry.h_sub;
    a.s_over_h = geometry.s / geometry.h_sub;
    a.g = g_param(a.s_over_h);
    a.h_param = h_param(a.w_over_h, a.s_over_h);
    a.whse = whse(a.g, a.h_param);
    // cosh(x) - 1 = 2 sinh^2(x / 2)
    const double half = 0.25 * std::numbers::pi * a.s_over_h;
    const double g_minus_1 = 2.0 * std::sinh(half) * std::sinh(half);
    a.whso = detail::whso_with(g_minus_1, a.g, a.h_param, a.w_over_h, a.s_over_h, geometry.eps_r);
    a.zoe = 2.0 * z0_single(a.whse, geometry.eps_r, model);
    a.zoo = 2.0 * z0_single(a.whso, geometry.eps_r, model);
    a.coupling = coupling(a.zoe, a.zoo);
    return a;
}

/// Zoe = 2 Z0(whse), Zoo = 2 Z0(whso).
inline ModeImpedances even_odd_impedances(const CouplerGeometry& geometry,
                                          ImpedanceModel model = ImpedanceModel::wheeler) {
    const CouplerAnalysis a = analyze(geometry, model);
    return {a.zoe, a.zoo};
}

}  // namespace batcoupler
