#pragma once

// Plot-ready outputs of optimisation runs: convergence CSV/JSON and a JSON summary.

#include <array>
#include <charconv>
#include <cstdio>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <system_error>
#include <vector>

#include "bat.hpp"
#include "coupler_objective.hpp"
#include "rf_model.hpp"

namespace batcoupler {

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

/// printf-style %.6g, for human-facing tables.
inline std::string format_sig6(double v) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.6g", v);
    return std::string(buf.data());
}

/// The error thresholds reported as iterations-to-threshold for every run.
inline constexpr std::array<double, 2> kReportThresholds{1e-2, 1e-6};

inline std::optional<CouplerAnalysis> try_analyze(std::span<const double> position,
                                                  const DesignSpec& spec) {
    try {
        return analyze(geometry_at(position, spec), spec.model);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline void write_design_csv(std::ostream& os, const RunResult& run, const DesignSpec& spec) {
    os << "iteration,best_fitness,w,s,h,zoe,zoo,coupling\n";
    for (const auto& rec : run.history) {
        os << rec.iteration << ',' << format_double(rec.best_fitness);
        for (double x : rec.best_position) os << ',' << format_double(x);
        if (const auto a = try_analyze(rec.best_position, spec))
            os << ',' << format_double(a->zoe) << ',' << format_double(a->zoo) << ','
               << format_double(a->coupling);
        else
            os << ",,,";
        os << '\n';
    }
}

inline void write_bench_csv(std::ostream& os, const RunResult& run, std::size_t dims) {
    os << "iteration,best_fitness";
    for (std::size_t d = 1; d <= dims; ++d) os << ",x" << d;
    os << '\n';
    for (const auto& rec : run.history) {
        os << rec.iteration << ',' << format_double(rec.best_fitness);
        for (double x : rec.best_position) os << ',' << format_double(x);
        os << '\n';
    }
}

inline nlohmann::json history_json(const RunResult& run) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : run.history)
        records.push_back({{"iteration", rec.iteration},
                           {"best_fitness", rec.best_fitness},
                           {"best_position", rec.best_position}});
    return records;
}

inline nlohmann::json analysis_json(const CouplerAnalysis& a, const DesignSpec& spec) {
    return {{"w_over_h", a.w_over_h},
            {"s_over_h", a.s_over_h},
            {"g", a.g},
            {"h", a.h_param},
            {"whse", a.whse},
            {"whso", a.whso},
            {"zoe", a.zoe},
            {"zoo", a.zoo},
            {"coupling", a.coupling},
            {"feasible", feasible(a, spec)}};
}

/// Per-run summary entry; `spec` adds the analysis of the best geometry.
inline nlohmann::json run_json(const RunResult& run, const DesignSpec* spec = nullptr) {
    nlohmann::json j{{"seed", run.seed},
                     {"terminated", std::string(to_string(run.terminated))},
                     {"iterations_used", run.iterations_used},
                     {"best_position", run.best_position},
                     {"best_fitness", run.best_fitness},
                     {"failed_evaluations", run.failed_evaluations}};
    nlohmann::json reached = nlohmann::json::object();
    for (double threshold : kReportThresholds) {
        const auto it = run.iterations_to(threshold);
        reached[format_double(threshold)] = it ? nlohmann::json(*it) : nlohmann::json(nullptr);
    }
    j["iterations_to"] = std::move(reached);
    if (spec) {
        if (const auto a = try_analyze(run.best_position, *spec))
            j["analysis"] = analysis_json(*a, *spec);
        else
            j["analysis"] = nullptr;
    }
    return j;
}

}  // namespace batcoupler
