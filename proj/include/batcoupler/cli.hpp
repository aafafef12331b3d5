#pragma once

// Command-line front end: `analyze`, `design` and `bench` subcommands.
// Kept header-only so tests drive it in-process through run_cli().

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bat.hpp"
#include "bench.hpp"
#include "coupler_objective.hpp"
#include "errors.hpp"
#include "optimizer.hpp"
#include "report.hpp"
#include "rf_model.hpp"

namespace batcoupler::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kBudgetExhausted = 3 };

/// Everything a `design` or `bench` invocation can set.
struct RunConfig {
    BatParams bat;
    DesignSpec design;
    std::uint64_t seed = 1;
    std::size_t runs = 1;
    std::string out = "bat_out";
    std::string format = "csv";
};

/// Parses "lo:hi,lo:hi,...". A single pair is repeated across all dims.
inline SearchSpace parse_bounds(std::string_view text, std::size_t dims) {
    std::vector<double> lo, hi;
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        batcoupler::detail::require(colon != std::string::npos,
                                    "bounds entry '" + item + "' is not lo:hi");
        try {
            std::size_t used = 0;
            const std::string a = item.substr(0, colon), b = item.substr(colon + 1);
            lo.push_back(std::stod(a, &used));
            batcoupler::detail::require(used == a.size(), "bad number in bounds '" + item + "'");
            hi.push_back(std::stod(b, &used));
            batcoupler::detail::require(used == b.size(), "bad number in bounds '" + item + "'");
        } catch (const std::logic_error&) {
            throw InvalidInput("bad number in bounds '" + item + "'");
        }
    }
    if (lo.size() == 1 && dims > 1) {
        lo.assign(dims, lo.front());
        hi.assign(dims, hi.front());
    }
    batcoupler::detail::require(lo.size() == dims, "bounds give " + std::to_string(lo.size()) +
                                                       " ranges, expected " + std::to_string(dims));
    return SearchSpace(std::move(lo), std::move(hi));
}

namespace detail {

using batcoupler::detail::require;

/// Left-aligned fixed-width cells; the last cell is not padded.
inline void print_row(std::ostream& out, const std::vector<std::string>& cells, int width = 12) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i + 1 < cells.size())
            out << std::left << std::setw(width) << cells[i];
        else
            out << cells[i];
    }
    out << '\n';
}

inline std::string fmt_iter(const std::optional<std::size_t>& it) {
    return it ? std::to_string(*it) : std::string("-");
}

/// Writes every run's convergence file and the aggregate summary into cfg.out.
template <class WriteCsv>
void write_outputs(const RunConfig& cfg, const std::vector<RunResult>& results,
                   nlohmann::json summary, WriteCsv&& write_csv) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw InvalidInput("cannot create output directory '" + cfg.out + "'");

    auto open = [](const fs::path& p) {
        std::ofstream f(p, std::ios::binary | std::ios::trunc);
        if (!f) throw InvalidInput("cannot write '" + p.string() + "'");
        return f;
    };
    for (const auto& r : results) {
        const std::string stem = "convergence_seed" + std::to_string(r.seed);
        if (cfg.format == "json") {
            auto f = open(dir / (stem + ".json"));
            f << history_json(r).dump(2) << '\n';
        } else {
            auto f = open(dir / (stem + ".csv"));
            write_csv(f, r);
        }
    }
    auto f = open(dir / "summary.json");
    f << summary.dump(2) << '\n';
    if (!f) throw InvalidInput("failed writing summary in '" + cfg.out + "'");
}

inline nlohmann::json params_json(const RunConfig& cfg) {
    const BatParams& p = cfg.bat;
    return {{"pop-size", p.pop_size},
            {"fmin", p.f_min},
            {"fmax", p.f_max},
            {"alpha", p.alpha},
            {"gamma", p.gamma},
            {"r0", p.r0},
            {"a0", p.a0},
            {"replace-count", p.replace_count},
            {"max-iter", p.max_iter},
            {"tol", p.tol},
            {"seed", cfg.seed},
            {"runs", cfg.runs}};
}

inline void check_common(const RunConfig& cfg) {
    cfg.bat.validate();
    require(cfg.runs >= 1, "runs must be at least 1");
    require(cfg.format == "csv" || cfg.format == "json", "format must be csv or json");
}

inline int cmd_analyze(const CouplerGeometry& g, ImpedanceModel model, std::ostream& out) {
    const CouplerAnalysis a = analyze(g, model);
    const std::vector<std::pair<const char*, double>> cols{
        {"W", g.w},       {"S", g.s},      {"H", g.h_sub},  {"whse", a.whse},
        {"whso", a.whso}, {"Z_oe", a.zoe}, {"Z_oo", a.zoo}, {"C", a.coupling}};
    std::vector<std::string> names, values;
    for (const auto& [name, v] : cols) {
        names.emplace_back(name);
        values.push_back(format_sig6(v));
    }
    print_row(out, names);
    print_row(out, values);
    return kOk;
}

inline int cmd_design(const RunConfig& cfg, std::ostream& out) {
    check_common(cfg);
    const CouplerObjective objective(cfg.design);

    std::vector<RunResult> results;
    for (std::size_t i = 0; i < cfg.runs; ++i)
        results.push_back(batcoupler::run(objective, cfg.bat, cfg.seed + i));

    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : results) runs.push_back(run_json(r, &cfg.design));
    const DesignSpec& spec = cfg.design;
    nlohmann::json summary{
        {"command", "design"},
        {"params", params_json(cfg)},
        {"design",
         {{"target-coupling", spec.target_coupling},
          {"eps-r", spec.eps_r},
          {"z-min", spec.z_min},
          {"z-max", spec.z_max},
          {"penalty-weight", spec.penalty_weight},
          {"z0-model", std::string(to_string(spec.model))},
          {"bounds", {{"lower", spec.bounds.lower()}, {"upper", spec.bounds.upper()}}}}},
        {"runs", std::move(runs)}};
    write_outputs(cfg, results, std::move(summary),
                  [&](std::ostream& os, const RunResult& r) { write_design_csv(os, r, spec); });

    print_row(out, {"seed", "W", "S", "H", "whse", "whso", "Z_oe", "Z_oo", "C", "fitness", "iters",
                    "it@1e-2", "it@1e-6", "status"});
    bool all_converged = true;
    for (const auto& r : results) {
        all_converged = all_converged && r.terminated == Termination::ToleranceReached;
        std::vector<std::string> row{std::to_string(r.seed)};
        for (double x : r.best_position) row.push_back(format_sig6(x));
        if (const auto a = try_analyze(r.best_position, spec)) {
            for (double v : {a->whse, a->whso, a->zoe, a->zoo}) row.push_back(format_sig6(v));
            std::ostringstream c;
            c << std::fixed << std::setprecision(6) << a->coupling;
            row.push_back(c.str());
        } else {
            row.insert(row.end(), 5, "-");
        }
        row.push_back(format_sig6(r.best_fitness));
        row.push_back(std::to_string(r.iterations_used));
        row.push_back(fmt_iter(r.iterations_to(kReportThresholds[0])));
        row.push_back(fmt_iter(r.iterations_to(kReportThresholds[1])));
        row.emplace_back(to_string(r.terminated));
        print_row(out, row);
    }
    return all_converged ? kOk : kBudgetExhausted;
}

inline int cmd_bench(const RunConfig& cfg, const bench::BenchFunction& fn, std::ostream& out) {
    check_common(cfg);
    std::vector<RunResult> results;
    for (std::size_t i = 0; i < cfg.runs; ++i)
        results.push_back(batcoupler::run(fn, cfg.bat, cfg.seed + i));

    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : results) runs.push_back(run_json(r));
    nlohmann::json summary{
        {"command", "bench"},
        {"function", fn.name},
        {"dim", fn.dims},
        {"params", params_json(cfg)},
        {"bounds", {{"lower", fn.default_bounds.lower()}, {"upper", fn.default_bounds.upper()}}},
        {"runs", std::move(runs)}};
    write_outputs(cfg, results, std::move(summary),
                  [&](std::ostream& os, const RunResult& r) { write_bench_csv(os, r, fn.dims); });

    print_row(out,
              {"seed", "best_fitness", "iters", "it@1e-2", "it@1e-6", "status", "best_position"},
              18);
    bool all_converged = true;
    for (const auto& r : results) {
        all_converged = all_converged && r.terminated == Termination::ToleranceReached;
        std::string position;
        for (std::size_t d = 0; d < r.best_position.size(); ++d)
            position += (d ? " " : "") + format_sig6(r.best_position[d]);
        print_row(
            out,
            {std::to_string(r.seed), format_sig6(r.best_fitness), std::to_string(r.iterations_used),
             fmt_iter(r.iterations_to(kReportThresholds[0])),
             fmt_iter(r.iterations_to(kReportThresholds[1])), std::string(to_string(r.terminated)),
             position},
            18);
    }
    return all_converged ? kOk : kBudgetExhausted;
}

/// Splices `--config file.json` entries in front of the explicit flags so
/// that flags given on the command line win (options take the last value).
inline std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> expanded;
    std::vector<std::string> from_file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config") {
            require(i + 1 < args.size(), "--config needs a file argument");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            expanded.push_back(args[i]);
            continue;
        }
        std::ifstream f(path);
        require(static_cast<bool>(f), "cannot read config file '" + path + "'");
        nlohmann::json cfg;
        try {
            cfg = nlohmann::json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInput("config file '" + path + "': " + e.what());
        }
        require(cfg.is_object(), "config file '" + path + "' must hold a JSON object");
        for (const auto& [key, value] : cfg.items()) {
            from_file.push_back("--" + key);
            from_file.push_back(value.is_string() ? value.get<std::string>() : value.dump());
        }
    }
    if (!from_file.empty() && !expanded.empty())
        expanded.insert(expanded.begin() + 1, from_file.begin(), from_file.end());
    return expanded;
}

}  // namespace detail

/// Entry point. `args` excludes the program name. Returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bat-algorithm coupled-microstrip designer"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    // analyze
    CouplerGeometry geom{0, 0, 0, 3.9};
    std::string analyze_model = "wheeler";
    auto* analyze_cmd = app.add_subcommand("analyze", "Analyse one coupled-line geometry");
    analyze_cmd->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
    analyze_cmd->add_option("--w", geom.w, "Strip width W")->required();
    analyze_cmd->add_option("--s", geom.s, "Strip spacing S")->required();
    analyze_cmd->add_option("--h", geom.h_sub, "Substrate height H")->required();
    analyze_cmd->add_option("--eps-r", geom.eps_r, "Relative permittivity")->capture_default_str();
    analyze_cmd->add_option("--z0-model", analyze_model, "wheeler | hammerstad")
        ->capture_default_str();

    RunConfig cfg;
    std::string bounds_text;
    std::string z0_model = "wheeler";
    std::string config_path;
    auto add_common = [&](CLI::App* cmd) {
        BatParams& p = cfg.bat;
        cmd->add_option("--pop-size", p.pop_size)->capture_default_str();
        cmd->add_option("--fmin", p.f_min)->capture_default_str();
        cmd->add_option("--fmax", p.f_max)->capture_default_str();
        cmd->add_option("--alpha", p.alpha)->capture_default_str();
        cmd->add_option("--gamma", p.gamma)->capture_default_str();
        cmd->add_option("--r0", p.r0)->capture_default_str();
        cmd->add_option("--a0", p.a0)->capture_default_str();
        cmd->add_option("--replace-count", p.replace_count)->capture_default_str();
        cmd->add_option("--max-iter", p.max_iter)->capture_default_str();
        cmd->add_option("--tol", p.tol)->capture_default_str();
        cmd->add_option("--seed", cfg.seed, "Base seed; run i uses seed + i")
            ->capture_default_str();
        cmd->add_option("--runs", cfg.runs)->capture_default_str();
        cmd->add_option("--out", cfg.out, "Output directory")->capture_default_str();
        cmd->add_option("--format", cfg.format, "Convergence file format: csv | json")
            ->capture_default_str();
        cmd->add_option("--bounds", bounds_text, "lo:hi per dimension, comma separated");
        cmd->add_option("--config", config_path, "JSON file with flag-named fields");
    };

    auto* design_cmd = app.add_subcommand("design", "Optimise (W, S, H) for a target coupling");
    add_common(design_cmd);
    DesignSpec& spec = cfg.design;
    design_cmd->add_option("--target-coupling", spec.target_coupling)->capture_default_str();
    design_cmd->add_option("--eps-r", spec.eps_r)->capture_default_str();
    design_cmd->add_option("--z-min", spec.z_min)->capture_default_str();
    design_cmd->add_option("--z-max", spec.z_max)->capture_default_str();
    design_cmd->add_option("--penalty-weight", spec.penalty_weight)->capture_default_str();
    design_cmd->add_option("--z0-model", z0_model, "wheeler | hammerstad")->capture_default_str();

    std::string function_name;
    std::size_t dim = 2;
    auto* bench_cmd = app.add_subcommand("bench", "Run the optimizer on a test function");
    add_common(bench_cmd);
    bench_cmd->add_option("--function", function_name, "sphere | rosenbrock | rastrigin")
        ->required();
    bench_cmd->add_option("--dim", dim)->capture_default_str();

    try {
        std::vector<std::string> reversed = detail::expand_config(args);
        std::reverse(reversed.begin(), reversed.end());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInvalidInput;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    try {
        if (*analyze_cmd) {
            const auto model = parse_impedance_model(analyze_model);
            batcoupler::detail::require(model.has_value(),
                                        "unknown z0 model '" + analyze_model + "'");
            return detail::cmd_analyze(geom, *model, out);
        }
        if (*design_cmd) {
            const auto model = parse_impedance_model(z0_model);
            batcoupler::detail::require(model.has_value(), "unknown z0 model '" + z0_model + "'");
            spec.model = *model;
            if (!bounds_text.empty()) spec.bounds = parse_bounds(bounds_text, 3);
            return detail::cmd_design(cfg, out);
        }
        bench::BenchFunction fn = bench::make(function_name, dim);
        if (!bounds_text.empty()) fn.default_bounds = parse_bounds(bounds_text, dim);
        return detail::cmd_bench(cfg, fn, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
}

}  // namespace batcoupler::cli
