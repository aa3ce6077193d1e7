#pragma once

// minds-sim command line.
//
//   minds-sim validate-policy [--rate-up R] [--rate-down R] [--grid N]
//   minds-sim simulate --scenario PATH [--seed N] [--out DIR] [--plot]
//
// Exit codes: 0 success, 1 domain or validation failure, 2 usage error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "minds/calculus.hpp"
#include "minds/curve_io.hpp"
#include "minds/errors.hpp"
#include "minds/metaknowledge.hpp"
#include "minds/scenario_io.hpp"
#include "minds/simulator.hpp"

namespace minds::cli {

inline constexpr const char* kToolName = "minds-sim";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
    kSuccess = 0,
    kDomainFailure = 1,
    kUsageError = 2,
};

struct ValidatePolicyOptions {
    double rate_up = 0.3;
    double rate_down = 0.3;
    std::size_t grid = 1001;
};

struct SimulateOptions {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    bool plot = false;
};

inline int cmd_validate_policy(const ValidatePolicyOptions& opt, std::ostream& out) {
    const ValidationReport report = validate_policy(PolicyParams(opt.rate_up, opt.rate_down), opt.grid);
    for (Constraint c : kAllConstraints) {
        const auto hits = report.of(c);
        if (hits.empty()) {
            out << "PASS " << constraint_name(c) << '\n';
        } else {
            out << "FAIL " << constraint_name(c) << ": " << hits.size() << " violation(s), first at x="
                << detail::format_real(hits.front().witness) << " (" << hits.front().detail << ")\n";
        }
    }
    out << "grid points: " << report.grid_points << '\n';
    out << "temporal precedence gap: min " << detail::format_real(report.min_precedence_gap) << ", max "
        << detail::format_real(report.max_precedence_gap) << '\n';
    return report.ok() ? kSuccess : kDomainFailure;
}

inline int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    Scenario scenario;
    RunResult result;
    try {
        scenario = load_scenario(opt.scenario);
        if (opt.seed) scenario.seed = *opt.seed;
        result = run(scenario);
    } catch (const ScenarioError& e) {
        err << "invalid scenario: " << e.what() << '\n';
        return kDomainFailure;
    } catch (const EventReferenceError& e) {
        err << "event error: " << e.what() << '\n';
        return kDomainFailure;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return kDomainFailure;
    }

    const fs::path dir = opt.out_dir.empty() ? fs::path(".") : fs::path(opt.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        err << "cannot create output directory '" << dir.string() << "': " << ec.message() << '\n';
        return kDomainFailure;
    }

    std::vector<std::string> artifacts{"curve.csv", "store_final.csv"};
    auto write = [&](const std::string& name, auto&& body) {
        std::ofstream f(dir / name, std::ios::binary);
        body(f);
        if (!f) throw std::runtime_error("failed writing " + (dir / name).string());
    };
    try {
        write("curve.csv", [&](std::ostream& f) { write_curve_csv(f, result.curve); });
        write("store_final.csv", [&](std::ostream& f) { write_store_csv(f, result.final_store); });
        if (opt.plot) {
            write("curve.svg", [&](std::ostream& f) { write_curve_svg(f, result.curve); });
            artifacts.push_back("curve.svg");
        }
        nlohmann::ordered_json manifest;
        manifest["tool"] = kToolName;
        manifest["version"] = kToolVersion;
        manifest["scenario"] = opt.scenario;
        manifest["seed"] = scenario.seed;
        manifest["output_dir"] = dir.string();
        manifest["artifacts"] = artifacts;
        manifest["summary"] = {
            {"queries", result.summary.queries},
            {"events_fired", result.summary.events_fired},
            {"initial_distance", result.summary.initial_distance},
            {"final_distance", result.summary.final_distance},
        };
        write("manifest.json", [&](std::ostream& f) { f << manifest.dump(2) << '\n'; });
    } catch (const std::runtime_error& e) {
        err << e.what() << '\n';
        return kDomainFailure;
    }

    out << "queries: " << result.summary.queries << ", events fired: " << result.summary.events_fired << '\n';
    out << "distance: " << detail::format_real(result.summary.initial_distance) << " -> "
        << detail::format_real(result.summary.final_distance) << '\n';
    out << "wrote " << dir.string() << '\n';
    return kSuccess;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certainty-factor search ordering simulator", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    ValidatePolicyOptions vp;
    auto* validate = app.add_subcommand("validate-policy", "Check an update-function pair against the calculus constraints");
    validate->add_option("--rate-up", vp.rate_up, "Confirmation rate in [0,1]")->check(CLI::Range(0.0, 1.0));
    validate->add_option("--rate-down", vp.rate_down, "Contradiction rate in [0,1]")->check(CLI::Range(0.0, 1.0));
    validate->add_option("--grid", vp.grid, "Number of evenly spaced points in [0,1] (at least 2)")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));

    SimulateOptions sim;
    if (const char* env = std::getenv("MINDS_SIM_OUT")) sim.out_dir = env;
    auto* simulate = app.add_subcommand("simulate", "Run a scenario and write the learning curve");
    simulate->add_option("--scenario", sim.scenario, "Scenario JSON file")->required();
    simulate->add_option("--seed", sim.seed, "Override the scenario seed");
    simulate->add_option("--out", sim.out_dir, "Output directory (default: $MINDS_SIM_OUT or .)");
    simulate->add_flag("--plot", sim.plot, "Also write curve.svg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    if (validate->parsed()) return cmd_validate_policy(vp, out);
    return cmd_simulate(sim, out, err);
}

} // namespace minds::cli
