// Copyright 2026 The medop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "medop/app/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "medop/app/report.hpp"
#include "medop/evolution.hpp"
#include "medop/oracles.hpp"
#include "medop/scenario.hpp"

namespace medop::app {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

struct ScenarioSource {
    std::string scenario_file;
    std::string instance;
    std::uint64_t instance_seed = 1;
    bool closed = false;

    void attach(CLI::App& cmd) {
        auto* file = cmd.add_option("--scenario", scenario_file, "Scenario JSON file");
        auto* inst = cmd.add_option("--instance", instance, "Builtin instance: cross or grid");
        file->excludes(inst);
        cmd.add_option("--instance-seed", instance_seed, "Layout seed of the builtin instance")->capture_default_str();
        cmd.add_flag("--closed", closed, "Builtin instance returns to its start");
    }

    [[nodiscard]] bool given() const { return !scenario_file.empty() || !instance.empty(); }

    [[nodiscard]] Scenario load() const {
        if (!scenario_file.empty()) return load_scenario_file(scenario_file);
        const auto kind = parse_instance_kind(instance);
        if (!kind) throw UsageError("unknown instance '" + instance + "' (expected cross or grid)");
        return generate_instance(*kind, instance_seed, closed);
    }
};

void print_fitness(std::ostream& out, const Fitness& f) {
    out << fmt::format("reward {:.17g}\nexposure {:.17g}\nlength {:.17g}\n", f.reward, f.exposure, f.length);
}

int cmd_solve(const ScenarioSource& src, SolverParams params, std::optional<double> t_max,
              std::optional<double> rho_min, std::optional<double> rho_max, std::size_t threads,
              const std::string& out_dir, bool plot, std::size_t plot_index, std::ostream& out) {
    if (!src.given()) throw UsageError("solve needs --scenario or --instance");
    Scenario scenario = src.load();
    if (t_max) scenario.t_max = *t_max;
    if (rho_min) scenario.rho_min = *rho_min;
    if (rho_max) scenario.rho_max = *rho_max;
    if (params.single_objective) scenario.field = scenario.field.without_nodes();
    validate(scenario);
    validate(params);

    const auto t0 = std::chrono::steady_clock::now();
    EvolveOptions options;
    options.threads = threads;
    const EvolveResult result = evolve(scenario, params, options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const RunReport report = make_report(scenario, params, result, seconds);
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_text(dir / "front.csv", front_csv(report.front));
    write_text(dir / "report.json", to_json(report));
    if (plot) {
        if (plot_index >= report.front.size()) throw std::out_of_range("plot index out of range");
        const auto& sol = report.front[plot_index];
        write_text(dir / "plot.svg", render_svg(scenario, from_stops(sol.tour, scenario), sol.fitness));
    }

    out << fmt::format("front: {} solutions in {:.2f} s\n", report.front.size(), seconds);
    if (!report.front.empty()) {
        const auto ex = extremes(result.front);
        out << fmt::format("reward {:.4g} .. {:.4g}\nexposure {:.6g} .. {:.6g}\nlength {:.5g} .. {:.5g}\n",
                           ex.reward.min, ex.reward.max, ex.exposure.min, ex.exposure.max, ex.length.min,
                           ex.length.max);
    }
    out << "wrote " << (dir / "front.csv").string() << ", " << (dir / "report.json").string() << "\n";
    return 0;
}

int cmd_evaluate(const ScenarioSource& src, const std::string& tour_file, const std::string& report_file,
                 std::size_t index, std::optional<double> step, std::ostream& out) {
    Scenario scenario;
    std::vector<TourStop> stops;
    double exposure_step = kDefaultExposureStep;
    if (!report_file.empty()) {
        if (src.given() || !tour_file.empty()) throw UsageError("--report cannot be combined with --scenario/--tour");
        const RunReport report = read_report(report_file);
        if (index >= report.front.size()) throw std::out_of_range("index out of range");
        scenario = report.scenario;
        stops = report.front[index].tour;
        exposure_step = report.params.exposure_step;
    } else {
        if (!src.given() || tour_file.empty()) throw UsageError("evaluate needs --scenario/--instance and --tour");
        scenario = src.load();
        stops = stops_from_json(read_text(tour_file));
    }
    if (step) exposure_step = *step;

    const Tour tour = from_stops(stops, scenario);
    const Fitness f = evaluate(tour, scenario, exposure_step);
    print_fitness(out, f);
    const bool feasible = f.length <= scenario.t_max;
    out << (feasible ? "FEASIBLE" : "INFEASIBLE") << "\n";
    return feasible ? 0 : 1;
}

int cmd_oracle(const std::vector<std::string>& checks, std::size_t n, std::uint64_t seed, std::ostream& out) {
    const auto names = checks.empty() ? oracle::check_names() : checks;
    bool all = true;
    for (const auto& name : names) {
        const auto r = oracle::run_check(name, {n, seed});
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        all = all && r.passed;
    }
    return all ? 0 : 1;
}

int cmd_plot(const std::string& report_file, std::size_t index, const std::string& out_file, std::ostream& out) {
    const RunReport report = read_report(report_file);
    if (index >= report.front.size()) {
        throw std::out_of_range(fmt::format("index {} out of range (front has {})", index, report.front.size()));
    }
    const auto& sol = report.front[index];
    write_text(out_file, render_svg(report.scenario, from_stops(sol.tour, report.scenario), sol.fitness));
    out << "wrote " << out_file << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimal-exposure Dubins orienteering solver", "medop"};
    app.require_subcommand(1);

    ScenarioSource solve_src;
    SolverParams params;
    std::optional<double> t_max, rho_min, rho_max;
    std::size_t threads = 1;
    std::string out_dir = ".";
    bool plot = false;
    std::size_t plot_index = 0;
    std::string selection = std::string(to_string(params.selection));

    auto* solve = app.add_subcommand("solve", "Evolve a reward/exposure front");
    solve_src.attach(*solve);
    solve->add_option("--seed", params.seed, "Solver seed")->capture_default_str();
    solve->add_option("--t-max", t_max, "Override the length budget");
    solve->add_option("--rho-min", rho_min, "Override the minimum turning radius");
    solve->add_option("--rho-max", rho_max, "Override the maximum turning radius");
    solve->add_option("--population", params.population_size)->capture_default_str();
    solve->add_option("--generations", params.generations)->capture_default_str();
    solve->add_option("--crossover-prob", params.crossover_prob)->capture_default_str();
    solve->add_option("--mutation-prob-individual", params.mutation_prob_individual)->capture_default_str();
    solve->add_option("--mutation-prob-gene", params.mutation_prob_gene)->capture_default_str();
    solve->add_option("--kappa", params.von_mises_kappa, "Von Mises concentration")->capture_default_str();
    solve->add_option("--selection", selection, "reference-point or crowding-distance")
        ->check(CLI::IsMember({"reference-point", "crowding-distance"}))
        ->capture_default_str();
    solve->add_flag("--single-objective", params.single_objective, "Maximize reward only; ignores sensors");
    solve->add_flag("--alignment", params.alignment_mutation, "Enable heading alignment mutation");
    solve->add_option("--exposure-step", params.exposure_step)->capture_default_str();
    solve->add_option("--threads", threads, "Evaluation threads")->capture_default_str();
    solve->add_option("--out", out_dir, "Output directory")->capture_default_str();
    solve->add_flag("--plot", plot, "Also write plot.svg");
    solve->add_option("--plot-index", plot_index, "Front index for --plot")->capture_default_str();

    ScenarioSource eval_src;
    std::string tour_file, eval_report;
    std::size_t eval_index = 0;
    std::optional<double> eval_step;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a stored tour");
    eval_src.attach(*evaluate_cmd);
    evaluate_cmd->add_option("--tour", tour_file, "Tour JSON: [{id, heading, radius}, ...]");
    evaluate_cmd->add_option("--report", eval_report, "Run report to read the tour from");
    evaluate_cmd->add_option("--index", eval_index, "Front index within --report")->capture_default_str();
    evaluate_cmd->add_option("--exposure-step", eval_step, "Quadrature step (default: report's or 0.05)");

    std::vector<std::string> checks;
    std::size_t oracle_n = 0;
    std::uint64_t oracle_seed = 12345;
    auto* oracle_cmd = app.add_subcommand("oracle", "Cross-check the solver against reference computations");
    oracle_cmd->add_option("--check", checks, "Check name (repeatable; default all)")
        ->check(CLI::IsMember(oracle::check_names()));
    oracle_cmd->add_option("--n", oracle_n, "Sample size (0: default)")->capture_default_str();
    oracle_cmd->add_option("--seed", oracle_seed)->capture_default_str();

    std::string plot_report, plot_out = "plot.svg";
    std::size_t plot_idx = 0;
    auto* plot_cmd = app.add_subcommand("plot", "Render one front solution as SVG");
    plot_cmd->add_option("--report", plot_report, "Run report")->required();
    plot_cmd->add_option("--index", plot_idx, "Front index")->capture_default_str();
    plot_cmd->add_option("--out", plot_out, "SVG file")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return 2;
    }

    try {
        if (solve->parsed()) {
            params.selection = *parse_selection_method(selection);
            return cmd_solve(solve_src, params, t_max, rho_min, rho_max, threads, out_dir, plot, plot_index, out);
        }
        if (evaluate_cmd->parsed()) return cmd_evaluate(eval_src, tour_file, eval_report, eval_index, eval_step, out);
        if (oracle_cmd->parsed()) return cmd_oracle(checks, oracle_n, oracle_seed, out);
        if (plot_cmd->parsed()) return cmd_plot(plot_report, plot_idx, plot_out, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ScenarioError& e) {
        err << "error: " << e.field() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace medop::app
