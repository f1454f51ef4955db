/*
Copyright 2026 the cranidnc authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "cli_app.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cranidnc/clique.hpp"
#include "cranidnc/config_io.hpp"
#include "cranidnc/fixtures.hpp"
#include "cranidnc/oracle.hpp"
#include "cranidnc/sched.hpp"
#include "cranidnc/svg_plot.hpp"
#include "cranidnc/sweep.hpp"

namespace cranidnc {

namespace {

int cmd_solve(const std::string& config_path, const std::string& scheduler,
              std::optional<std::uint64_t> seed, bool greedy, std::optional<std::size_t> budget,
              std::ostream& out) {
    const ParsedConfig parsed = load_config_file(config_path);
    const Instance instance = make_instance(parsed, seed);

    JointOptions opts;
    opts.use_exact = !greedy;
    opts.node_budget = budget;
    const TransmissionPlan plan = run_scheduler(scheduler, instance, opts);
    const EvalMetrics metrics = evaluate(plan, instance); // throws on invariant violation

    out << plan.to_string();
    out << "validated: sum_rate=" << metrics.sum_rate << " per_user_hz=" << metrics.per_user_hz
        << " delivered_bits=" << metrics.delivered_bits << "\n";
    return plan.has_flag("budget-degraded") ? 3 : 0;
}

int cmd_oracle(const std::string& config_path, std::optional<std::uint64_t> seed,
               std::optional<int> grid_points, std::ostream& out) {
    const ParsedConfig parsed = load_config_file(config_path);
    const Instance instance = make_instance(parsed, seed);
    const TransmissionPlan plan =
        brute_force_best_plan(instance, grid_points.value_or(instance.config.power_grid_points));
    evaluate(plan, instance);
    out << plan.to_string();
    return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_path, int threads,
              bool timings, std::ostream& out) {
    const SweepSpec spec = load_sweep_file(spec_path);
    const SweepOutcome outcome = run_sweep(spec, threads, timings);
    std::ofstream file(out_path);
    if (!file) throw ValidationError("cannot write CSV to '" + out_path + "'");
    write_result_csv(file, outcome.rows);
    out << "wrote " << outcome.rows.size() << " rows to " << out_path << "\n";
    return outcome.any_flagged ? 3 : 0;
}

int cmd_plot(const std::string& csv_path, const std::string& out_path, std::ostream& out) {
    std::ifstream in(csv_path);
    if (!in) throw ValidationError("cannot open CSV '" + csv_path + "'");
    const std::vector<ResultRow> rows = read_result_csv(in);
    const std::string svg = render_plot_svg(rows);
    std::ofstream file(out_path);
    if (!file) throw ValidationError("cannot write SVG to '" + out_path + "'");
    file << svg;
    out << "wrote " << out_path << "\n";
    return 0;
}

int cmd_demo(std::ostream& out) {
    const Instance instance = three_user_demo_instance();
    out << "walkthrough: 3 users, 3 files, 2 RRHs, 1 RRB, every capacity 1 bit/s/Hz\n";
    for (int u = 0; u < 3; ++u)
        out << "  u" << u << " wants " << instance.side_info.wants[u].to_string('f') << ", has "
            << instance.side_info.has[u].to_string('f') << "\n";

    const std::vector<Combination> combos =
        enumerate_combinations(instance.side_info, 0, instance.config.max_combinations);
    out << "\ndecodable combinations: " << combos.size() << "\n";
    for (std::size_t i = 0; i < combos.size(); ++i)
        out << "  c" << i << ": " << combos[i].to_string() << "\n";

    const PowerSolver solver = make_grid_power_solver(instance);
    const std::vector<ScheduleVertex> vertices =
        build_power_subgraph(instance, 0, combos, solver);
    std::vector<const ScheduleVertex*> maximal;
    for (const ScheduleVertex& v : vertices)
        if (assignment_is_maximal(v, combos, instance.config.num_rrhs)) maximal.push_back(&v);
    out << "\nrrb0 subgraph: " << vertices.size() << " vertices, distinct maximal schedules: "
        << maximal.size() << "\n";
    for (const ScheduleVertex* v : maximal) {
        out << "  ";
        std::string weight_terms;
        for (const auto& a : v->assignments) {
            out << "[rrh" << a.rrh << ": " << a.combo.to_string() << "] ";
            if (!weight_terms.empty()) weight_terms += " + ";
            weight_terms +=
                std::to_string(a.combo.tau.count()) + "*R(rrh" + std::to_string(a.rrh) + ")";
        }
        out << " w = " << weight_terms << " = " << v->weight << "\n";
    }

    TransmissionPlan plan = schedule_joint(instance);
    out << "\nwinning clique (" << plan.solver << " solver):\n" << plan.to_string();
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"IDNC-aware coordinated scheduling and power allocation for CRAN downlinks"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "schedule one instance and print the plan");
    std::string config_path, scheduler = "joint";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget;
    bool greedy = false, exact = false;
    solve->add_option("--config", config_path, "instance config (JSON)")->required();
    solve->add_option("--scheduler", scheduler, "one of: joint iterative classical_idnc rlnc max_power uncoded_joint")
        ->check(CLI::IsMember(scheduler_names()));
    solve->add_option("--seed", seed, "override the config rng_seed");
    solve->add_flag("--greedy", greedy, "use the greedy clique heuristic");
    solve->add_flag("--exact", exact, "use the exact clique solver (default)");
    solve->add_option("--node-budget", budget, "exact solver node budget");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force reference plan (small instances)");
    std::string o_config;
    std::optional<std::uint64_t> o_seed;
    std::optional<int> o_grid;
    oracle->add_option("--config", o_config, "instance config (JSON)")->required();
    oracle->add_option("--seed", o_seed, "override the config rng_seed");
    oracle->add_option("--grid-points", o_grid, "power grid resolution");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run an experiment sweep to CSV");
    std::string spec_path, sweep_out;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    bool timings = false;
    sweep->add_option("--spec", spec_path, "sweep spec (JSON)")->required();
    sweep->add_option("--out", sweep_out, "output CSV path")->required();
    sweep->add_option("--threads", threads, "worker threads");
    sweep->add_flag("--timings", timings,
                    "record wall-clock times (off by default; keeps the CSV reproducible)");

    // plot
    auto* plot = app.add_subcommand("plot", "render a sweep CSV as SVG");
    std::string csv_path, svg_path;
    plot->add_option("--csv", csv_path, "input CSV from sweep")->required();
    plot->add_option("--out", svg_path, "output SVG path")->required();

    // demo
    auto* demo = app.add_subcommand("demo", "walk through the three-user example");

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    std::string prog = "cranidnc";
    argv.push_back(prog.data());
    for (std::string& a : storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (solve->parsed()) {
            if (greedy && exact) {
                err << "usage error: --greedy and --exact are mutually exclusive\n";
                return 1;
            }
            return cmd_solve(config_path, scheduler, seed, greedy, budget, out);
        }
        if (oracle->parsed()) return cmd_oracle(o_config, o_seed, o_grid, out);
        if (sweep->parsed()) return cmd_sweep(spec_path, sweep_out, threads, timings, out);
        if (plot->parsed()) return cmd_plot(csv_path, svg_path, out);
        if (demo->parsed()) return cmd_demo(out);
    } catch (const BudgetError& e) {
        err << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

} // namespace cranidnc
