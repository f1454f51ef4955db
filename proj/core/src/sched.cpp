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

#include "cranidnc/sched.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cranidnc {

bool TransmissionPlan::has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::string TransmissionPlan::to_string() const {
    std::ostringstream os;
    os << "scheduler: " << scheduler << "\n";
    if (!solver.empty()) os << "clique_solver: " << solver << "\n";
    os << "sum_rate: " << sum_rate << "\n";
    os << "per_user_hz: " << per_user_hz << "\n";
    os << "delivered_bits: " << delivered_bits << "\n";
    os << "flags:";
    if (flags.empty()) os << " -";
    for (const auto& f : flags) os << " " << f;
    os << "\ncells:\n";
    for (int b = 0; b < num_rrhs; ++b) {
        for (int z = 0; z < num_rrbs; ++z) {
            const PlanCell& c = cell(b, z);
            os << "  rrh" << b << " rrb" << z << ":";
            if (c.combo.tau.empty()) {
                os << " silent";
            } else {
                os << " files=" << (c.rlnc ? "RLNC(all)" : c.combo.kappa.to_string('f'))
                   << " users=" << c.combo.tau.to_string('u') << " rate=" << c.rate;
            }
            os << " power=" << c.power << "\n";
        }
    }
    os << "user_rrh:";
    for (std::size_t u = 0; u < user_rrh.size(); ++u) {
        os << " u" << u << "->";
        if (user_rrh[u] < 0)
            os << "-";
        else
            os << "rrh" << user_rrh[u];
    }
    os << "\n";
    return os.str();
}

void finalize_plan_metrics(TransmissionPlan& plan, const Instance& instance) {
    double sum = 0.0;
    long served = 0;
    for (int z = 0; z < plan.num_rrbs; ++z) {
        for (int b = 0; b < plan.num_rrhs; ++b) {
            const PlanCell& c = plan.cell(b, z);
            sum += c.combo.tau.count() * c.rate;
            served += c.combo.tau.count();
        }
    }
    plan.sum_rate = sum;
    plan.delivered_bits = instance.config.file_size_bits * static_cast<double>(served);
    plan.per_user_hz = sum / plan.num_users;
}

FixedSchedule plan_to_fixed_schedule(const TransmissionPlan& plan) {
    FixedSchedule s = FixedSchedule::empty(plan.num_rrhs, plan.num_rrbs);
    for (int b = 0; b < plan.num_rrhs; ++b)
        for (int z = 0; z < plan.num_rrbs; ++z) s.tau_at(b, z) = plan.cell(b, z).combo.tau;
    return s;
}

EvalMetrics evaluate(const TransmissionPlan& plan, const Instance& instance) {
    const NetworkConfig& cfg = instance.config;
    if (plan.num_rrhs != cfg.num_rrhs || plan.num_rrbs != cfg.num_rrbs ||
        plan.num_users != cfg.num_users)
        throw ValidationError("plan dimensions do not match the instance");

    PowerMatrix pm = PowerMatrix::zero(cfg.num_rrhs, cfg.num_rrbs);
    for (int b = 0; b < cfg.num_rrhs; ++b)
        for (int z = 0; z < cfg.num_rrbs; ++z) pm.at(b, z) = plan.cell(b, z).power;

    EvalMetrics m;
    long served = 0;
    for (int z = 0; z < cfg.num_rrbs; ++z) {
        for (int b = 0; b < cfg.num_rrhs; ++b) {
            const PlanCell& c = plan.cell(b, z);
            m.sum_rate += c.combo.tau.count() * c.rate;
            served += c.combo.tau.count();

            if (c.power < 0 || c.power > cfg.p_max(b, z) * (1 + 1e-12))
                throw ValidationError("power outside its box at rrh" + std::to_string(b) + " rrb" +
                                      std::to_string(z) + " (4e)");
            if (c.combo.tau.empty()) {
                if (!c.combo.kappa.empty())
                    throw ValidationError("payload without targeted users at rrh" +
                                          std::to_string(b) + " rrb" + std::to_string(z) + " (4d)");
                continue;
            }
            if (!c.rlnc && c.combo.kappa.empty())
                throw ValidationError("targeted users without a payload at rrh" +
                                      std::to_string(b) + " rrb" + std::to_string(z) + " (4d)");
            c.combo.tau.for_each([&](int u) {
                if (!c.rlnc && !is_instantly_decodable(c.combo.kappa, u, instance.side_info))
                    throw ValidationError("user u" + std::to_string(u) +
                                          " cannot decode the payload at rrh" + std::to_string(b) +
                                          " rrb" + std::to_string(z) + " (4d)");
                const double cap = capacity(pm, instance.channel, b, z, u);
                if (c.rate > cap * (1 + 1e-9) + 1e-12)
                    throw ValidationError("rate exceeds capacity of user u" + std::to_string(u) +
                                          " at rrh" + std::to_string(b) + " rrb" +
                                          std::to_string(z) + " (4d)");
            });
        }
    }
    m.delivered_bits = cfg.file_size_bits * static_cast<double>(served);
    m.per_user_hz = m.sum_rate / cfg.num_users;

    for (int u = 0; u < cfg.num_users; ++u) {
        int serving = -1;
        for (int b = 0; b < cfg.num_rrhs; ++b) {
            for (int z = 0; z < cfg.num_rrbs; ++z) {
                if (!plan.cell(b, z).combo.tau.contains(u)) continue;
                if (serving != -1 && serving != b)
                    throw ValidationError("user u" + std::to_string(u) +
                                          " scheduled to multiple RRHs (4c)");
                serving = b;
            }
        }
        if (plan.user_rrh[u] != serving)
            throw ValidationError("user-RRH bookkeeping wrong for u" + std::to_string(u) + " (4b)");
    }

    auto close = [](double a, double b) {
        return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
    };
    if (!close(m.sum_rate, plan.sum_rate) || !close(m.delivered_bits, plan.delivered_bits) ||
        !close(m.per_user_hz, plan.per_user_hz))
        throw ValidationError("stored metrics disagree with recomputation");
    return m;
}

namespace {

TransmissionPlan empty_plan(const Instance& instance) {
    TransmissionPlan plan;
    plan.num_rrhs = instance.config.num_rrhs;
    plan.num_rrbs = instance.config.num_rrbs;
    plan.num_users = instance.config.num_users;
    plan.cells.assign(static_cast<std::size_t>(plan.num_rrhs) * plan.num_rrbs, PlanCell{});
    plan.user_rrh.assign(plan.num_users, -1);
    return plan;
}

void place_vertex(TransmissionPlan& plan, const ScheduleVertex& v) {
    for (const VertexAssignment& a : v.assignments) {
        PlanCell& c = plan.cell(a.rrh, v.rrb);
        c.combo = a.combo;
        c.rate = a.rate;
        c.power = a.power;
        a.combo.tau.for_each([&](int u) { plan.user_rrh[u] = a.rrh; });
    }
}

} // namespace

TransmissionPlan schedule_joint(const Instance& instance, const JointOptions& options) {
    const NetworkConfig& cfg = instance.config;
    std::vector<Combination> combos =
        enumerate_combinations(instance.side_info, cfg.max_coding_degree, cfg.max_combinations);
    if (options.singles_only) {
        std::erase_if(combos, [](const Combination& c) {
            return c.kappa.count() != 1 || c.tau.count() != 1;
        });
    }
    const PowerSolver solver =
        options.max_power ? make_max_power_solver(instance) : make_grid_power_solver(instance);
    SubgraphOptions sub;
    sub.max_vertices = cfg.max_subgraph_vertices;
    const CranIdncGraph graph = build_cran_idnc_graph(instance, combos, solver, sub);

    TransmissionPlan plan = empty_plan(instance);
    Clique clique;
    if (options.use_exact) {
        const std::size_t budget = options.node_budget.value_or(cfg.clique_node_budget);
        const CliqueSearchResult res = exact_max_weight_clique(graph.graph, budget);
        clique = res.clique;
        plan.solver = res.proven ? "exact" : "exact-incumbent";
        if (!res.proven) plan.flags.push_back("budget-degraded");
    } else {
        clique = greedy_max_weight_clique(graph.graph);
        plan.solver = "greedy";
    }
    for (int id : clique.ids) place_vertex(plan, graph.vertices[id]);
    plan.scheduler = options.max_power ? "max_power"
                     : options.singles_only ? "uncoded_joint"
                                            : "joint";
    finalize_plan_metrics(plan, instance);
    return plan;
}

namespace {

/// Rebuilds a plan's rates and powers from a power matrix: each occupied
/// cell transmits at its weakest targeted capacity under p.
void refresh_plan_at_power(TransmissionPlan& plan, const Instance& instance,
                           const PowerMatrix& p) {
    for (int b = 0; b < plan.num_rrhs; ++b) {
        for (int z = 0; z < plan.num_rrbs; ++z) {
            PlanCell& c = plan.cell(b, z);
            if (c.combo.tau.empty()) {
                c.power = 0.0;
                c.rate = 0.0;
                continue;
            }
            c.power = p.at(b, z);
            double r = std::numeric_limits<double>::infinity();
            c.combo.tau.for_each(
                [&](int u) { r = std::min(r, capacity(p, instance.channel, b, z, u)); });
            c.rate = r;
        }
    }
}

TransmissionPlan plan_from_coordinated_clique(const Instance& instance,
                                              const CoordinatedGraph& graph,
                                              const Clique& clique) {
    TransmissionPlan plan = empty_plan(instance);
    for (int id : clique.ids) {
        const FixedPowerVertex& v = graph.vertices[id];
        PlanCell& c = plan.cell(v.rrh, v.rrb);
        c.combo.kappa.add(v.file);
        c.combo.tau.add(v.user);
        c.rate = v.rate; // clique edges force a common rate per cell
        plan.user_rrh[v.user] = v.rrh;
    }
    return plan;
}

} // namespace

IterativeRun schedule_iterative_traced(const Instance& instance) {
    const NetworkConfig& cfg = instance.config;
    IterativeRun run;
    PowerMatrix p = PowerMatrix::at_max(cfg);

    TransmissionPlan best_plan = empty_plan(instance);
    best_plan.scheduler = "iterative";
    finalize_plan_metrics(best_plan, instance);
    double best_obj = -std::numeric_limits<double>::infinity();
    double prev_obj = -std::numeric_limits<double>::infinity();
    bool power_converged = true;

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        run.iterations = it;
        const CoordinatedGraph graph = build_coordinated_graph(instance, p);
        const Clique clique = greedy_max_weight_clique(graph.graph);
        TransmissionPlan plan = plan_from_coordinated_clique(instance, graph, clique);

        const FixedSchedule schedule = plan_to_fixed_schedule(plan);
        const PowerIterationResult pr = iterate_power(schedule, instance, PowerMatrix::at_max(cfg),
                                                      cfg.tolerance, cfg.max_iterations);
        power_converged = power_converged && pr.converged;
        p = pr.powers;

        refresh_plan_at_power(plan, instance, p);
        plan.scheduler = "iterative";
        finalize_plan_metrics(plan, instance);

        const double obj = plan.sum_rate;
        run.objective_per_iteration.push_back(obj);
        if (obj > best_obj) {
            best_obj = obj;
            best_plan = plan;
        }
        run.best_objective_trace.push_back(best_obj);

        if (obj - prev_obj < cfg.tolerance * std::max(1.0, std::fabs(prev_obj))) {
            run.converged = true;
            break;
        }
        prev_obj = obj;
    }
    if (!run.converged) best_plan.flags.push_back("iterative-not-converged");
    if (!power_converged) best_plan.flags.push_back("power-not-converged");
    run.plan = std::move(best_plan);
    return run;
}

TransmissionPlan schedule_iterative(const Instance& instance) {
    return schedule_iterative_traced(instance).plan;
}

TransmissionPlan schedule_classical_idnc(const Instance& instance) {
    const NetworkConfig& cfg = instance.config;
    const std::vector<Combination> combos =
        enumerate_combinations(instance.side_info, cfg.max_coding_degree, cfg.max_combinations);
    const PowerMatrix pm = PowerMatrix::at_max(cfg);

    TransmissionPlan plan = empty_plan(instance);
    plan.scheduler = "classical_idnc";
    for (int b = 0; b < cfg.num_rrhs; ++b)
        for (int z = 0; z < cfg.num_rrbs; ++z) plan.cell(b, z).power = cfg.p_max(b, z);

    UserSet served;
    for (int b = 0; b < cfg.num_rrhs; ++b) {
        for (int z = 0; z < cfg.num_rrbs; ++z) {
            const Combination* best = nullptr;
            UserSet best_tau;
            for (const Combination& c : combos) {
                UserSet tau;
                c.tau.for_each([&](int u) {
                    if (!served.contains(u) &&
                        (plan.user_rrh[u] == -1 || plan.user_rrh[u] == b))
                        tau.add(u);
                });
                if (tau.empty()) continue;
                // widest reach first, then the smallest payload
                const auto key = [&](const Combination& k, UserSet t) {
                    return std::make_tuple(-t.count(), k.kappa.count(), k.kappa.bits(), t.bits());
                };
                if (!best || key(c, tau) < key(*best, best_tau)) {
                    best = &c;
                    best_tau = tau;
                }
            }
            if (!best) continue;
            PlanCell& cell = plan.cell(b, z);
            cell.combo = {best->kappa, best_tau};
            double r = std::numeric_limits<double>::infinity();
            best_tau.for_each(
                [&](int u) { r = std::min(r, capacity(pm, instance.channel, b, z, u)); });
            cell.rate = r;
            best_tau.for_each([&](int u) {
                served.add(u);
                plan.user_rrh[u] = b;
            });
        }
    }
    finalize_plan_metrics(plan, instance);
    return plan;
}

TransmissionPlan schedule_rlnc(const Instance& instance) {
    const NetworkConfig& cfg = instance.config;
    const PowerMatrix pm = PowerMatrix::at_max(cfg);

    TransmissionPlan plan = empty_plan(instance);
    plan.scheduler = "rlnc";
    for (int b = 0; b < cfg.num_rrhs; ++b)
        for (int z = 0; z < cfg.num_rrbs; ++z) plan.cell(b, z).power = cfg.p_max(b, z);

    for (int u = 0; u < cfg.num_users; ++u) {
        if (instance.side_info.wants[u].empty()) continue;
        int best_b = 0, best_z = 0;
        double best_cap = -std::numeric_limits<double>::infinity();
        for (int b = 0; b < cfg.num_rrhs; ++b) {
            for (int z = 0; z < cfg.num_rrbs; ++z) {
                const double cap = capacity(pm, instance.channel, b, z, u);
                if (cap > best_cap) {
                    best_cap = cap;
                    best_b = b;
                    best_z = z;
                }
            }
        }
        PlanCell& cell = plan.cell(best_b, best_z);
        cell.rlnc = true;
        cell.combo.tau.add(u);
        plan.user_rrh[u] = best_b;
    }
    for (int b = 0; b < cfg.num_rrhs; ++b) {
        for (int z = 0; z < cfg.num_rrbs; ++z) {
            PlanCell& cell = plan.cell(b, z);
            if (cell.combo.tau.empty()) {
                cell.rlnc = false;
                continue;
            }
            double r = std::numeric_limits<double>::infinity();
            cell.combo.tau.for_each(
                [&](int u) { r = std::min(r, capacity(pm, instance.channel, b, z, u)); });
            cell.rate = r;
        }
    }
    finalize_plan_metrics(plan, instance);
    return plan;
}

TransmissionPlan schedule_max_power(const Instance& instance) {
    JointOptions opts;
    opts.max_power = true;
    return schedule_joint(instance, opts);
}

TransmissionPlan schedule_uncoded_joint(const Instance& instance) {
    JointOptions opts;
    opts.singles_only = true;
    return schedule_joint(instance, opts);
}

const std::vector<std::string>& scheduler_names() {
    static const std::vector<std::string> names = {"joint",     "iterative", "classical_idnc",
                                                   "rlnc",      "max_power", "uncoded_joint"};
    return names;
}

TransmissionPlan run_scheduler(const std::string& name, const Instance& instance,
                               const JointOptions& options) {
    if (name == "joint") return schedule_joint(instance, options);
    if (name == "iterative") return schedule_iterative(instance);
    if (name == "classical_idnc") return schedule_classical_idnc(instance);
    if (name == "rlnc") return schedule_rlnc(instance);
    if (name == "max_power") {
        JointOptions o = options;
        o.max_power = true;
        return schedule_joint(instance, o);
    }
    if (name == "uncoded_joint") {
        JointOptions o = options;
        o.singles_only = true;
        return schedule_joint(instance, o);
    }
    throw ValidationError("unknown scheduler '" + name + "'");
}

} // namespace cranidnc
