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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cranidnc/clique.hpp"
#include "cranidnc/conflict_graph.hpp"
#include "cranidnc/idnc.hpp"
#include "cranidnc/model.hpp"
#include "cranidnc/power.hpp"

namespace cranidnc {

/// What one RRB of one RRH transmits: a combination at a rate and power.
/// An empty combination means the RRB is silent. `rlnc` marks a
/// mix-everything payload whose per-user decodability is out of scope for
/// the validator (received-throughput accounting).
struct PlanCell {
    Combination combo;
    double rate = 0.0;
    double power = 0.0;
    bool rlnc = false;
};

/// Full frame schedule plus its reported metrics.
struct TransmissionPlan {
    int num_rrhs = 0, num_rrbs = 0, num_users = 0;
    std::vector<PlanCell> cells; // row-major (b, z)
    std::vector<int> user_rrh;   // serving RRH per user, -1 = unserved

    double sum_rate = 0.0;       // sum over cells of |tau| * rate
    double delivered_bits = 0.0; // file_size * total targeted-user count
    double per_user_hz = 0.0;    // sum_rate / U
    std::string scheduler;
    std::string solver;             // clique solver actually used, if any
    std::vector<std::string> flags; // budget / convergence exceptions

    PlanCell& cell(int b, int z) { return cells[static_cast<std::size_t>(b) * num_rrbs + z]; }
    const PlanCell& cell(int b, int z) const {
        return cells[static_cast<std::size_t>(b) * num_rrbs + z];
    }
    /// X-style service indicator.
    bool serves(int u, int b, int z) const { return cell(b, z).combo.tau.contains(u); }
    bool has_flag(const std::string& f) const;
    std::string to_string() const;
};

struct EvalMetrics {
    double sum_rate = 0.0;
    double delivered_bits = 0.0;
    double per_user_hz = 0.0;
};

/// Recomputes the metrics from the cells alone and cross-checks every plan
/// constraint: single serving RRH per user, consistent RRH bookkeeping,
/// decodability and capacity feasibility of every targeted user, powers
/// within their boxes, and agreement with the plan's stored metrics.
/// Throws ValidationError naming the violated constraint.
EvalMetrics evaluate(const TransmissionPlan& plan, const Instance& instance);

struct JointOptions {
    bool use_exact = true;
    std::optional<std::size_t> node_budget; // defaults to the config's
    bool singles_only = false;              // restrict to one-user uncoded payloads
    bool max_power = false;                 // pin vertex powers to the cap
};

/// Optimal-path scheduler: enumerate combinations, build the per-RRB
/// subgraphs with per-vertex power solves, merge, and take the
/// maximum-weight clique (exact within the node budget, degrading to the
/// incumbent with a "budget-degraded" flag).
TransmissionPlan schedule_joint(const Instance& instance, const JointOptions& options = {});

struct IterativeRun {
    TransmissionPlan plan;
    std::vector<double> objective_per_iteration;
    std::vector<double> best_objective_trace;
    int iterations = 0;
    bool converged = false;
};

/// Decoupled solver: alternate the fixed-power coordinated scheduling graph
/// (greedy clique) with the KKT power iteration until the objective stops
/// improving; returns the best plan seen.
IterativeRun schedule_iterative_traced(const Instance& instance);
TransmissionPlan schedule_iterative(const Instance& instance);

/// Rate-unaware baseline: per RRB in (b, z) order, greedily take the
/// combination targeting the most still-unserved compatible users, then
/// transmit at the weakest targeted capacity under full power.
TransmissionPlan schedule_classical_idnc(const Instance& instance);

/// Rate-greedy baseline: every user joins its highest-capacity RRB at full
/// power; co-scheduled users share a mix-everything payload at the weakest
/// member's capacity.
TransmissionPlan schedule_rlnc(const Instance& instance);

/// The joint pipeline with every vertex pinned to maximum power.
TransmissionPlan schedule_max_power(const Instance& instance);

/// The joint pipeline restricted to single-user uncoded payloads.
TransmissionPlan schedule_uncoded_joint(const Instance& instance);

const std::vector<std::string>& scheduler_names();
TransmissionPlan run_scheduler(const std::string& name, const Instance& instance,
                               const JointOptions& options = {});

/// Targeted-user sets of the plan, for the power iteration.
FixedSchedule plan_to_fixed_schedule(const TransmissionPlan& plan);

/// Recomputes sum_rate / delivered_bits / per_user_hz from the cells in
/// canonical (z outer, b inner) order and stores them on the plan.
void finalize_plan_metrics(TransmissionPlan& plan, const Instance& instance);

} // namespace cranidnc
