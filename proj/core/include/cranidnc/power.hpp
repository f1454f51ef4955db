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

#include <functional>
#include <vector>

#include "cranidnc/idnc.hpp"
#include "cranidnc/model.hpp"

namespace cranidnc {

/// One combination assigned to one RRH (all on a common RRB).
struct RrhCombo {
    int rrh = 0;
    Combination combo;
};

enum class PowerMethod { grid, iterative };

struct PowerSolveReport {
    std::vector<int> active_rrhs;  // ascending
    std::vector<double> powers;    // aligned with active_rrhs
    std::vector<double> rates;     // min targeted capacity per active RRH
    double objective = 0.0;        // sum over active RRHs of |tau|*rate
    PowerMethod method = PowerMethod::grid;
    int iterations = 0;
    double kkt_residual = 0.0;
    /// Interference pressure terms t_{b'z} at the returned powers, aligned
    /// with active_rrhs, as seen when updating the first active RRH
    /// (0 for that RRH itself). Diagnostics only.
    std::vector<double> t_terms;
};

/// Maximizes sum_b |tau_b| * min_{u in tau_b} log2(1+SINR) over the power
/// box of the active RRHs on RRB `rrb`. Up to three active RRHs are solved
/// by exhaustive search on the {0, delta, .., p_max} grid; larger sets fall
/// back to multi-start coordinate ascent on the same grid (eight seeded
/// random starts plus the all-max corner). Ties resolve to the
/// lexicographically smallest power vector. Inactive RRHs are silent.
PowerSolveReport solve_vertex_power(const Instance& instance, int rrb,
                                    const std::vector<RrhCombo>& assignments);

/// Targeted-user sets of a fixed schedule, per (rrh, rrb).
struct FixedSchedule {
    int num_rrhs = 0, num_rrbs = 0;
    std::vector<UserSet> tau; // row-major (b, z)

    static FixedSchedule empty(int b, int z) {
        return {b, z, std::vector<UserSet>(static_cast<std::size_t>(b) * z)};
    }
    UserSet tau_at(int b, int z) const { return tau[static_cast<std::size_t>(b) * num_rrbs + z]; }
    UserSet& tau_at(int b, int z) { return tau[static_cast<std::size_t>(b) * num_rrbs + z]; }
};

/// Per-user sum rate of the fixed schedule at power matrix p:
/// sum over scheduled (b,z,u) of log2(1+SINR). The smooth objective the KKT
/// iteration ascends.
double fixed_schedule_objective(const FixedSchedule& schedule, const PowerMatrix& p,
                                const Instance& instance);

/// One fixed-point power recomputation for RRB (b, z): own users' marginal
/// rate mass over the interference pressure inflicted on the co-channel
/// RRBs, clamped to [0, p_max]. No targeted interferers means the RRB is
/// unconstrained and gets p_max; an empty own target set gets 0.
double kkt_power_update(const FixedSchedule& schedule, const PowerMatrix& p, int b, int z,
                        const Instance& instance);

struct PowerIterationResult {
    /// Best-objective iterate seen; what callers should transmit with. The
    /// fixed-point iteration is not an ascent, so this may precede the
    /// converged point.
    PowerMatrix powers;
    /// Last iterate: the fixed-point candidate the convergence test accepted.
    PowerMatrix final_powers;
    std::vector<PowerSolveReport> per_rrb; // one per RRB, at the returned powers
    std::vector<double> objective_trace;   // recorded once per sweep (index 0 = p0)
    int sweeps = 0;
    bool converged = false;
};

/// Gauss-Seidel sweeps of kkt_power_update in (b, z) order over the RRBs
/// with scheduled users, until the largest power change of a sweep drops
/// below tol * p_max or max_iter sweeps elapse. RRBs serving nobody are
/// forced to 0. Returns the best-objective iterate seen (which is p0 itself
/// when tol is infinite: nothing can improve on a degenerate tolerance).
PowerIterationResult iterate_power(const FixedSchedule& schedule, const Instance& instance,
                                   PowerMatrix p0, double tol, int max_iter);

/// Power strategy used while expanding schedule vertices.
using PowerSolver = std::function<PowerSolveReport(int rrb, const std::vector<RrhCombo>&)>;

/// The grid/ascent solver above, bound to an instance.
PowerSolver make_grid_power_solver(const Instance& instance);

/// Pins every active RRH to its power cap and only evaluates rates
/// (the max-power baseline's strategy).
PowerSolver make_max_power_solver(const Instance& instance);

} // namespace cranidnc
