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

#include "cranidnc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cranidnc {

namespace {

struct CellChoice {
    int pair = -1; // index into the payload list, -1 = silent
};

/// Per-RRB enumeration state for the winning schedule.
struct RrbPick {
    std::vector<CellChoice> per_rrh;
    std::vector<int> power_digits;
    double value = 0.0;
};

} // namespace

TransmissionPlan brute_force_best_plan(const Instance& instance, int power_grid_points) {
    const NetworkConfig& cfg = instance.config;
    const int B = cfg.num_rrhs, Z = cfg.num_rrbs, U = cfg.num_users, F = cfg.num_files;
    if (U > 4 || B > 2 || Z > 2 || F > 3)
        throw ValidationError("oracle guard: instance too large (need U<=4, B<=2, Z<=2, F<=3; got U=" +
                              std::to_string(U) + " B=" + std::to_string(B) + " Z=" +
                              std::to_string(Z) + " F=" + std::to_string(F) + ")");
    if (power_grid_points < 2) throw ValidationError("oracle: power_grid_points must be >= 2");

    // Every decodable payload (kappa, tau) with each file of kappa wanted by
    // someone in tau, straight from the decodability predicate.
    std::vector<Combination> payloads;
    for (std::uint64_t kbits = 1; kbits < (std::uint64_t{1} << F); ++kbits) {
        const FileSet kappa(kbits);
        std::uint64_t decoders = 0;
        for (int u = 0; u < U; ++u)
            if (is_instantly_decodable(kappa, u, instance.side_info)) decoders |= std::uint64_t{1} << u;
        if (!decoders) continue;
        for (std::uint64_t tbits = decoders;; tbits = (tbits - 1) & decoders) {
            if (tbits) {
                const UserSet tau(tbits);
                FileSet covered;
                tau.for_each([&](int u) { covered |= kappa & instance.side_info.wants[u]; });
                if (covered == kappa) payloads.push_back({kappa, tau});
            }
            if (!tbits) break;
        }
    }
    std::sort(payloads.begin(), payloads.end());

    // Power grids and the grid-tuple capacity tables, one per RRB.
    std::vector<std::vector<std::vector<double>>> grids(Z); // [z][b] -> levels
    int tuples = 1;
    for (int b = 0; b < B; ++b) tuples *= power_grid_points;
    for (int z = 0; z < Z; ++z) {
        grids[z].resize(B);
        for (int b = 0; b < B; ++b) grids[z][b] = make_power_grid(cfg.p_max(b, z), power_grid_points);
    }

    auto tuple_digits = [&](int tuple) {
        std::vector<int> d(B);
        for (int b = B - 1; b >= 0; --b) {
            d[b] = tuple % power_grid_points;
            tuple /= power_grid_points;
        }
        return d; // first RRH most significant: lex order over power vectors
    };

    // cap[z][tuple][b*U+u]
    std::vector<std::vector<std::vector<double>>> cap(Z);
    PowerMatrix pm = PowerMatrix::zero(B, Z);
    for (int z = 0; z < Z; ++z) {
        cap[z].assign(tuples, std::vector<double>(static_cast<std::size_t>(B) * U));
        for (int t = 0; t < tuples; ++t) {
            const std::vector<int> d = tuple_digits(t);
            for (int b = 0; b < B; ++b) pm.at(b, z) = grids[z][b][d[b]];
            for (int b = 0; b < B; ++b)
                for (int u = 0; u < U; ++u)
                    cap[z][t][static_cast<std::size_t>(b) * U + u] =
                        capacity(pm, instance.channel, b, z, u);
            for (int b = 0; b < B; ++b) pm.at(b, z) = 0.0;
        }
    }

    // value[z][b][pair][tuple] = |tau| * weakest targeted capacity
    std::vector<std::vector<std::vector<std::vector<double>>>> value(Z);
    for (int z = 0; z < Z; ++z) {
        value[z].assign(B, std::vector<std::vector<double>>(
                               payloads.size(), std::vector<double>(tuples)));
        for (int b = 0; b < B; ++b) {
            for (std::size_t pi = 0; pi < payloads.size(); ++pi) {
                const UserSet tau = payloads[pi].tau;
                const int n = tau.count();
                for (int t = 0; t < tuples; ++t) {
                    double r = std::numeric_limits<double>::infinity();
                    tau.for_each([&](int u) {
                        r = std::min(r, cap[z][t][static_cast<std::size_t>(b) * U + u]);
                    });
                    value[z][b][pi][t] = n * r;
                }
            }
        }
    }

    // Outer loop: every user-to-RRH binding; RRBs decouple once it is fixed.
    std::vector<int> binding(U, -1);
    double best_total = -std::numeric_limits<double>::infinity();
    std::vector<int> best_binding;
    std::vector<RrbPick> best_picks;

    while (true) {
        std::vector<UserSet> bound(B);
        for (int u = 0; u < U; ++u)
            if (binding[u] >= 0) bound[binding[u]].add(u);

        std::vector<std::vector<int>> allowed(B); // payload indices per RRH; -1 handled apart
        for (int b = 0; b < B; ++b)
            for (std::size_t pi = 0; pi < payloads.size(); ++pi)
                if (payloads[pi].tau.subset_of(bound[b])) allowed[b].push_back(static_cast<int>(pi));

        double total = 0.0;
        std::vector<RrbPick> picks(Z);
        for (int z = 0; z < Z; ++z) {
            RrbPick best_pick;
            best_pick.value = -std::numeric_limits<double>::infinity();
            std::vector<CellChoice> choice(B);
            // Odometer over per-RRH choices (-1 plus the allowed payloads).
            std::vector<int> pos(B, -1);
            while (true) {
                for (int t = 0; t < tuples; ++t) {
                    double v = 0.0;
                    for (int b = 0; b < B; ++b) {
                        const int pi = pos[b] < 0 ? -1 : allowed[b][pos[b]];
                        if (pi >= 0) v += value[z][b][pi][t];
                    }
                    if (v > best_pick.value) {
                        best_pick.value = v;
                        best_pick.per_rrh.assign(B, CellChoice{});
                        for (int b = 0; b < B; ++b)
                            best_pick.per_rrh[b].pair = pos[b] < 0 ? -1 : allowed[b][pos[b]];
                        best_pick.power_digits = tuple_digits(t);
                    }
                }
                int b = B - 1;
                while (b >= 0) {
                    if (++pos[b] < static_cast<int>(allowed[b].size())) break;
                    pos[b] = -1;
                    --b;
                }
                if (b < 0) break;
            }
            picks[z] = best_pick;
            total += best_pick.value;
        }

        if (total > best_total) {
            best_total = total;
            best_binding = binding;
            best_picks = picks;
        }

        int u = U - 1;
        while (u >= 0) {
            if (++binding[u] < B) break;
            binding[u] = -1;
            --u;
        }
        if (u < 0) break;
    }

    // Materialize the winning schedule.
    TransmissionPlan plan;
    plan.num_rrhs = B;
    plan.num_rrbs = Z;
    plan.num_users = U;
    plan.cells.assign(static_cast<std::size_t>(B) * Z, PlanCell{});
    plan.user_rrh.assign(U, -1);
    plan.scheduler = "oracle";
    plan.solver = "brute-force";

    for (int z = 0; z < Z; ++z) {
        const RrbPick& pick = best_picks[z];
        PowerMatrix column = PowerMatrix::zero(B, Z);
        for (int b = 0; b < B; ++b) column.at(b, z) = grids[z][b][pick.power_digits[b]];
        for (int b = 0; b < B; ++b) {
            PlanCell& cell = plan.cell(b, z);
            cell.power = column.at(b, z);
            const int pi = pick.per_rrh[b].pair;
            if (pi < 0) continue;
            cell.combo = payloads[pi];
            double r = std::numeric_limits<double>::infinity();
            cell.combo.tau.for_each([&](int u) {
                r = std::min(r, capacity(column, instance.channel, b, z, u));
                plan.user_rrh[u] = b;
            });
            cell.rate = r;
        }
    }
    finalize_plan_metrics(plan, instance);
    return plan;
}

} // namespace cranidnc
