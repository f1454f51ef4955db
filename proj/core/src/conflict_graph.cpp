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

#include "cranidnc/conflict_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace cranidnc {

std::string ScheduleVertex::to_string() const {
    std::ostringstream os;
    os << "rrb" << rrb;
    for (const auto& a : assignments)
        os << " b" << a.rrh << ":" << a.combo.to_string() << "@R=" << a.rate << ",P=" << a.power;
    os << " w=" << weight;
    return os.str();
}

std::string FixedPowerVertex::to_string() const {
    std::ostringstream os;
    os << "b" << rrh << " z" << rrb << " u" << user << " f" << file << " r=" << rate;
    return os.str();
}

namespace {

struct SubgraphBuilder {
    const Instance& inst;
    int rrb;
    const std::vector<Combination>& combos;
    const PowerSolver& solve;
    const SubgraphOptions& opts;
    std::vector<ScheduleVertex> out;
    std::vector<RrhCombo> chosen;

    void emit() {
        ScheduleVertex v;
        v.rrb = rrb;
        const PowerSolveReport rep = solve(rrb, chosen);
        v.assignments.reserve(chosen.size());
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            VertexAssignment a;
            a.rrh = chosen[i].rrh;
            a.combo = chosen[i].combo;
            a.rate = rep.rates[i];
            a.power = rep.powers[i];
            v.assignments.push_back(a);
            v.users_total |= a.combo.tau;
        }
        v.weight = rep.objective;
        out.push_back(std::move(v));
        if (out.size() > opts.max_vertices)
            throw BudgetError("subgraph vertex budget exceeded (cap " +
                              std::to_string(opts.max_vertices) + ") on rrb " +
                              std::to_string(rrb));
    }

    void recurse(int rrh, UserSet used) {
        if (rrh == inst.config.num_rrhs) {
            if (!chosen.empty()) emit();
            return;
        }
        recurse(rrh + 1, used); // this RRH stays silent
        for (const Combination& c : combos) {
            if (c.tau.intersects(used)) continue;
            chosen.push_back({rrh, c});
            recurse(rrh + 1, used | c.tau);
            chosen.pop_back();
        }
    }
};

/// C1/C2 on raw request pairs, as used by the fixed-power graph.
bool requests_combinable(int u1, int f1, int u2, int f2, const SideInformation& si) {
    if (u1 == u2) return false;
    if (f1 == f2) return true;
    return si.has[u2].contains(f1) && si.has[u1].contains(f2);
}

} // namespace

std::vector<ScheduleVertex> build_power_subgraph(const Instance& instance, int rrb,
                                                 const std::vector<Combination>& combos,
                                                 const PowerSolver& power_solver,
                                                 const SubgraphOptions& options) {
    SubgraphBuilder builder{instance, rrb, combos, power_solver, options, {}, {}};
    builder.recurse(0, UserSet{});
    std::vector<ScheduleVertex> vertices = std::move(builder.out);

    if (options.prune_silent_dominated) {
        std::vector<ScheduleVertex> kept;
        for (ScheduleVertex& v : vertices) {
            bool dominated = false;
            if (v.assignments.size() < static_cast<std::size_t>(instance.config.num_rrhs)) {
                for (const Combination& c : combos) {
                    if (!c.tau.intersects(v.users_total)) {
                        dominated = true;
                        break;
                    }
                }
            }
            if (!dominated) kept.push_back(std::move(v));
        }
        vertices = std::move(kept);
    }
    return vertices;
}

bool cran_idnc_adjacent(const ScheduleVertex& v, const ScheduleVertex& w) {
    if (!v.users_total.intersects(w.users_total)) return true;
    for (const auto& a : v.assignments) {
        for (const auto& b : w.assignments) {
            if (a.rrh != b.rrh && a.combo.tau.intersects(b.combo.tau)) return false;
        }
    }
    return true;
}

CranIdncGraph build_cran_idnc_graph(const Instance& instance,
                                    const std::vector<Combination>& combos,
                                    const PowerSolver& power_solver,
                                    const SubgraphOptions& options) {
    CranIdncGraph g;
    std::vector<std::size_t> part_end; // one past the last vertex of each RRB
    for (int z = 0; z < instance.config.num_rrbs; ++z) {
        std::vector<ScheduleVertex> part =
            build_power_subgraph(instance, z, combos, power_solver, options);
        for (ScheduleVertex& v : part) {
            g.graph.weights.push_back(v.weight);
            g.graph.parts.push_back(z);
            g.vertices.push_back(std::move(v));
        }
        part_end.push_back(g.vertices.size());
    }
    g.graph.num_parts = instance.config.num_rrbs;
    g.graph.init_adjacency();

    // per-vertex user masks by serving RRH, for a branch-light conflict test
    const int B = instance.config.num_rrhs;
    const std::size_t n = g.graph.size();
    std::vector<std::uint64_t> users_by_rrh(n * B, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (const VertexAssignment& a : g.vertices[i].assignments)
            users_by_rrh[i * B + a.rrh] = a.combo.tau.bits();

    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t total_i = g.vertices[i].users_total.bits();
        const std::uint64_t* rows_i = &users_by_rrh[i * B];
        // same-RRB vertices are mutually exclusive: start at the next part
        for (std::size_t j = part_end[g.graph.parts[i]]; j < n; ++j) {
            const std::uint64_t shared = total_i & g.vertices[j].users_total.bits();
            if (shared == 0) {
                g.graph.add_edge(i, j);
                continue;
            }
            // every shared user must keep its RRH in both schedules
            const std::uint64_t* rows_j = &users_by_rrh[j * B];
            bool ok = true;
            for (int b = 0; b < B; ++b) {
                if ((rows_i[b] & shared) & ~rows_j[b]) {
                    ok = false;
                    break;
                }
            }
            if (ok) g.graph.add_edge(i, j);
        }
    }
    return g;
}

CoordinatedGraph build_coordinated_graph(const Instance& instance, const PowerMatrix& p) {
    const NetworkConfig& cfg = instance.config;
    CoordinatedGraph g;
    for (int b = 0; b < cfg.num_rrhs; ++b) {
        for (int z = 0; z < cfg.num_rrbs; ++z) {
            const std::vector<double> candidates = rate_set(p, instance.channel, b, z);
            for (int u = 0; u < cfg.num_users; ++u) {
                const double cap = capacity(p, instance.channel, b, z, u);
                instance.side_info.wants[u].for_each([&](int f) {
                    for (double r : candidates) {
                        if (r <= 0.0 || r > cap) continue;
                        g.vertices.push_back({b, z, u, f, r});
                        g.graph.weights.push_back(r);
                    }
                });
            }
        }
    }
    g.graph.init_adjacency();
    const std::size_t n = g.graph.size();
    for (std::size_t i = 0; i < n; ++i) {
        const FixedPowerVertex& a = g.vertices[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const FixedPowerVertex& b = g.vertices[j];
            bool edge;
            if (a.rrh == b.rrh && a.rrb == b.rrb) {
                edge = a.rate == b.rate &&
                       requests_combinable(a.user, a.file, b.user, b.file, instance.side_info);
            } else {
                // Different users never conflict across RRBs; the same user
                // may ride several RRBs of one RRH but never two RRHs.
                edge = a.user != b.user || a.rrh == b.rrh;
            }
            if (edge) g.graph.add_edge(i, j);
        }
    }
    return g;
}

void validate_schedule_vertex(const Instance& instance, const ScheduleVertex& v) {
    UserSet seen;
    std::vector<double> pz(instance.config.num_rrhs, 0.0);
    for (const auto& a : v.assignments) pz[a.rrh] = a.power;

    double weight = 0.0;
    for (std::size_t i = 0; i < v.assignments.size(); ++i) {
        const auto& a = v.assignments[i];
        for (std::size_t j = i + 1; j < v.assignments.size(); ++j)
            if (v.assignments[j].rrh == a.rrh)
                throw ValidationError("schedule vertex: duplicate RRH " + std::to_string(a.rrh));
        if (a.combo.tau.empty()) throw ValidationError("schedule vertex: empty target set");
        if (a.combo.tau.intersects(seen))
            throw ValidationError("schedule vertex: target sets overlap across RRHs (LC2)");
        seen |= a.combo.tau;
        if (a.power < 0 || a.power > instance.config.p_max(a.rrh, v.rrb) * (1 + 1e-12))
            throw ValidationError("schedule vertex: power outside box");

        double min_cap = std::numeric_limits<double>::infinity();
        a.combo.tau.for_each([&](int u) {
            if (!is_instantly_decodable(a.combo.kappa, u, instance.side_info))
                throw ValidationError("schedule vertex: user u" + std::to_string(u) +
                                      " cannot decode its combination");
            double interference = 0.0;
            for (int o = 0; o < instance.config.num_rrhs; ++o)
                if (o != a.rrh) interference += pz[o] * instance.channel.gain(o, v.rrb, u);
            const double cap =
                instance.channel.has_override()
                    ? instance.channel.override_at(a.rrh, v.rrb, u)
                    : std::log2(1.0 + pz[a.rrh] * instance.channel.gain(a.rrh, v.rrb, u) /
                                          (instance.channel.noise_power + interference));
            min_cap = std::min(min_cap, cap);
        });
        if (std::fabs(a.rate - min_cap) > 1e-9 * std::max(1.0, std::fabs(min_cap)))
            throw ValidationError("schedule vertex: rate is not the weakest targeted capacity (LC1)");
        weight += a.combo.tau.count() * a.rate;
    }
    if (std::fabs(weight - v.weight) > 1e-9 * std::max(1.0, std::fabs(weight)))
        throw ValidationError("schedule vertex: stored weight mismatch");
}

void validate_coordinated_clique(const Instance& instance, const PowerMatrix& p,
                                 const std::vector<FixedPowerVertex>& vertices,
                                 const std::vector<int>& clique_ids) {
    std::vector<int> user_rrh(instance.config.num_users, -1);
    struct Cell {
        FileSet kappa;
        UserSet tau;
        double rate = -1;
    };
    std::vector<Cell> cells(static_cast<std::size_t>(instance.config.num_rrhs) *
                            instance.config.num_rrbs);

    for (int id : clique_ids) {
        const FixedPowerVertex& v = vertices[id];
        if (user_rrh[v.user] != -1 && user_rrh[v.user] != v.rrh)
            throw ValidationError("coordinated clique: user u" + std::to_string(v.user) +
                                  " scheduled to two RRHs");
        user_rrh[v.user] = v.rrh;
        Cell& c = cells[static_cast<std::size_t>(v.rrh) * instance.config.num_rrbs + v.rrb];
        if (c.rate >= 0 && c.rate != v.rate)
            throw ValidationError("coordinated clique: mixed rates within one RRB");
        c.rate = v.rate;
        c.kappa.add(v.file);
        c.tau.add(v.user);
    }
    for (int b = 0; b < instance.config.num_rrhs; ++b) {
        for (int z = 0; z < instance.config.num_rrbs; ++z) {
            const Cell& c = cells[static_cast<std::size_t>(b) * instance.config.num_rrbs + z];
            if (c.tau.empty()) continue;
            c.tau.for_each([&](int u) {
                if (!is_instantly_decodable(c.kappa, u, instance.side_info))
                    throw ValidationError("coordinated clique: undecodable file union for u" +
                                          std::to_string(u));
                if (c.rate > capacity(p, instance.channel, b, z, u) * (1 + 1e-12))
                    throw ValidationError("coordinated clique: rate exceeds capacity of u" +
                                          std::to_string(u));
            });
        }
    }
}

bool assignment_is_maximal(const ScheduleVertex& v, const std::vector<Combination>& combos,
                           int num_rrhs) {
    if (v.assignments.size() == static_cast<std::size_t>(num_rrhs)) return true;
    for (const Combination& c : combos)
        if (!c.tau.intersects(v.users_total)) return false;
    return true;
}

void dump_graph(std::ostream& os, const ConflictGraph& g,
                const std::function<std::string(std::size_t)>& describe) {
    os << "# conflict-graph vertices=" << g.size()
       << " partitioned=" << (g.partitioned() ? 1 : 0) << "\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        os << "# " << i;
        if (g.partitioned()) os << " part=" << g.parts[i];
        os << " w=" << g.weights[i];
        if (describe) os << " " << describe(i);
        os << "\n";
    }
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (g.adjacent(i, j)) os << i << " " << j << "\n";
}

} // namespace cranidnc
