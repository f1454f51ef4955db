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

#include "cranidnc/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace cranidnc {

namespace {

/// Capacity of user u on RRB `rrb` of RRH b when the RRB's cross-RRH power
/// column is pz. Interference accumulates over all other RRHs in index
/// order, matching model::sinr term for term.
double column_capacity(const ChannelRealization& ch, int b, int rrb, int u,
                       const std::vector<double>& pz) {
    if (ch.has_override()) return ch.override_at(b, rrb, u);
    double interference = 0.0;
    for (int o = 0; o < ch.num_rrhs; ++o)
        if (o != b) interference += pz[o] * ch.gain(o, rrb, u);
    return std::log2(1.0 + pz[b] * ch.gain(b, rrb, u) / (ch.noise_power + interference));
}

double min_targeted_capacity(const ChannelRealization& ch, int b, int rrb, UserSet tau,
                             const std::vector<double>& pz) {
    double r = std::numeric_limits<double>::infinity();
    tau.for_each([&](int u) { r = std::min(r, column_capacity(ch, b, rrb, u, pz)); });
    return tau.empty() ? 0.0 : r;
}

/// Interference pressure a unit of RRH `updating_b` power exerts on the
/// users RRH `interferer_b` serves on this RRB (zero when that RRH is
/// silent or serves nobody).
double t_term(const ChannelRealization& ch, const std::vector<double>& pz,
              const std::vector<UserSet>& tau_column, int rrb, int updating_b, int interferer_b) {
    const double p_other = pz[interferer_b];
    const UserSet tau = tau_column[interferer_b];
    if (p_other <= 0.0 || tau.empty()) return 0.0;
    double t = 0.0;
    tau.for_each([&](int u) {
        double interference = 0.0;
        for (int o = 0; o < ch.num_rrhs; ++o)
            if (o != interferer_b) interference += pz[o] * ch.gain(o, rrb, u);
        const double s = p_other * ch.gain(interferer_b, rrb, u) / (ch.noise_power + interference);
        t += ch.gain(updating_b, rrb, u) / (p_other * ch.gain(interferer_b, rrb, u)) * s * s /
             (1.0 + s);
    });
    return t;
}

struct VertexProblem {
    const Instance& inst;
    int rrb;
    std::vector<int> active;          // ascending RRH indices
    std::vector<UserSet> taus;        // aligned with active
    std::vector<int> tau_sizes;       // aligned
    std::vector<std::vector<double>> grids; // aligned candidate power levels

    double objective(const std::vector<double>& pz) const {
        double total = 0.0;
        for (std::size_t i = 0; i < active.size(); ++i)
            total += tau_sizes[i] *
                     min_targeted_capacity(inst.channel, active[i], rrb, taus[i], pz);
        return total;
    }

    std::vector<double> column_from_indices(const std::vector<int>& idx) const {
        std::vector<double> pz(inst.config.num_rrhs, 0.0);
        for (std::size_t i = 0; i < active.size(); ++i) pz[active[i]] = grids[i][idx[i]];
        return pz;
    }
};

/// Exhaustive scan of the grid, first active RRH most significant, so the
/// first-found maximum is the lexicographically smallest power vector.
void grid_search(const VertexProblem& prob, std::vector<int>& best_idx, double& best_obj) {
    const std::size_t k = prob.active.size();
    std::vector<int> idx(k, 0);
    while (true) {
        const double obj = prob.objective(prob.column_from_indices(idx));
        if (obj > best_obj) {
            best_obj = obj;
            best_idx = idx;
        }
        std::size_t pos = k;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < static_cast<int>(prob.grids[pos].size())) break;
            idx[pos] = 0;
            if (pos == 0) return;
        }
    }
}

/// Round-robin single-coordinate improvement until a full pass holds still.
void coordinate_ascent(const VertexProblem& prob, std::vector<int>& idx, double& obj,
                       int& rounds) {
    const std::size_t k = prob.active.size();
    bool moved = true;
    while (moved && rounds < 200) {
        moved = false;
        ++rounds;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<int> trial = idx;
            for (int g = 0; g < static_cast<int>(prob.grids[i].size()); ++g) {
                trial[i] = g;
                const double o = prob.objective(prob.column_from_indices(trial));
                if (o > obj) {
                    obj = o;
                    idx = trial;
                    moved = true;
                }
            }
        }
    }
}

void fill_rates_and_diagnostics(const VertexProblem& prob, const std::vector<double>& pz,
                                PowerSolveReport& report) {
    report.rates.resize(prob.active.size());
    report.objective = 0.0;
    for (std::size_t i = 0; i < prob.active.size(); ++i) {
        report.rates[i] = min_targeted_capacity(prob.inst.channel, prob.active[i], prob.rrb,
                                                prob.taus[i], pz);
        report.objective += prob.tau_sizes[i] * report.rates[i];
    }
    std::vector<UserSet> tau_column(prob.inst.config.num_rrhs);
    for (std::size_t i = 0; i < prob.active.size(); ++i) tau_column[prob.active[i]] = prob.taus[i];
    report.t_terms.assign(prob.active.size(), 0.0);
    if (!prob.active.empty()) {
        const int pivot = prob.active.front();
        for (std::size_t i = 1; i < prob.active.size(); ++i)
            report.t_terms[i] =
                t_term(prob.inst.channel, pz, tau_column, prob.rrb, pivot, prob.active[i]);
    }
}

} // namespace

PowerSolveReport solve_vertex_power(const Instance& instance, int rrb,
                                    const std::vector<RrhCombo>& assignments) {
    PowerSolveReport report;
    report.method = PowerMethod::grid;
    if (assignments.empty()) return report;

    VertexProblem prob{instance, rrb, {}, {}, {}, {}};
    std::vector<RrhCombo> sorted = assignments;
    std::sort(sorted.begin(), sorted.end(),
              [](const RrhCombo& a, const RrhCombo& b) { return a.rrh < b.rrh; });
    for (const RrhCombo& a : sorted) {
        prob.active.push_back(a.rrh);
        prob.taus.push_back(a.combo.tau);
        prob.tau_sizes.push_back(a.combo.tau.count());
        prob.grids.push_back(
            make_power_grid(instance.config.p_max(a.rrh, rrb), instance.config.power_grid_points));
    }

    const std::size_t k = prob.active.size();
    std::vector<int> best_idx(k, 0);
    double best_obj = -std::numeric_limits<double>::infinity();

    if (k <= 3) {
        grid_search(prob, best_idx, best_obj);
    } else {
        // Deterministic seed from the assignment content.
        std::uint64_t seed = mix_seed(instance.config.rng_seed, 0x706f776572ULL + rrb);
        for (const RrhCombo& a : sorted) {
            seed = mix_seed(seed, a.combo.kappa.bits());
            seed = mix_seed(seed, a.combo.tau.bits() ^ (static_cast<std::uint64_t>(a.rrh) << 56));
        }
        std::mt19937_64 rng(seed);
        int rounds = 0;
        std::vector<std::vector<int>> starts;
        starts.emplace_back(k, instance.config.power_grid_points - 1); // all-max corner
        for (int s = 0; s < 8; ++s) {
            std::vector<int> idx(k);
            for (std::size_t i = 0; i < k; ++i)
                idx[i] = static_cast<int>(rng() % prob.grids[i].size());
            starts.push_back(std::move(idx));
        }
        for (std::vector<int>& idx : starts) {
            double obj = prob.objective(prob.column_from_indices(idx));
            coordinate_ascent(prob, idx, obj, rounds);
            if (obj > best_obj ||
                (obj == best_obj && std::lexicographical_compare(idx.begin(), idx.end(),
                                                                 best_idx.begin(), best_idx.end()))) {
                best_obj = obj;
                best_idx = idx;
            }
        }
        report.iterations = rounds;
    }

    const std::vector<double> pz = prob.column_from_indices(best_idx);
    report.active_rrhs = prob.active;
    report.powers.resize(k);
    for (std::size_t i = 0; i < k; ++i) report.powers[i] = pz[prob.active[i]];
    fill_rates_and_diagnostics(prob, pz, report);
    return report;
}

double fixed_schedule_objective(const FixedSchedule& schedule, const PowerMatrix& p,
                                const Instance& instance) {
    double total = 0.0;
    for (int z = 0; z < schedule.num_rrbs; ++z)
        for (int b = 0; b < schedule.num_rrhs; ++b)
            schedule.tau_at(b, z).for_each(
                [&](int u) { total += capacity(p, instance.channel, b, z, u); });
    return total;
}

double kkt_power_update(const FixedSchedule& schedule, const PowerMatrix& p, int b, int z,
                        const Instance& instance) {
    const ChannelRealization& ch = instance.channel;
    const UserSet own = schedule.tau_at(b, z);
    if (own.empty()) return 0.0;

    double numerator = 0.0;
    own.for_each([&](int u) {
        const double s = sinr(p, ch, b, z, u);
        numerator += s / (1.0 + s);
    });

    std::vector<double> pz(schedule.num_rrhs);
    std::vector<UserSet> tau_column(schedule.num_rrhs);
    for (int o = 0; o < schedule.num_rrhs; ++o) {
        pz[o] = p.at(o, z);
        tau_column[o] = schedule.tau_at(o, z);
    }
    double denominator = 0.0;
    for (int o = 0; o < schedule.num_rrhs; ++o)
        if (o != b) denominator += t_term(ch, pz, tau_column, z, b, o);

    const double cap = instance.config.p_max(b, z);
    if (denominator == 0.0) return cap;
    return std::clamp(numerator / denominator, 0.0, cap);
}

PowerIterationResult iterate_power(const FixedSchedule& schedule, const Instance& instance,
                                   PowerMatrix p0, double tol, int max_iter) {
    const NetworkConfig& cfg = instance.config;
    PowerIterationResult result;

    PowerMatrix p = std::move(p0);
    double max_cap = 0.0;
    for (int b = 0; b < cfg.num_rrhs; ++b) {
        for (int z = 0; z < cfg.num_rrbs; ++z) {
            if (schedule.tau_at(b, z).empty())
                p.at(b, z) = 0.0; // silent RRBs do not transmit
            else
                p.at(b, z) = std::clamp(p.at(b, z), 0.0, cfg.p_max(b, z));
            max_cap = std::max(max_cap, cfg.p_max(b, z));
        }
    }

    PowerMatrix best = p;
    double best_obj = fixed_schedule_objective(schedule, p, instance);
    result.objective_trace.push_back(best_obj);

    if (std::isfinite(tol)) {
        for (int sweep = 1; sweep <= max_iter; ++sweep) {
            double delta = 0.0;
            for (int b = 0; b < cfg.num_rrhs; ++b) {
                for (int z = 0; z < cfg.num_rrbs; ++z) {
                    if (schedule.tau_at(b, z).empty()) continue;
                    const double next = kkt_power_update(schedule, p, b, z, instance);
                    delta = std::max(delta, std::fabs(next - p.at(b, z)));
                    p.at(b, z) = next;
                }
            }
            const double obj = fixed_schedule_objective(schedule, p, instance);
            result.objective_trace.push_back(obj);
            if (obj > best_obj) {
                best_obj = obj;
                best = p;
            }
            result.sweeps = sweep;
            if (delta < tol * max_cap) {
                result.converged = true;
                break;
            }
        }
    } else {
        result.converged = true; // degenerate tolerance accepts the start
    }

    result.powers = best;
    result.final_powers = p;

    result.per_rrb.resize(cfg.num_rrbs);
    for (int z = 0; z < cfg.num_rrbs; ++z) {
        PowerSolveReport& rep = result.per_rrb[z];
        rep.method = PowerMethod::iterative;
        rep.iterations = result.sweeps;
        std::vector<double> pz(cfg.num_rrhs);
        std::vector<UserSet> tau_column(cfg.num_rrhs);
        for (int b = 0; b < cfg.num_rrhs; ++b) {
            pz[b] = best.at(b, z);
            tau_column[b] = schedule.tau_at(b, z);
        }
        for (int b = 0; b < cfg.num_rrhs; ++b) {
            const UserSet tau = schedule.tau_at(b, z);
            if (tau.empty()) continue;
            rep.active_rrhs.push_back(b);
            rep.powers.push_back(best.at(b, z));
            const double rate = min_targeted_capacity(instance.channel, b, z, tau, pz);
            rep.rates.push_back(rate);
            rep.objective += tau.count() * rate;
            rep.kkt_residual =
                std::max(rep.kkt_residual, std::fabs(kkt_power_update(schedule, best, b, z,
                                                                      instance) -
                                                     best.at(b, z)) /
                                               cfg.p_max(b, z));
        }
        rep.t_terms.assign(rep.active_rrhs.size(), 0.0);
        if (!rep.active_rrhs.empty()) {
            const int pivot = rep.active_rrhs.front();
            for (std::size_t i = 1; i < rep.active_rrhs.size(); ++i)
                rep.t_terms[i] =
                    t_term(instance.channel, pz, tau_column, z, pivot, rep.active_rrhs[i]);
        }
    }
    return result;
}

PowerSolver make_grid_power_solver(const Instance& instance) {
    const Instance* inst = &instance;
    return [inst](int rrb, const std::vector<RrhCombo>& assignments) {
        return solve_vertex_power(*inst, rrb, assignments);
    };
}

PowerSolver make_max_power_solver(const Instance& instance) {
    const Instance* inst = &instance;
    return [inst](int rrb, const std::vector<RrhCombo>& assignments) {
        PowerSolveReport report;
        report.method = PowerMethod::grid;
        VertexProblem prob{*inst, rrb, {}, {}, {}, {}};
        std::vector<RrhCombo> sorted = assignments;
        std::sort(sorted.begin(), sorted.end(),
                  [](const RrhCombo& a, const RrhCombo& b) { return a.rrh < b.rrh; });
        std::vector<double> pz(inst->config.num_rrhs, 0.0);
        for (const RrhCombo& a : sorted) {
            prob.active.push_back(a.rrh);
            prob.taus.push_back(a.combo.tau);
            prob.tau_sizes.push_back(a.combo.tau.count());
            pz[a.rrh] = inst->config.p_max(a.rrh, rrb);
        }
        report.active_rrhs = prob.active;
        for (int b : prob.active) report.powers.push_back(pz[b]);
        fill_rates_and_diagnostics(prob, pz, report);
        return report;
    };
}

} // namespace cranidnc
