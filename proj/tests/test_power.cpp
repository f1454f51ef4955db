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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cranidnc/fixtures.hpp"
#include "cranidnc/idnc.hpp"
#include "cranidnc/power.hpp"

using namespace cranidnc;

namespace {

NetworkConfig small_config(std::uint64_t seed) {
    NetworkConfig cfg;
    cfg.num_rrhs = 2;
    cfg.num_rrbs = 2;
    cfg.num_users = 4;
    cfg.num_files = 3;
    cfg.p_max_watts = dbm_to_watts(30.0);
    cfg.power_grid_points = 9;
    cfg.rng_seed = seed;
    return cfg;
}

/// Fills each RRB with a random decodable combination under a consistent
/// user-to-RRH binding.
FixedSchedule random_schedule(const Instance& inst, std::mt19937_64& rng) {
    const auto combos = enumerate_combinations(inst.side_info, 0);
    FixedSchedule s = FixedSchedule::empty(inst.config.num_rrhs, inst.config.num_rrbs);
    std::vector<int> binding(inst.config.num_users, -1);
    for (int b = 0; b < inst.config.num_rrhs; ++b) {
        for (int z = 0; z < inst.config.num_rrbs; ++z) {
            if (combos.empty()) continue;
            for (int attempt = 0; attempt < 8; ++attempt) {
                const Combination& c = combos[rng() % combos.size()];
                bool ok = true;
                c.tau.for_each([&](int u) { ok = ok && (binding[u] == -1 || binding[u] == b); });
                if (!ok) continue;
                c.tau.for_each([&](int u) { binding[u] = b; });
                s.tau_at(b, z) = c.tau;
                break;
            }
        }
    }
    return s;
}

double fd_gradient(const FixedSchedule& s, const Instance& inst, PowerMatrix p, int b, int z,
                   double h) {
    PowerMatrix up = p, down = p;
    up.at(b, z) += h;
    down.at(b, z) -= h;
    return (fixed_schedule_objective(s, up, inst) - fixed_schedule_objective(s, down, inst)) /
           (2 * h);
}

} // namespace

TEST_CASE("a lone RRH transmits at full power") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        NetworkConfig cfg = small_config(rng());
        cfg.num_rrhs = 1;
        const Instance inst = generate_instance(cfg);
        const auto combos = enumerate_combinations(inst.side_info, 0);
        REQUIRE_FALSE(combos.empty());
        const std::vector<RrhCombo> assignment = {{0, combos[rng() % combos.size()]}};
        const PowerSolveReport rep = solve_vertex_power(inst, 0, assignment);
        CHECK(rep.powers == std::vector<double>{cfg.p_max_watts});
        CHECK(rep.objective > 0.0);
    }
}

TEST_CASE("coarse grid optimum sits within one step of a 10x finer grid") {
    // symmetric two-RRH link: equal own gains, equal cross gains, one user each
    Instance inst;
    inst.config = small_config(0);
    inst.config.num_rrbs = 1;
    inst.config.num_users = 2;
    inst.config.p_max_watts = 1.0;
    inst.config.noise_density_w_per_hz = 0.2;
    inst.config.bandwidth_hz = 1.0;
    inst.config.power_grid_points = 9;
    inst.channel.num_rrhs = 2;
    inst.channel.num_rrbs = 1;
    inst.channel.num_users = 2;
    inst.channel.noise_power = 0.2;
    inst.channel.gains = {1.0, 0.5, 0.5, 1.0};
    inst.side_info.has.assign(2, FileSet{});
    inst.side_info.wants.assign(2, FileSet::single(0));

    const std::vector<RrhCombo> assignment = {
        {0, {FileSet::single(0), UserSet::single(0)}},
        {1, {FileSet::single(0), UserSet::single(1)}},
    };
    const PowerSolveReport coarse = solve_vertex_power(inst, 0, assignment);

    Instance fine = inst;
    fine.config.power_grid_points = (inst.config.power_grid_points - 1) * 10 + 1;
    const PowerSolveReport refined = solve_vertex_power(fine, 0, assignment);
    CHECK(refined.objective >= coarse.objective - 1e-12);

    // snapping the fine optimum to the coarse grid is a coarse grid point,
    // so exhaustiveness forces coarse >= snapped; that is the one-step bound
    const double delta = inst.config.p_max_watts / (inst.config.power_grid_points - 1);
    PowerMatrix snapped = PowerMatrix::zero(2, 1);
    for (std::size_t i = 0; i < refined.powers.size(); ++i)
        snapped.at(static_cast<int>(i), 0) = std::round(refined.powers[i] / delta) * delta;
    double snapped_obj = 0;
    for (const RrhCombo& a : assignment) {
        double r = std::numeric_limits<double>::infinity();
        a.combo.tau.for_each(
            [&](int u) { r = std::min(r, capacity(snapped, inst.channel, a.rrh, 0, u)); });
        snapped_obj += a.combo.tau.count() * r;
    }
    CHECK(coarse.objective >= snapped_obj - 1e-12);
    CHECK(refined.objective - coarse.objective <= refined.objective * 0.1 + 1e-9);
}

TEST_CASE("grid solver is exhaustive for two active RRHs") {
    std::mt19937_64 rng(5);
    NetworkConfig cfg = small_config(77);
    cfg.power_grid_points = 7;
    const Instance inst = generate_instance(cfg);
    const auto combos = enumerate_combinations(inst.side_info, 0);
    std::vector<RrhCombo> assignment;
    for (const Combination& c : combos) {
        if (assignment.empty()) {
            assignment.push_back({0, c});
        } else if (!c.tau.intersects(assignment[0].combo.tau)) {
            assignment.push_back({1, c});
            break;
        }
    }
    REQUIRE(assignment.size() == 2);
    const PowerSolveReport rep = solve_vertex_power(inst, 0, assignment);

    // independent re-scan of every grid point
    const auto grid0 = make_power_grid(cfg.p_max(0, 0), cfg.power_grid_points);
    const auto grid1 = make_power_grid(cfg.p_max(1, 0), cfg.power_grid_points);
    double best = -1;
    for (double p0 : grid0) {
        for (double p1 : grid1) {
            PowerMatrix p = PowerMatrix::zero(2, 2);
            p.at(0, 0) = p0;
            p.at(1, 0) = p1;
            double obj = 0;
            for (const RrhCombo& a : assignment) {
                double r = std::numeric_limits<double>::infinity();
                a.combo.tau.for_each(
                    [&](int u) { r = std::min(r, capacity(p, inst.channel, a.rrh, 0, u)); });
                obj += a.combo.tau.count() * r;
            }
            best = std::max(best, obj);
        }
    }
    CHECK(rep.objective == doctest::Approx(best).epsilon(1e-12));
    for (std::size_t i = 0; i < rep.powers.size(); ++i)
        CHECK(rep.powers[i] <= cfg.p_max(assignment[i].rrh, 0));
}

TEST_CASE("unit-capacity pair objective reproduces the 2r+r pattern") {
    const Instance inst = three_user_demo_instance();
    const std::vector<RrhCombo> assignment = {
        {0, {FileSet(0b011), UserSet(0b011)}}, // f0^f1 -> u0,u1
        {1, {FileSet(0b100), UserSet(0b100)}}, // f2 -> u2
    };
    const PowerSolveReport rep = solve_vertex_power(inst, 0, assignment);
    CHECK(rep.rates == std::vector<double>{1.0, 1.0});
    CHECK(rep.objective == 3.0);
}

TEST_CASE("coordinate ascent handles four active RRHs deterministically") {
    NetworkConfig cfg = small_config(21);
    cfg.num_rrhs = 4;
    cfg.num_users = 4;
    cfg.power_grid_points = 5;
    const Instance inst = generate_instance(cfg);
    std::vector<RrhCombo> assignment;
    for (int u = 0; u < 4; ++u) {
        const int f = inst.side_info.wants[u].first();
        assignment.push_back({u, {FileSet::single(f), UserSet::single(u)}});
    }
    const PowerSolveReport a = solve_vertex_power(inst, 0, assignment);
    const PowerSolveReport b = solve_vertex_power(inst, 0, assignment);
    CHECK(a.powers == b.powers);
    CHECK(a.objective == b.objective);
    CHECK(a.iterations > 0);
    // never worse than the all-max corner it starts from
    PowerMatrix corner = PowerMatrix::zero(4, 2);
    for (int u = 0; u < 4; ++u) corner.at(u, 0) = cfg.p_max(u, 0);
    double corner_obj = 0;
    for (const RrhCombo& asg : assignment) {
        double r = std::numeric_limits<double>::infinity();
        asg.combo.tau.for_each(
            [&](int u) { r = std::min(r, capacity(corner, inst.channel, asg.rrh, 0, u)); });
        corner_obj += asg.combo.tau.count() * r;
    }
    CHECK(a.objective >= corner_obj - 1e-12);
}

TEST_CASE("kkt update edge cases") {
    const NetworkConfig cfg = small_config(31);
    const Instance inst = generate_instance(cfg);
    FixedSchedule s = FixedSchedule::empty(2, 2);

    SUBCASE("empty own target set transmits nothing") {
        s.tau_at(1, 0) = UserSet(0b11);
        const PowerMatrix p = PowerMatrix::at_max(cfg);
        CHECK(kkt_power_update(s, p, 0, 0, inst) == 0.0);
    }
    SUBCASE("no scheduled interferers unlocks full power") {
        s.tau_at(0, 0) = UserSet(0b01);
        const PowerMatrix p = PowerMatrix::at_max(cfg);
        CHECK(kkt_power_update(s, p, 0, 0, inst) == cfg.p_max(0, 0));
    }
    SUBCASE("update stays inside the box") {
        s.tau_at(0, 0) = UserSet(0b01);
        s.tau_at(1, 0) = UserSet(0b10);
        PowerMatrix p = PowerMatrix::at_max(cfg);
        for (int sweep = 0; sweep < 5; ++sweep) {
            for (int b = 0; b < 2; ++b) {
                const double next = kkt_power_update(s, p, b, 0, inst);
                CHECK(next >= 0.0);
                CHECK(next <= cfg.p_max(b, 0));
                p.at(b, 0) = next;
            }
        }
    }
}

TEST_CASE("single-RRH iteration converges to full power in one sweep") {
    NetworkConfig cfg = small_config(41);
    cfg.num_rrhs = 1;
    const Instance inst = generate_instance(cfg);
    FixedSchedule s = FixedSchedule::empty(1, 2);
    s.tau_at(0, 0) = UserSet(0b01);
    s.tau_at(0, 1) = UserSet(0b10);
    const PowerIterationResult res =
        iterate_power(s, inst, PowerMatrix::at_max(cfg), 1e-9, 100);
    CHECK(res.converged);
    CHECK(res.sweeps == 1);
    CHECK(res.powers.at(0, 0) == cfg.p_max(0, 0));
    CHECK(res.powers.at(0, 1) == cfg.p_max(0, 1));
}

TEST_CASE("infinite tolerance returns the start unchanged with one record") {
    const NetworkConfig cfg = small_config(43);
    const Instance inst = generate_instance(cfg);
    FixedSchedule s = FixedSchedule::empty(2, 2);
    s.tau_at(0, 0) = UserSet(0b01);
    s.tau_at(1, 0) = UserSet(0b10);
    PowerMatrix p0 = PowerMatrix::at_max(cfg);
    p0.at(0, 0) *= 0.5;
    const PowerIterationResult res =
        iterate_power(s, inst, p0, std::numeric_limits<double>::infinity(), 100);
    CHECK(res.converged);
    CHECK(res.sweeps == 0);
    CHECK(res.objective_trace.size() == 1);
    CHECK(res.powers.at(0, 0) == p0.at(0, 0));
    // RRBs with no users are silenced even then
    CHECK(res.powers.at(0, 1) == 0.0);
    CHECK(res.powers.at(1, 1) == 0.0);
}

TEST_CASE("symmetric two-RRH iteration reaches a stationary point") {
    // hand-built symmetric channel: strong own link, weak cross link
    Instance inst;
    inst.config = small_config(0);
    inst.config.num_rrbs = 1;
    inst.config.num_users = 2;
    inst.config.p_max_watts = 1.0;
    inst.config.noise_density_w_per_hz = 0.1;
    inst.config.bandwidth_hz = 1.0;
    inst.channel.num_rrhs = 2;
    inst.channel.num_rrbs = 1;
    inst.channel.num_users = 2;
    inst.channel.noise_power = 0.1;
    inst.channel.gains = {1.0, 0.3, 0.3, 1.0}; // (b,u): own 1.0, cross 0.3
    inst.side_info.has.assign(2, FileSet{});
    inst.side_info.wants.assign(2, FileSet::single(0));

    FixedSchedule s = FixedSchedule::empty(2, 1);
    s.tau_at(0, 0) = UserSet(0b01);
    s.tau_at(1, 0) = UserSet(0b10);

    const PowerIterationResult res =
        iterate_power(s, inst, PowerMatrix::at_max(inst.config), 1e-8, 500);
    CHECK(res.converged);
    const double pa = res.final_powers.at(0, 0), pb = res.final_powers.at(1, 0);
    CHECK(pa == doctest::Approx(pb).epsilon(1e-6)); // symmetric fixed point

    for (int b = 0; b < 2; ++b) {
        const double p = res.final_powers.at(b, 0);
        const double h = 1e-6 * std::max(p, 1e-12);
        const double grad = fd_gradient(s, inst, res.final_powers, b, 0, h);
        if (p < inst.config.p_max_watts - 1e-9)
            CHECK(std::fabs(grad * p) < 1e-4);
        else
            CHECK(grad * p > -1e-4);
    }
}

TEST_CASE("random schedules: converged points are box-stationary, best iterate returned") {
    std::mt19937_64 rng(50);
    int converged_count = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const NetworkConfig cfg = small_config(1000 + trial);
        const Instance inst = generate_instance(cfg);
        const FixedSchedule s = random_schedule(inst, rng);

        const PowerIterationResult res =
            iterate_power(s, inst, PowerMatrix::at_max(cfg), 1e-8, 500);

        // returned iterate carries the best recorded objective
        const double returned = fixed_schedule_objective(s, res.powers, inst);
        for (double o : res.objective_trace) CHECK(returned >= o - 1e-9 * std::fabs(o) - 1e-12);
        CHECK(returned ==
              doctest::Approx(*std::max_element(res.objective_trace.begin(),
                                                res.objective_trace.end()))
                  .epsilon(1e-12));

        // objective never fell below the all-max starting point
        CHECK(returned >= res.objective_trace.front() - 1e-12);

        if (!res.converged) continue;
        ++converged_count;
        for (int b = 0; b < cfg.num_rrhs; ++b) {
            for (int z = 0; z < cfg.num_rrbs; ++z) {
                if (s.tau_at(b, z).empty()) {
                    CHECK(res.final_powers.at(b, z) == 0.0);
                    continue;
                }
                // scale-free residual p * dR/dp at the converged iterate:
                // exactly zero at an interior fixed point, nonnegative at the
                // cap; at p=0 a slightly powered-on RRB must not help
                const double p = res.final_powers.at(b, z);
                if (p <= 1e-9 * cfg.p_max(b, z)) {
                    // forward difference with a step inside the linear SINR
                    // regime of every user this RRB can reach
                    double h_lin = cfg.p_max(b, z);
                    for (int u = 0; u < cfg.num_users; ++u)
                        h_lin = std::min(h_lin, 0.01 * inst.channel.noise_power /
                                                    inst.channel.gain(b, z, u));
                    PowerMatrix up = res.final_powers;
                    up.at(b, z) = p + h_lin;
                    const double f0 = fixed_schedule_objective(s, res.final_powers, inst);
                    const double f1 = fixed_schedule_objective(s, up, inst);
                    CHECK(f1 - f0 <= 1e-3);
                    continue;
                }
                const double h = 1e-6 * p;
                const double grad = fd_gradient(s, inst, res.final_powers, b, z, h);
                if (p < cfg.p_max(b, z) * (1 - 1e-9))
                    CHECK(std::fabs(grad * p) < 1e-3);
                else
                    CHECK(grad * p > -1e-3);
            }
        }
    }
    // the fixed point iteration should settle for the vast majority of seeds
    CHECK(converged_count >= 45);
}
