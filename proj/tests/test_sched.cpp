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

#include "cranidnc/fixtures.hpp"
#include "cranidnc/sched.hpp"

using namespace cranidnc;

namespace {

NetworkConfig guarded_config(std::uint64_t seed) {
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

Instance no_wants_instance() {
    Instance inst = three_user_demo_instance();
    for (int u = 0; u < 3; ++u) {
        inst.side_info.has[u] = FileSet::first_n(3);
        inst.side_info.wants[u] = FileSet{};
    }
    return inst;
}

} // namespace

TEST_CASE("three-user fixture: joint reaches 3, uncoded reaches 2") {
    const Instance inst = three_user_demo_instance();

    const TransmissionPlan joint = schedule_joint(inst);
    CHECK(joint.sum_rate == 3.0);
    CHECK(joint.solver == "exact");
    CHECK(evaluate(joint, inst).per_user_hz == 1.0);

    const TransmissionPlan uncoded = schedule_uncoded_joint(inst);
    CHECK(uncoded.sum_rate == 2.0);
    CHECK_NOTHROW(evaluate(uncoded, inst));

    const TransmissionPlan iterative = schedule_iterative(inst);
    CHECK(iterative.sum_rate == 3.0);
    CHECK_NOTHROW(evaluate(iterative, inst));
}

TEST_CASE("three-user fixture: rate-unaware greedy fills one RRB with everyone") {
    const Instance inst = three_user_demo_instance();
    const TransmissionPlan plan = schedule_classical_idnc(inst);
    CHECK_NOTHROW(evaluate(plan, inst));
    // the all-user combination wins the first cell at the common unit rate
    CHECK(plan.cell(0, 0).combo.tau == UserSet(0b111));
    CHECK(plan.cell(0, 0).combo.kappa == FileSet(0b111));
    CHECK(plan.cell(0, 0).rate == 1.0);
    CHECK(plan.cell(1, 0).combo.tau.empty());
    CHECK(plan.sum_rate == 3.0);
}

TEST_CASE("three-user fixture: rate-greedy mixes everyone on the tied first RRB") {
    const Instance inst = three_user_demo_instance();
    const TransmissionPlan plan = schedule_rlnc(inst);
    CHECK_NOTHROW(evaluate(plan, inst));
    CHECK(plan.cell(0, 0).combo.tau == UserSet(0b111)); // ties resolve to (0,0)
    CHECK(plan.cell(0, 0).rlnc);
    CHECK(plan.sum_rate == 3.0);
}

TEST_CASE("empty wants produce empty plans across schedulers") {
    const Instance inst = no_wants_instance();
    for (const std::string& name : scheduler_names()) {
        const TransmissionPlan plan = run_scheduler(name, inst);
        CHECK(plan.sum_rate == 0.0);
        CHECK(plan.delivered_bits == 0.0);
        const EvalMetrics m = evaluate(plan, inst);
        CHECK(m.sum_rate == 0.0);
    }
}

TEST_CASE("single user rides every RRB of its best RRH") {
    NetworkConfig cfg = guarded_config(4242);
    cfg.num_users = 1;
    cfg.num_files = 2;
    const Instance inst = generate_instance(cfg);
    const TransmissionPlan plan = schedule_joint(inst);
    CHECK_NOTHROW(evaluate(plan, inst));

    // expected: pick the RRH maximizing the solo full-power rate sum
    double expected = 0;
    for (int b = 0; b < cfg.num_rrhs; ++b) {
        double total = 0;
        for (int z = 0; z < cfg.num_rrbs; ++z) {
            PowerMatrix p = PowerMatrix::zero(cfg.num_rrhs, cfg.num_rrbs);
            p.at(b, z) = cfg.p_max(b, z);
            total += capacity(p, inst.channel, b, z, 0);
        }
        expected = std::max(expected, total);
    }
    CHECK(plan.sum_rate == doctest::Approx(expected).epsilon(1e-12));
    // uncoded means exactly one user per cell, so the same value
    CHECK(schedule_uncoded_joint(inst).sum_rate == doctest::Approx(expected).epsilon(1e-12));
    // max power coincides: a solo RRH transmits at the cap anyway
    CHECK(schedule_max_power(inst).sum_rate == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("interference-free topology makes max_power equal to joint") {
    NetworkConfig cfg = guarded_config(7);
    cfg.num_rrhs = 1;
    const Instance inst = generate_instance(cfg);
    const TransmissionPlan a = schedule_joint(inst);
    const TransmissionPlan b = schedule_max_power(inst);
    CHECK(a.sum_rate == b.sum_rate);
}

TEST_CASE("dominance ordering on random guarded instances") {
    for (std::uint64_t seed = 100; seed < 115; ++seed) {
        const Instance inst = generate_instance(guarded_config(seed));
        const TransmissionPlan joint = schedule_joint(inst);
        const TransmissionPlan uncoded = schedule_uncoded_joint(inst);
        const TransmissionPlan maxp = schedule_max_power(inst);

        CHECK(joint.sum_rate >= uncoded.sum_rate - 1e-12);
        CHECK(joint.sum_rate >= maxp.sum_rate - 1e-12);
        CHECK(uncoded.sum_rate >= 0.0);

        for (const std::string& name : scheduler_names()) {
            const TransmissionPlan plan = run_scheduler(name, inst);
            CHECK_NOTHROW(evaluate(plan, inst));
        }
    }
}

TEST_CASE("schedulers are deterministic") {
    const Instance inst = generate_instance(guarded_config(55));
    for (const std::string& name : scheduler_names()) {
        const TransmissionPlan a = run_scheduler(name, inst);
        const TransmissionPlan b = run_scheduler(name, inst);
        CHECK(a.sum_rate == b.sum_rate);
        for (int bb = 0; bb < inst.config.num_rrhs; ++bb) {
            for (int z = 0; z < inst.config.num_rrbs; ++z) {
                CHECK(a.cell(bb, z).combo == b.cell(bb, z).combo);
                CHECK(a.cell(bb, z).rate == b.cell(bb, z).rate);
                CHECK(a.cell(bb, z).power == b.cell(bb, z).power);
            }
        }
    }
}

TEST_CASE("classical greedy never serves a user twice") {
    for (std::uint64_t seed = 300; seed < 310; ++seed) {
        const Instance inst = generate_instance(guarded_config(seed));
        const TransmissionPlan plan = schedule_classical_idnc(inst);
        std::vector<int> times(inst.config.num_users, 0);
        for (int b = 0; b < inst.config.num_rrhs; ++b)
            for (int z = 0; z < inst.config.num_rrbs; ++z)
                plan.cell(b, z).combo.tau.for_each([&](int u) { ++times[u]; });
        for (int t : times) CHECK(t <= 1);
        CHECK_NOTHROW(evaluate(plan, inst));
    }
}

TEST_CASE("iterative run: nondecreasing best trace, ends at or above the start") {
    for (std::uint64_t seed = 500; seed < 510; ++seed) {
        const Instance inst = generate_instance(guarded_config(seed));
        const IterativeRun run = schedule_iterative_traced(inst);
        REQUIRE_FALSE(run.best_objective_trace.empty());
        CHECK(std::is_sorted(run.best_objective_trace.begin(), run.best_objective_trace.end()));
        CHECK(run.plan.sum_rate ==
              doctest::Approx(run.best_objective_trace.back()).epsilon(1e-12));
        CHECK(run.plan.sum_rate >= run.objective_per_iteration.front() - 1e-12);
        CHECK_NOTHROW(evaluate(run.plan, inst));
    }
}

TEST_CASE("interference-free iterative settles at the second outer pass") {
    NetworkConfig cfg = guarded_config(77);
    cfg.num_rrhs = 1;
    const Instance inst = generate_instance(cfg);
    const IterativeRun run = schedule_iterative_traced(inst);
    CHECK(run.converged);
    CHECK(run.iterations == 2);
    CHECK(run.objective_per_iteration[0] ==
          doctest::Approx(run.objective_per_iteration[1]).epsilon(1e-12));
}

TEST_CASE("budget starvation degrades joint to a flagged incumbent") {
    NetworkConfig cfg = guarded_config(88);
    const Instance inst = generate_instance(cfg);
    JointOptions opts;
    opts.node_budget = 1;
    const TransmissionPlan plan = schedule_joint(inst, opts);
    CHECK(plan.has_flag("budget-degraded"));
    CHECK(plan.solver == "exact-incumbent");
    CHECK_NOTHROW(evaluate(plan, inst)); // still a valid schedule
    const TransmissionPlan greedy = [&] {
        JointOptions o;
        o.use_exact = false;
        return schedule_joint(inst, o);
    }();
    CHECK(plan.sum_rate >= greedy.sum_rate - 1e-12);
}

TEST_CASE("evaluate rejects corrupted plans with the violated constraint named") {
    const Instance inst = three_user_demo_instance();
    TransmissionPlan plan = schedule_joint(inst);

    SUBCASE("user on two RRHs") {
        // clone u0's service onto the other RRH
        TransmissionPlan bad = plan;
        int src_b = -1;
        for (int b = 0; b < 2; ++b)
            if (bad.cell(b, 0).combo.tau.contains(0)) src_b = b;
        REQUIRE(src_b >= 0);
        PlanCell& other = bad.cell(1 - src_b, 0);
        other.combo = {FileSet::single(0), UserSet::single(0)};
        other.rate = 1.0;
        CHECK_THROWS_WITH_AS(evaluate(bad, inst), doctest::Contains("(4c)"), ValidationError);
    }
    SUBCASE("rate above capacity") {
        TransmissionPlan bad = plan;
        for (int b = 0; b < 2; ++b) {
            if (!bad.cell(b, 0).combo.tau.empty()) {
                bad.cell(b, 0).rate = 5.0;
                break;
            }
        }
        CHECK_THROWS_WITH_AS(evaluate(bad, inst), doctest::Contains("(4d)"), ValidationError);
    }
    SUBCASE("power above the cap") {
        TransmissionPlan bad = plan;
        bad.cell(0, 0).power = inst.config.p_max_watts * 2;
        CHECK_THROWS_WITH_AS(evaluate(bad, inst), doctest::Contains("(4e)"), ValidationError);
    }
    SUBCASE("stale bookkeeping") {
        TransmissionPlan bad = plan;
        bad.user_rrh[0] = -1;
        CHECK_THROWS_WITH_AS(evaluate(bad, inst), doctest::Contains("(4b)"), ValidationError);
    }
    SUBCASE("stored metric drift") {
        TransmissionPlan bad = plan;
        bad.sum_rate += 0.5;
        CHECK_THROWS_AS(evaluate(bad, inst), ValidationError);
    }
}

TEST_CASE("empty plan evaluates to zeros") {
    const Instance inst = three_user_demo_instance();
    TransmissionPlan plan;
    plan.num_rrhs = 2;
    plan.num_rrbs = 1;
    plan.num_users = 3;
    plan.cells.assign(2, PlanCell{});
    plan.user_rrh.assign(3, -1);
    finalize_plan_metrics(plan, inst);
    const EvalMetrics m = evaluate(plan, inst);
    CHECK(m.sum_rate == 0.0);
    CHECK(m.delivered_bits == 0.0);
    CHECK(m.per_user_hz == 0.0);
}

TEST_CASE("delivered bits scale exactly linearly in the file size") {
    NetworkConfig cfg = guarded_config(909);
    cfg.file_size_bits = 1e6;
    const Instance base = generate_instance(cfg);
    const TransmissionPlan p1 = schedule_joint(base);

    cfg.file_size_bits = 3e6;
    Instance scaled = base;
    scaled.config = cfg;
    const TransmissionPlan p3 = schedule_joint(scaled);

    CHECK(p1.sum_rate == p3.sum_rate); // schedule untouched by N
    CHECK(p3.delivered_bits == 3.0 * p1.delivered_bits);
}
