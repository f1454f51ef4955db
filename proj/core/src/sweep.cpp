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

#include "cranidnc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "cranidnc/sched.hpp"

namespace cranidnc {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (const std::string& f : flags) {
        if (!out.empty()) out += ';';
        out += f;
    }
    return out;
}

} // namespace

SweepOutcome run_sweep(const SweepSpec& spec, int threads, bool measure_timings) {
    spec.validate();
    for (const std::string& name : spec.schedulers)
        if (std::find(scheduler_names().begin(), scheduler_names().end(), name) ==
            scheduler_names().end())
            throw ValidationError("sweep: unknown scheduler '" + name + "'");

    const std::size_t n_values = spec.values.size();
    const std::size_t n_sched = spec.schedulers.size();
    const std::size_t n_trials = static_cast<std::size_t>(spec.trials);

    SweepOutcome out;
    out.rows.resize(n_values * n_sched * n_trials);
    // row slot for (value vi, scheduler si, trial t): values outermost,
    // schedulers next, trials innermost
    auto slot = [&](std::size_t vi, std::size_t si, std::size_t t) {
        return (vi * n_sched + si) * n_trials + t;
    };

    struct Task {
        std::size_t vi, trial;
    };
    std::vector<Task> tasks;
    tasks.reserve(n_values * n_trials);
    for (std::size_t vi = 0; vi < n_values; ++vi)
        for (std::size_t t = 0; t < n_trials; ++t) tasks.push_back({vi, t});

    std::atomic<bool> any_flagged{false};
    std::atomic<std::size_t> cursor{0};

    auto run_task = [&](const Task& task) {
        const double value = spec.values[task.vi];
        const std::uint64_t seed = mix_seed(spec.base_config.rng_seed, task.trial);
        ParsedConfig parsed{apply_sweep_value(spec.base_config, spec.variable, value),
                            spec.overrides};
        const Instance instance = make_instance(parsed, seed);
        for (std::size_t si = 0; si < n_sched; ++si) {
            ResultRow row;
            row.variable = spec.variable;
            row.value = value;
            row.scheduler = spec.schedulers[si];
            row.seed = seed;
            const auto start = std::chrono::steady_clock::now();
            try {
                const TransmissionPlan plan = run_scheduler(row.scheduler, instance);
                row.sum_rate = plan.sum_rate;
                row.per_user_hz = plan.per_user_hz;
                row.delivered_bits = plan.delivered_bits;
                row.flags = join_flags(plan.flags);
            } catch (const BudgetError&) {
                row.flags = "enumeration-budget-exceeded";
            }
            if (measure_timings) {
                const auto stop = std::chrono::steady_clock::now();
                row.wall_ms =
                    std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(stop -
                                                                                          start)
                        .count();
            }
            if (!row.flags.empty()) any_flagged = true;
            out.rows[slot(task.vi, si, task.trial)] = std::move(row);
        }
    };

    const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
    if (n_threads == 1) {
        for (const Task& t : tasks) run_task(t);
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) {
            pool.emplace_back([&] {
                for (std::size_t k = cursor.fetch_add(1); k < tasks.size();
                     k = cursor.fetch_add(1))
                    run_task(tasks[k]);
            });
        }
        for (auto& th : pool) th.join();
    }
    out.any_flagged = any_flagged;
    return out;
}

void write_result_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << kResultCsvHeader << "\n";
    for (const ResultRow& r : rows) {
        os << r.variable << ',' << format_double(r.value) << ',' << r.scheduler << ',' << r.seed
           << ',' << format_double(r.sum_rate) << ',' << format_double(r.per_user_hz) << ','
           << format_double(r.delivered_bits) << ',' << format_double(r.wall_ms) << ',' << r.flags
           << "\n";
    }
}

std::vector<ResultRow> read_result_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ValidationError("result CSV: empty file");
    if (line != kResultCsvHeader)
        throw ValidationError("result CSV: unexpected header '" + line + "'");
    std::vector<ResultRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");
        if (fields.size() != 9)
            throw ValidationError("result CSV: malformed row '" + line + "'");
        ResultRow r;
        r.variable = fields[0];
        r.value = std::stod(fields[1]);
        r.scheduler = fields[2];
        r.seed = std::stoull(fields[3]);
        r.sum_rate = std::stod(fields[4]);
        r.per_user_hz = std::stod(fields[5]);
        r.delivered_bits = std::stod(fields[6]);
        r.wall_ms = std::stod(fields[7]);
        r.flags = fields[8];
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace cranidnc
