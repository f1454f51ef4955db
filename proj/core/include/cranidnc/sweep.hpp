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

#include <iosfwd>
#include <string>
#include <vector>

#include "cranidnc/config_io.hpp"

namespace cranidnc {

inline constexpr const char* kResultCsvHeader =
    "variable,value,scheduler,seed,sum_rate,per_user_hz,delivered_bits,wall_ms,flags";

struct ResultRow {
    std::string variable;
    double value = 0;
    std::string scheduler;
    std::uint64_t seed = 0;
    double sum_rate = 0, per_user_hz = 0, delivered_bits = 0;
    double wall_ms = 0;
    std::string flags; // ';'-joined plan flags, empty when clean
};

struct SweepOutcome {
    std::vector<ResultRow> rows;
    bool any_flagged = false;
};

/// Runs the sweep's (value, trial) grid on a worker pool. Each trial's
/// instance is generated once from a per-trial seed (master seed mixed with
/// the trial index) and fed to every scheduler. Row order is fixed: value
/// ascending, scheduler in spec order, trial ascending, independent of the
/// thread count. Timings are recorded only when measure_timings is set, so
/// the default output is bitwise reproducible.
SweepOutcome run_sweep(const SweepSpec& spec, int threads, bool measure_timings = false);

void write_result_csv(std::ostream& os, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_result_csv(std::istream& is);

} // namespace cranidnc
