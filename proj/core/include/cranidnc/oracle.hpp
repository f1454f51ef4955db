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

#include "cranidnc/model.hpp"
#include "cranidnc/sched.hpp"

namespace cranidnc {

/// Exhaustive reference solver, implemented from the optimization problem
/// statement itself: it loops over user-to-RRH bindings, per-RRB payload
/// choices, and every gridded power matrix, sharing nothing with the graph,
/// clique, or power modules beyond the channel primitives and the
/// decodability predicate. Guarded to U<=4, B<=2, Z<=2, F<=3; larger
/// instances are refused with a ValidationError.
TransmissionPlan brute_force_best_plan(const Instance& instance, int power_grid_points);

} // namespace cranidnc
