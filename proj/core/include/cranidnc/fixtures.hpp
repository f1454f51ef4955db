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

namespace cranidnc {

/// Three users, three files, two RRHs, one RRB each; user i wants file i and
/// holds the other two; every capacity pinned to 1 bit/s/Hz. The canonical
/// walkthrough instance used by the demo and the golden tests.
Instance three_user_demo_instance();

/// Same topology and side information, but with the per-(user, RRH) capacity
/// matrix {{1,2},{3,1},{2,2}} driving the fixed-power scheduling graph.
Instance rate_matrix_demo_instance();

} // namespace cranidnc
