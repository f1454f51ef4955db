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

#include <string>
#include <vector>

#include "cranidnc/sweep.hpp"

namespace cranidnc {

/// Renders one polyline per scheduler through the per-value trial means of
/// per_user_hz, with axes, ticks and a legend, on a fixed 800x600 canvas.
/// Self-contained SVG; colors derive from the scheduler name hash. Throws
/// ValidationError when rows is empty.
std::string render_plot_svg(const std::vector<ResultRow>& rows);

} // namespace cranidnc
