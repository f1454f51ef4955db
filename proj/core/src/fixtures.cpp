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

#include "cranidnc/fixtures.hpp"

namespace cranidnc {

namespace {

Instance base_three_user_instance() {
    Instance inst;
    NetworkConfig& cfg = inst.config;
    cfg.num_rrhs = 2;
    cfg.num_rrbs = 1;
    cfg.num_users = 3;
    cfg.num_files = 3;
    cfg.p_max_watts = 1.0;
    cfg.noise_density_w_per_hz = 1.0;
    cfg.bandwidth_hz = 1.0; // sigma^2 = 1
    cfg.cell_radius_m = 500.0;
    cfg.power_grid_points = 9;
    cfg.rng_seed = 0;
    cfg.validate();

    inst.channel.num_rrhs = 2;
    inst.channel.num_rrbs = 1;
    inst.channel.num_users = 3;
    inst.channel.noise_power = cfg.noise_power_watts();
    inst.channel.gains.assign(2 * 1 * 3, 1.0);

    inst.side_info.has.assign(3, FileSet{});
    inst.side_info.wants.assign(3, FileSet{});
    for (int u = 0; u < 3; ++u) {
        inst.side_info.wants[u] = FileSet::single(u);
        inst.side_info.has[u] = FileSet::first_n(3).minus(FileSet::single(u));
    }
    inst.side_info.validate(3);

    inst.rrh_positions = {{-125.0, 0.0}, {125.0, 0.0}};
    inst.user_positions = {{-200.0, 0.0}, {0.0, 100.0}, {200.0, 0.0}};
    return inst;
}

} // namespace

Instance three_user_demo_instance() {
    Instance inst = base_three_user_instance();
    inst.channel.capacity_override.assign(2 * 1 * 3, 1.0);
    return inst;
}

Instance rate_matrix_demo_instance() {
    Instance inst = base_three_user_instance();
    // capacity of user u at RRH b, one RRB
    const double rate_matrix[3][2] = {{1, 2}, {3, 1}, {2, 2}};
    inst.channel.capacity_override.assign(2 * 1 * 3, 0.0);
    for (int b = 0; b < 2; ++b)
        for (int u = 0; u < 3; ++u)
            inst.channel.capacity_override[static_cast<std::size_t>(b) * 3 + u] =
                rate_matrix[u][b];
    return inst;
}

} // namespace cranidnc
