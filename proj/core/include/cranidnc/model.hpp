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

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cranidnc/sets.hpp"

namespace cranidnc {

/// Raised when a configurable enumeration cap (combinations, subgraph
/// vertices) is exceeded.
class BudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised by validators when a plan or config violates one of its
/// constraints; the message names the violated constraint.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }

/// SplitMix64 finalizer; used to derive independent per-trial seeds from a
/// master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Static description of one scheduling epoch's network. All powers are in
/// linear watts; dBm-tagged inputs are converted at config parse time.
struct NetworkConfig {
    int num_rrhs = 3;  // B
    int num_rrbs = 2;  // Z
    int num_users = 5; // U
    int num_files = 3; // F

    double p_max_watts = 1.0; // uniform per-RRB power cap
    /// Optional per-(rrh,rrb) cap override, row-major B x Z. Empty = uniform.
    std::vector<double> p_max_override_watts;

    double noise_density_w_per_hz = dbm_to_watts(-168.60); // per Hz
    double bandwidth_hz = 10e6;
    double cell_radius_m = 500.0;
    double carrier_freq_hz = 2.5e9;

    double has_probability = 0.5; // chance a file is already held by a user
    int max_coding_degree = 0;    // cap on |kappa|; 0 = unlimited
    int power_grid_points = 33;   // grid resolution for the per-vertex solve
    double tolerance = 1e-6;      // relative convergence tolerance
    int max_iterations = 100;     // sweep/outer-loop iteration cap
    double file_size_bits = 1e6;  // N
    std::uint64_t rng_seed = 1;

    // Enumeration guards. Exceeding one raises BudgetError.
    std::size_t max_combinations = 100000;
    std::size_t max_subgraph_vertices = 200000;
    // DFS node cap for the exact clique solver; exceeding it degrades the
    // result to the incumbent, flagged.
    std::size_t clique_node_budget = 4000000;

    double p_max(int b, int z) const {
        return p_max_override_watts.empty() ? p_max_watts
                                            : p_max_override_watts[static_cast<std::size_t>(b) * num_rrbs + z];
    }
    double noise_power_watts() const { return noise_density_w_per_hz * bandwidth_hz; }

    /// Throws ValidationError on the first violated field constraint.
    void validate() const;
};

/// Per-(rrh, rrb, user) linear channel power gains plus receiver noise.
struct ChannelRealization {
    int num_rrhs = 0, num_rrbs = 0, num_users = 0;
    std::vector<double> gains; // |h|^2, row-major (b, z, u)
    double noise_power = 0.0;  // sigma^2, watts

    /// Golden-fixture hook: when nonempty (same shape as `gains`), capacities
    /// are read from here instead of being derived from SINR, which lets
    /// tests pin exact integer rate matrices that no power-consistent
    /// channel could produce. Never set by the generator.
    std::vector<double> capacity_override;

    double gain(int b, int z, int u) const {
        return gains[(static_cast<std::size_t>(b) * num_rrbs + z) * num_users + u];
    }
    double& gain(int b, int z, int u) {
        return gains[(static_cast<std::size_t>(b) * num_rrbs + z) * num_users + u];
    }
    bool has_override() const { return !capacity_override.empty(); }
    double override_at(int b, int z, int u) const {
        return capacity_override[(static_cast<std::size_t>(b) * num_rrbs + z) * num_users + u];
    }
};

/// B x Z matrix of transmit power levels, row-major.
struct PowerMatrix {
    int num_rrhs = 0, num_rrbs = 0;
    std::vector<double> p;

    static PowerMatrix zero(int b, int z) { return {b, z, std::vector<double>(static_cast<std::size_t>(b) * z, 0.0)}; }
    static PowerMatrix uniform(int b, int z, double value) {
        return {b, z, std::vector<double>(static_cast<std::size_t>(b) * z, value)};
    }
    /// All entries at their per-RRB cap.
    static PowerMatrix at_max(const NetworkConfig& cfg);

    double at(int b, int z) const { return p[static_cast<std::size_t>(b) * num_rrbs + z]; }
    double& at(int b, int z) { return p[static_cast<std::size_t>(b) * num_rrbs + z]; }
};

/// Per-user Has/Wants partition of the file library.
struct SideInformation {
    std::vector<FileSet> has;
    std::vector<FileSet> wants;

    int num_users() const { return static_cast<int>(has.size()); }
    /// Checks H and W partition the library for every user.
    void validate(int num_files) const;
};

struct Point2D {
    double x = 0, y = 0;
};

/// One immutable scheduling epoch: topology, channel and side information.
struct Instance {
    NetworkConfig config;
    ChannelRealization channel;
    SideInformation side_info;
    std::vector<Point2D> user_positions;
    std::vector<Point2D> rrh_positions;
};

/// Simplified suburban path-loss model: A + 10*gamma*log10(d/d0) dB with
/// d0 = 100 m, free-space intercept A at d0, and terrain-B exponent
/// gamma = a - b*hb + c/hb (a=4.0, b=0.0065/m, c=17.1 m, hb=30 m).
/// Distances are floored at 1 m. Returned as a linear power factor.
double path_loss_linear(double distance_m, double carrier_freq_hz);

/// Point-in-regular-hexagon test (flat-top, centered at origin,
/// circumradius r).
bool point_in_hexagon(Point2D p, double circumradius);

/// Draws one scheduling epoch: RRHs equally spaced on a circle of radius
/// cell_radius/2 (an equilateral triangle when B=3), users uniform in the
/// hexagonal cell, Rayleigh-faded path-loss gains, and Bernoulli(mu) side
/// information with an empty Wants set repaired by moving one random held
/// file back to Wants. Bit-identical output for identical (config, seed).
Instance generate_instance(const NetworkConfig& config);

/// Eq.-style SINR of user u on RRB z of RRH b: own received power over
/// noise plus same-RRB interference from the other RRHs.
double sinr(const PowerMatrix& p, const ChannelRealization& ch, int b, int z, int u);

/// Achievable spectral efficiency log2(1 + SINR), bits/s/Hz. Honors the
/// fixture capacity override when present.
double capacity(const PowerMatrix& p, const ChannelRealization& ch, int b, int z, int u);

/// Sorted distinct user capacities on RRB (b, z): the candidate
/// transmission rates of that RRB under power matrix p.
std::vector<double> rate_set(const PowerMatrix& p, const ChannelRealization& ch, int b, int z);

/// Evenly spaced candidate power levels {0, delta, ..., p_max},
/// delta = p_max / (points - 1).
std::vector<double> make_power_grid(double p_max, int points);

} // namespace cranidnc
