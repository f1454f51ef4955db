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

#include "cranidnc/model.hpp"

#include <algorithm>
#include <random>

namespace cranidnc {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

/// Uniform double in [0, 1) from the top 53 bits of the generator output.
/// Hand-rolled so instance generation does not depend on the standard
/// library's distribution implementations.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Unit-mean exponential draw by inverse CDF (Rayleigh power fading factor).
double exponential1(std::mt19937_64& rng) {
    return -std::log1p(-uniform01(rng));
}

} // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed + stream + 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void NetworkConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ValidationError("config: " + msg); };
    if (num_rrhs < 1) fail("num_rrhs must be >= 1");
    if (num_rrbs < 1) fail("num_rrbs must be >= 1");
    if (num_users < 1) fail("num_users must be >= 1");
    if (num_files < 1) fail("num_files must be >= 1");
    if (num_users > 64) fail("num_users must be <= 64 (bitmask set bound)");
    if (num_files > 64) fail("num_files must be <= 64 (bitmask set bound)");
    if (p_max_watts <= 0) fail("p_max_watts must be > 0");
    if (!p_max_override_watts.empty()) {
        if (p_max_override_watts.size() != static_cast<std::size_t>(num_rrhs) * num_rrbs)
            fail("p_max_override_watts must have num_rrhs * num_rrbs entries");
        for (double v : p_max_override_watts)
            if (v <= 0) fail("p_max_override_watts entries must be > 0");
    }
    if (noise_density_w_per_hz <= 0) fail("noise_density_w_per_hz must be > 0");
    if (bandwidth_hz <= 0) fail("bandwidth_hz must be > 0");
    if (cell_radius_m <= 0) fail("cell_radius_m must be > 0");
    if (carrier_freq_hz <= 0) fail("carrier_freq_hz must be > 0");
    if (has_probability < 0 || has_probability >= 1) fail("has_probability must lie in [0, 1)");
    if (max_coding_degree < 0) fail("max_coding_degree must be >= 0 (0 = unlimited)");
    if (power_grid_points < 2) fail("power_grid_points must be >= 2");
    if (tolerance <= 0) fail("tolerance must be > 0");
    if (max_iterations < 1) fail("max_iterations must be >= 1");
    if (file_size_bits <= 0) fail("file_size_bits must be > 0");
}

PowerMatrix PowerMatrix::at_max(const NetworkConfig& cfg) {
    PowerMatrix m = zero(cfg.num_rrhs, cfg.num_rrbs);
    for (int b = 0; b < cfg.num_rrhs; ++b)
        for (int z = 0; z < cfg.num_rrbs; ++z) m.at(b, z) = cfg.p_max(b, z);
    return m;
}

void SideInformation::validate(int num_files) const {
    const FileSet library = FileSet::first_n(num_files);
    if (has.size() != wants.size()) throw ValidationError("side info: has/wants size mismatch");
    for (std::size_t u = 0; u < has.size(); ++u) {
        if (has[u].intersects(wants[u]))
            throw ValidationError("side info: Has and Wants overlap for user " + std::to_string(u));
        if ((has[u] | wants[u]) != library)
            throw ValidationError("side info: Has and Wants do not cover the library for user " +
                                  std::to_string(u));
    }
}

double path_loss_linear(double distance_m, double carrier_freq_hz) {
    constexpr double d0 = 100.0;
    constexpr double a = 4.0, b = 0.0065, c = 17.1, hb = 30.0;
    const double gamma = a - b * hb + c / hb;
    const double lambda = kSpeedOfLight / carrier_freq_hz;
    const double intercept_db = 20.0 * std::log10(4.0 * M_PI * d0 / lambda);
    const double d = std::max(distance_m, 1.0);
    const double pl_db = intercept_db + 10.0 * gamma * std::log10(d / d0);
    return std::pow(10.0, -pl_db / 10.0);
}

bool point_in_hexagon(Point2D p, double r) {
    const double x = std::fabs(p.x), y = std::fabs(p.y);
    const double s3 = std::sqrt(3.0);
    return y <= s3 * r / 2.0 && s3 * x + y <= s3 * r;
}

Instance generate_instance(const NetworkConfig& config) {
    config.validate();
    Instance inst;
    inst.config = config;

    const int B = config.num_rrhs, Z = config.num_rrbs, U = config.num_users, F = config.num_files;
    std::mt19937_64 rng(config.rng_seed);

    // RRHs: equally spaced on a circle of half the cell radius, first one due
    // north. For B=3 this is the equilateral-triangle layout.
    inst.rrh_positions.resize(B);
    for (int b = 0; b < B; ++b) {
        const double ang = M_PI / 2.0 + 2.0 * M_PI * b / B;
        inst.rrh_positions[b] = {config.cell_radius_m / 2.0 * std::cos(ang),
                                 config.cell_radius_m / 2.0 * std::sin(ang)};
    }

    // Users: uniform in the hexagonal cell via rejection from the bounding box.
    inst.user_positions.resize(U);
    for (int u = 0; u < U; ++u) {
        Point2D p;
        do {
            p.x = uniform(rng, -config.cell_radius_m, config.cell_radius_m);
            p.y = uniform(rng, -config.cell_radius_m, config.cell_radius_m);
        } while (!point_in_hexagon(p, config.cell_radius_m));
        inst.user_positions[u] = p;
    }

    // Channel: distance-dependent path loss times an independent Rayleigh
    // power factor per (b, z, u).
    inst.channel.num_rrhs = B;
    inst.channel.num_rrbs = Z;
    inst.channel.num_users = U;
    inst.channel.noise_power = config.noise_power_watts();
    inst.channel.gains.resize(static_cast<std::size_t>(B) * Z * U);
    for (int b = 0; b < B; ++b) {
        for (int z = 0; z < Z; ++z) {
            for (int u = 0; u < U; ++u) {
                const double dx = inst.user_positions[u].x - inst.rrh_positions[b].x;
                const double dy = inst.user_positions[u].y - inst.rrh_positions[b].y;
                const double dist = std::hypot(dx, dy);
                inst.channel.gain(b, z, u) =
                    path_loss_linear(dist, config.carrier_freq_hz) * exponential1(rng);
            }
        }
    }

    // Side information: each file held independently with probability mu;
    // a user holding everything gets one uniformly chosen file moved back to
    // Wants so every user stays schedulable.
    inst.side_info.has.assign(U, FileSet{});
    inst.side_info.wants.assign(U, FileSet{});
    for (int u = 0; u < U; ++u) {
        for (int f = 0; f < F; ++f) {
            if (uniform01(rng) < config.has_probability)
                inst.side_info.has[u].add(f);
            else
                inst.side_info.wants[u].add(f);
        }
        if (inst.side_info.wants[u].empty()) {
            const int pick = static_cast<int>(rng() % static_cast<std::uint64_t>(F));
            inst.side_info.has[u].remove(pick);
            inst.side_info.wants[u].add(pick);
        }
    }
    inst.side_info.validate(F);
    return inst;
}

double sinr(const PowerMatrix& p, const ChannelRealization& ch, int b, int z, int u) {
    double interference = 0.0;
    for (int other = 0; other < ch.num_rrhs; ++other)
        if (other != b) interference += p.at(other, z) * ch.gain(other, z, u);
    return p.at(b, z) * ch.gain(b, z, u) / (ch.noise_power + interference);
}

double capacity(const PowerMatrix& p, const ChannelRealization& ch, int b, int z, int u) {
    if (ch.has_override()) return ch.override_at(b, z, u);
    return std::log2(1.0 + sinr(p, ch, b, z, u));
}

std::vector<double> rate_set(const PowerMatrix& p, const ChannelRealization& ch, int b, int z) {
    std::vector<double> rates(ch.num_users);
    for (int u = 0; u < ch.num_users; ++u) rates[u] = capacity(p, ch, b, z, u);
    std::sort(rates.begin(), rates.end());
    rates.erase(std::unique(rates.begin(), rates.end()), rates.end());
    return rates;
}

std::vector<double> make_power_grid(double p_max, int points) {
    std::vector<double> grid(points);
    const double delta = p_max / (points - 1);
    for (int i = 0; i < points; ++i) grid[i] = i * delta;
    grid.back() = p_max; // exact endpoint
    return grid;
}

} // namespace cranidnc
