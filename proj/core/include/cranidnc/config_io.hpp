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

#include <optional>
#include <string>
#include <vector>

#include "cranidnc/model.hpp"

namespace cranidnc {

/// Optional golden-fixture overrides carried next to a config: explicit Has
/// sets (Wants becomes the complement) and/or a pinned capacity tensor.
struct InstanceOverrides {
    std::optional<std::vector<std::vector<int>>> has_sets;    // per user, held file indices
    std::optional<std::vector<double>> capacity_override;     // flat (b, z, u)
    bool any() const { return has_sets.has_value() || capacity_override.has_value(); }
};

struct ParsedConfig {
    NetworkConfig config;
    InstanceOverrides overrides;
};

/// Parses the JSON config schema. Power-like fields accept either a watts
/// key or its dBm-suffixed alternative (converted on parse); unknown keys
/// are rejected. Errors carry the offending line or field name.
ParsedConfig parse_config_json(const std::string& text);
ParsedConfig load_config_file(const std::string& path);

/// Canonical serialization (watts only). parse(serialize(c)) == c.
std::string serialize_config(const NetworkConfig& config);

/// Generates the instance and applies the overrides. A seed_override
/// replaces the config's rng_seed before generation.
Instance make_instance(const ParsedConfig& parsed,
                       std::optional<std::uint64_t> seed_override = std::nullopt);

/// One experiment axis: sweep `variable` over `values`, running every listed
/// scheduler `trials` times per value on per-trial seeded instances.
struct SweepSpec {
    std::string variable; // users | rrbs | file_size | p_max | cell_size
    std::vector<double> values;
    std::vector<std::string> schedulers;
    int trials = 1;
    NetworkConfig base_config;
    InstanceOverrides overrides;

    void validate() const;
};

SweepSpec parse_sweep_json(const std::string& text);
SweepSpec load_sweep_file(const std::string& path);

/// The base config with the swept variable set to `value`.
NetworkConfig apply_sweep_value(const NetworkConfig& base, const std::string& variable,
                                double value);

} // namespace cranidnc
