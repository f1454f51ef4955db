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

#include "cranidnc/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cranidnc {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw ValidationError("config field '" + field + "': " + what);
}

double expect_number(const json& j, const std::string& field) {
    if (!j.is_number()) field_error(field, "expected a number");
    return j.get<double>();
}

int expect_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) field_error(field, "expected an integer");
    return j.get<int>();
}

/// Reads `name` (watts) or `name_dbm`/`alt_dbm` with conversion; at most one
/// of the two spellings may appear.
void read_power_field(const json& j, const std::string& watts_key, const std::string& dbm_key,
                      double& out, bool density = false) {
    const bool has_w = j.contains(watts_key), has_d = j.contains(dbm_key);
    if (has_w && has_d) field_error(watts_key, "given in both watts and dBm");
    if (has_w) out = expect_number(j.at(watts_key), watts_key);
    if (has_d) out = dbm_to_watts(expect_number(j.at(dbm_key), dbm_key));
    (void)density;
}

const std::set<std::string>& known_config_keys() {
    static const std::set<std::string> keys = {
        "num_rrhs", "num_rrbs", "num_users", "num_files",
        "p_max_watts", "p_max_dbm", "p_max_override_watts",
        "noise_density_w_per_hz", "noise_density_dbm_per_hz",
        "bandwidth_hz", "cell_radius_m", "carrier_freq_hz",
        "has_probability", "max_coding_degree", "power_grid_points",
        "tolerance", "max_iterations", "file_size_bits", "rng_seed",
        "max_combinations", "max_subgraph_vertices", "clique_node_budget",
        "side_information_has", "capacity_override"};
    return keys;
}

NetworkConfig config_from_json(const json& j, InstanceOverrides& overrides) {
    if (!j.is_object()) throw ValidationError("config: top-level JSON value must be an object");
    for (const auto& [key, _] : j.items())
        if (!known_config_keys().count(key)) field_error(key, "unknown field");

    NetworkConfig cfg;
    auto get_int = [&](const char* k, int& out) {
        if (j.contains(k)) out = expect_int(j.at(k), k);
    };
    auto get_num = [&](const char* k, double& out) {
        if (j.contains(k)) out = expect_number(j.at(k), k);
    };
    get_int("num_rrhs", cfg.num_rrhs);
    get_int("num_rrbs", cfg.num_rrbs);
    get_int("num_users", cfg.num_users);
    get_int("num_files", cfg.num_files);
    read_power_field(j, "p_max_watts", "p_max_dbm", cfg.p_max_watts);
    if (j.contains("p_max_override_watts")) {
        const json& o = j.at("p_max_override_watts");
        if (!o.is_array()) field_error("p_max_override_watts", "expected [rrh][rrb] array");
        for (const json& row : o) {
            if (!row.is_array()) field_error("p_max_override_watts", "expected [rrh][rrb] array");
            for (const json& v : row)
                cfg.p_max_override_watts.push_back(expect_number(v, "p_max_override_watts"));
        }
    }
    read_power_field(j, "noise_density_w_per_hz", "noise_density_dbm_per_hz",
                     cfg.noise_density_w_per_hz, true);
    get_num("bandwidth_hz", cfg.bandwidth_hz);
    get_num("cell_radius_m", cfg.cell_radius_m);
    get_num("carrier_freq_hz", cfg.carrier_freq_hz);
    get_num("has_probability", cfg.has_probability);
    get_int("max_coding_degree", cfg.max_coding_degree);
    get_int("power_grid_points", cfg.power_grid_points);
    get_num("tolerance", cfg.tolerance);
    get_int("max_iterations", cfg.max_iterations);
    get_num("file_size_bits", cfg.file_size_bits);
    if (j.contains("rng_seed")) {
        if (!j.at("rng_seed").is_number_unsigned() && !j.at("rng_seed").is_number_integer())
            field_error("rng_seed", "expected an integer");
        cfg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    }
    if (j.contains("max_combinations"))
        cfg.max_combinations = j.at("max_combinations").get<std::size_t>();
    if (j.contains("max_subgraph_vertices"))
        cfg.max_subgraph_vertices = j.at("max_subgraph_vertices").get<std::size_t>();
    if (j.contains("clique_node_budget"))
        cfg.clique_node_budget = j.at("clique_node_budget").get<std::size_t>();

    if (j.contains("side_information_has")) {
        const json& h = j.at("side_information_has");
        if (!h.is_array()) field_error("side_information_has", "expected [user][file index] array");
        std::vector<std::vector<int>> sets;
        for (const json& row : h) {
            if (!row.is_array()) field_error("side_information_has", "expected per-user arrays");
            std::vector<int> files;
            for (const json& v : row) files.push_back(expect_int(v, "side_information_has"));
            sets.push_back(std::move(files));
        }
        overrides.has_sets = std::move(sets);
    }
    if (j.contains("capacity_override")) {
        const json& c = j.at("capacity_override");
        if (!c.is_array()) field_error("capacity_override", "expected [rrh][rrb][user] array");
        std::vector<double> flat;
        for (const json& per_b : c) {
            if (!per_b.is_array()) field_error("capacity_override", "expected [rrh][rrb][user]");
            for (const json& per_z : per_b) {
                if (!per_z.is_array()) field_error("capacity_override", "expected [rrh][rrb][user]");
                for (const json& v : per_z) flat.push_back(expect_number(v, "capacity_override"));
            }
        }
        overrides.capacity_override = std::move(flat);
    }

    cfg.validate();
    return cfg;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line number for the diagnostic
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
            if (text[i] == '\n') ++line;
        throw ValidationError("config parse error at line " + std::to_string(line) + ": " +
                              e.what());
    }
}

} // namespace

ParsedConfig parse_config_json(const std::string& text) {
    ParsedConfig parsed;
    parsed.config = config_from_json(parse_text(text), parsed.overrides);
    return parsed;
}

ParsedConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

std::string serialize_config(const NetworkConfig& c) {
    json j;
    j["num_rrhs"] = c.num_rrhs;
    j["num_rrbs"] = c.num_rrbs;
    j["num_users"] = c.num_users;
    j["num_files"] = c.num_files;
    j["p_max_watts"] = c.p_max_watts;
    if (!c.p_max_override_watts.empty()) {
        json rows = json::array();
        for (int b = 0; b < c.num_rrhs; ++b) {
            json row = json::array();
            for (int z = 0; z < c.num_rrbs; ++z)
                row.push_back(c.p_max_override_watts[static_cast<std::size_t>(b) * c.num_rrbs + z]);
            rows.push_back(row);
        }
        j["p_max_override_watts"] = rows;
    }
    j["noise_density_w_per_hz"] = c.noise_density_w_per_hz;
    j["bandwidth_hz"] = c.bandwidth_hz;
    j["cell_radius_m"] = c.cell_radius_m;
    j["carrier_freq_hz"] = c.carrier_freq_hz;
    j["has_probability"] = c.has_probability;
    j["max_coding_degree"] = c.max_coding_degree;
    j["power_grid_points"] = c.power_grid_points;
    j["tolerance"] = c.tolerance;
    j["max_iterations"] = c.max_iterations;
    j["file_size_bits"] = c.file_size_bits;
    j["rng_seed"] = c.rng_seed;
    j["max_combinations"] = c.max_combinations;
    j["max_subgraph_vertices"] = c.max_subgraph_vertices;
    j["clique_node_budget"] = c.clique_node_budget;
    return j.dump(2) + "\n";
}

Instance make_instance(const ParsedConfig& parsed, std::optional<std::uint64_t> seed_override) {
    NetworkConfig cfg = parsed.config;
    if (seed_override) cfg.rng_seed = *seed_override;
    Instance inst = generate_instance(cfg);

    if (parsed.overrides.has_sets) {
        const auto& sets = *parsed.overrides.has_sets;
        if (sets.size() != static_cast<std::size_t>(cfg.num_users))
            throw ValidationError("side_information_has: need one entry per user");
        const FileSet library = FileSet::first_n(cfg.num_files);
        for (int u = 0; u < cfg.num_users; ++u) {
            FileSet has;
            for (int f : sets[u]) {
                if (f < 0 || f >= cfg.num_files)
                    throw ValidationError("side_information_has: file index out of range");
                has.add(f);
            }
            inst.side_info.has[u] = has;
            inst.side_info.wants[u] = library.minus(has);
        }
        inst.side_info.validate(cfg.num_files);
        for (int u = 0; u < cfg.num_users; ++u)
            if (inst.side_info.wants[u].empty())
                throw ValidationError("side_information_has: user " + std::to_string(u) +
                                      " wants nothing");
    }
    if (parsed.overrides.capacity_override) {
        const auto& flat = *parsed.overrides.capacity_override;
        if (flat.size() != inst.channel.gains.size())
            throw ValidationError("capacity_override: need num_rrhs*num_rrbs*num_users entries");
        inst.channel.capacity_override = flat;
    }
    return inst;
}

void SweepSpec::validate() const {
    static const std::set<std::string> axes = {"users", "rrbs", "file_size", "p_max", "cell_size"};
    if (!axes.count(variable))
        throw ValidationError("sweep variable '" + variable +
                              "' (expected users|rrbs|file_size|p_max|cell_size)");
    if (values.empty()) throw ValidationError("sweep: values must be nonempty");
    if (!std::is_sorted(values.begin(), values.end()))
        throw ValidationError("sweep: values must be sorted ascending");
    if (schedulers.empty()) throw ValidationError("sweep: schedulers must be nonempty");
    if (trials < 1) throw ValidationError("sweep: trials must be >= 1");
    base_config.validate();
}

SweepSpec parse_sweep_json(const std::string& text) {
    const json j = parse_text(text);
    if (!j.is_object()) throw ValidationError("sweep spec: top-level JSON value must be an object");
    SweepSpec spec;
    if (!j.contains("variable")) field_error("variable", "missing");
    spec.variable = j.at("variable").get<std::string>();
    if (!j.contains("values")) field_error("values", "missing");
    for (const json& v : j.at("values")) spec.values.push_back(expect_number(v, "values"));
    if (!j.contains("schedulers")) field_error("schedulers", "missing");
    for (const json& s : j.at("schedulers")) spec.schedulers.push_back(s.get<std::string>());
    if (j.contains("trials")) spec.trials = expect_int(j.at("trials"), "trials");
    if (j.contains("base_config"))
        spec.base_config = config_from_json(j.at("base_config"), spec.overrides);
    spec.validate();
    return spec;
}

SweepSpec load_sweep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open sweep spec '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_sweep_json(ss.str());
}

NetworkConfig apply_sweep_value(const NetworkConfig& base, const std::string& variable,
                                double value) {
    NetworkConfig cfg = base;
    if (variable == "users")
        cfg.num_users = static_cast<int>(value);
    else if (variable == "rrbs")
        cfg.num_rrbs = static_cast<int>(value);
    else if (variable == "file_size")
        cfg.file_size_bits = value;
    else if (variable == "p_max")
        cfg.p_max_watts = value;
    else if (variable == "cell_size")
        cfg.cell_radius_m = value;
    else
        throw ValidationError("unknown sweep variable '" + variable + "'");
    cfg.validate();
    return cfg;
}

} // namespace cranidnc
