/*
* Copyright (C) 2026 The FIRST-MCS Authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#include "first/config.hpp"
#include "first/error.hpp"

#include <fmt/format.h>

#include <fstream>

namespace first
{

const nlohmann::json& default_config()
{
    // 20x20 sectors over roughly 4 km x 4 km of central Rome
    static const nlohmann::json defaults = {
        {"grid_rows", 20},
        {"grid_cols", 20},
        {"lat_min", 41.8822},
        {"lat_max", 41.9182},
        {"lon_min", 12.4585},
        {"lon_max", 12.5068},
        {"duration_min", 240},
        {"timestep_min", 5},
        {"validation_window_min", 5},
        {"estimate_interval_min", 5},
        {"users", 2000},
        {"attackers", 1200},
        {"mtps", 400},
        {"honest_pf", 0.01},
        {"attack", "corruption"},
        {"attacker_pf", 0.8},
        {"onoff_on", 10},
        {"onoff_off", 10},
        {"collusion_groups", 3},
        {"collusion_targets", nlohmann::json::array()},
        {"categories", 2},
        {"truth_anomaly_prob", 0.5},
        {"truth_redraw_prob", 1.0},
        {"mobility", "distribution"},
        {"distribution", "uniform"},
        {"map_file", ""},
        {"lea_threshold", 128},
        {"traces_file", ""},
        {"classifier", "first"},
        {"decision_rule", "argmax"},
        {"seed", 1},
        {"adaptive", false},
        {"eps_max", 0.1},
        {"m_max", 0},
        {"dominated_window_share", 0.6},
    };
    return defaults;
}

namespace
{

template <class T>
T get(const nlohmann::json& j, const char* key)
{
    try {
        return j.at(key).get<T>();
    }
    catch (const nlohmann::json::exception& e) {
        throw ConfigError(fmt::format("key '{}': {}", key, e.what()));
    }
}

// unsigned integers must be given as non-negative JSON integers
std::size_t get_count(const nlohmann::json& j, const char* key)
{
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(fmt::format("key '{}' must be a non-negative integer", key));
    }
    return v.get<std::size_t>();
}

std::int64_t get_int(const nlohmann::json& j, const char* key)
{
    const auto& v = j.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(fmt::format("key '{}' must be an integer", key));
    }
    return v.get<std::int64_t>();
}

double get_real(const nlohmann::json& j, const char* key)
{
    const auto& v = j.at(key);
    if (!v.is_number()) {
        throw ConfigError(fmt::format("key '{}' must be a number", key));
    }
    return v.get<double>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

} // namespace

MobilityDistribution resolve_distribution(const nlohmann::json& eff, const std::filesystem::path& base_dir)
{
    const SectorGrid grid(get_count(eff, "grid_rows"), get_count(eff, "grid_cols"),
                          BoundingBox{get_real(eff, "lat_min"), get_real(eff, "lat_max"), get_real(eff, "lon_min"),
                                      get_real(eff, "lon_max")});
    const auto map_file = get<std::string>(eff, "map_file");
    const auto dist     = get<std::string>(eff, "distribution");
    if (!map_file.empty()) {
        if (dist != "uniform") {
            throw ConfigError("set either map_file or distribution, not both");
        }
        return lea(read_pgm(resolve(base_dir, map_file)), grid, static_cast<int>(get_int(eff, "lea_threshold")));
    }
    if (dist == "uniform") {
        return MobilityDistribution::uniform(grid.size());
    }
    return read_distribution_csv(resolve(base_dir, dist));
}

Experiment load_experiment(const nlohmann::json& user, const std::filesystem::path& base_dir)
{
    if (!user.is_object()) {
        throw ConfigError("configuration must be a JSON object");
    }
    Experiment ex;
    ex.base_dir  = base_dir;
    ex.effective = default_config();
    for (const auto& [key, value] : user.items()) {
        if (!ex.effective.contains(key)) {
            throw ConfigError(fmt::format("unknown key '{}'", key));
        }
        ex.effective[key] = value;
    }
    const nlohmann::json& e = ex.effective;

    SimConfig& c = ex.sim;
    try {
        c.grid = SectorGrid(get_count(e, "grid_rows"), get_count(e, "grid_cols"),
                            BoundingBox{get_real(e, "lat_min"), get_real(e, "lat_max"), get_real(e, "lon_min"),
                                        get_real(e, "lon_max")});
    }
    catch (const InvalidArgument& err) {
        throw ConfigError(err.what());
    }
    c.duration_min          = get_int(e, "duration_min");
    c.timestep_min          = get_int(e, "timestep_min");
    c.validation_window_min = get_int(e, "validation_window_min");
    c.estimate_interval_min = get_int(e, "estimate_interval_min");

    AgentMix& a = c.agents;
    a.users       = get_count(e, "users");
    a.attackers   = get_count(e, "attackers");
    a.mtps        = get_count(e, "mtps");
    a.honest_pf   = get_real(e, "honest_pf");
    a.attacker_pf = get_real(e, "attacker_pf");
    a.on_steps    = static_cast<std::uint32_t>(get_count(e, "onoff_on"));
    a.off_steps   = static_cast<std::uint32_t>(get_count(e, "onoff_off"));
    a.collusion_groups = static_cast<std::uint32_t>(get_count(e, "collusion_groups"));
    a.collusion_targets.clear();
    if (!e.at("collusion_targets").is_array()) {
        throw ConfigError("key 'collusion_targets' must be an array of sector indices");
    }
    for (const auto& t : e.at("collusion_targets")) {
        if (!t.is_number_integer() || t.get<long long>() < 0) {
            throw ConfigError("key 'collusion_targets' must hold non-negative integers");
        }
        a.collusion_targets.push_back(t.get<SectorIndex>());
    }
    const auto attack = get<std::string>(e, "attack");
    if (attack == "none") {
        a.attack = AttackKind::None;
    }
    else if (attack == "corruption") {
        a.attack = AttackKind::Corruption;
    }
    else if (attack == "onoff") {
        a.attack = AttackKind::OnOff;
    }
    else if (attack == "collusion") {
        a.attack = AttackKind::Collusion;
    }
    else {
        throw ConfigError(fmt::format("unknown attack '{}' (none, corruption, onoff, collusion)", attack));
    }

    c.categories         = static_cast<std::uint32_t>(get_count(e, "categories"));
    c.truth.anomaly_prob = get_real(e, "truth_anomaly_prob");
    c.truth.redraw_prob  = get_real(e, "truth_redraw_prob");

    const auto classifier = get<std::string>(e, "classifier");
    if (classifier == "first") {
        c.classifier = ClassifierKind::First;
    }
    else if (classifier == "majority") {
        c.classifier = ClassifierKind::Majority;
    }
    else if (classifier == "fides" || classifier == "huang") {
        throw ConfigError(fmt::format("classifier '{}' is not available: only 'first' and 'majority' are implemented",
                                      classifier));
    }
    else {
        throw ConfigError(fmt::format("unknown classifier '{}' (first, majority)", classifier));
    }
    const auto rule = get<std::string>(e, "decision_rule");
    if (rule == "argmax") {
        c.decision_rule = DecisionRule::Argmax;
    }
    else if (rule == "sample") {
        c.decision_rule = DecisionRule::Sample;
    }
    else {
        throw ConfigError(fmt::format("unknown decision_rule '{}' (argmax, sample)", rule));
    }

    const auto& seed = e.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<long long>() < 0)) {
        throw ConfigError("key 'seed' must be a non-negative integer");
    }
    c.seed = seed.get<std::uint64_t>();

    if (get<bool>(e, "adaptive")) {
        c.adaptive = AdaptiveConfig{get_real(e, "eps_max"), get_count(e, "m_max")};
    }
    c.dominated_window_share = get_real(e, "dominated_window_share");

    const auto mobility = get<std::string>(e, "mobility");
    if (mobility == "distribution") {
        c.mobility = MobilityMode::Distribution;
    }
    else if (mobility == "traces") {
        c.mobility = MobilityMode::Traces;
    }
    else {
        throw ConfigError(fmt::format("unknown mobility '{}' (distribution, traces)", mobility));
    }

    if (c.mobility == MobilityMode::Traces) {
        const auto traces_file = get<std::string>(e, "traces_file");
        if (traces_file.empty()) {
            throw ConfigError("trace mobility needs 'traces_file'");
        }
        c.traces = std::make_shared<const TraceSet>(ingest(resolve(base_dir, traces_file), c.grid));
    }
    else {
        c.distribution = resolve_distribution(e, base_dir);
    }
    c.validate();
    return ex;
}

Experiment load_experiment_file(const std::filesystem::path& path)
{
    if (path.empty()) {
        return load_experiment(nlohmann::json::object());
    }
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    nlohmann::json user;
    try {
        in >> user;
    }
    catch (const nlohmann::json::exception& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
    }
    return load_experiment(user, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

} // namespace first
