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
#ifndef FIRST_CONFIG_HPP
#define FIRST_CONFIG_HPP

#include "first/sim.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace first
{

/**
 * Experiment configuration: a flat JSON object whose keys all have defaults.
 *
 * The defaults reproduce the reference scenario (240 min, 5 min steps, 2000 users of
 * which 1200 attackers, 400 MTPs, P{F} 0.01 / 0.8, on-off (10, 10), 3 collusion groups).
 * Unknown keys are rejected. Relative file paths resolve against `base_dir`.
 */
struct Experiment {
    nlohmann::json effective; ///< defaults with the user's keys applied
    std::filesystem::path base_dir;
    SimConfig sim;
};

/// The default configuration object, one entry per accepted key.
const nlohmann::json& default_config();

/// Merges `user` over the defaults, validates, and loads any referenced files.
Experiment load_experiment(const nlohmann::json& user, const std::filesystem::path& base_dir = ".");

/// Reads a JSON config file; an empty path yields the defaults.
Experiment load_experiment_file(const std::filesystem::path& path);

/// Distribution named by the `distribution` / `map_file` keys over the configured grid.
MobilityDistribution resolve_distribution(const nlohmann::json& effective, const std::filesystem::path& base_dir);

} // namespace first

#endif // FIRST_CONFIG_HPP
