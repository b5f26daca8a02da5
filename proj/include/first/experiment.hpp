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
#ifndef FIRST_EXPERIMENT_HPP
#define FIRST_EXPERIMENT_HPP

#include "first/config.hpp"
#include "first/sim.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace first
{

/// One-line summary record of a run, with the effective configuration echoed.
nlohmann::json summary_json(const RunSummary& summary, const nlohmann::json& effective);

/**
 * Writes the files of one run into `dir` (created if needed):
 * steps.csv, summary.jsonl, ledger.csv and config.json.
 */
void write_run(const std::filesystem::path& dir, const RunResult& result, const nlohmann::json& effective);

/// Mean and 95% confidence half-width (normal approximation) of a sample.
struct MeanCi {
    double mean      = 0.0;
    double half_width = 0.0;
    std::size_t n    = 0;
};
MeanCi mean_ci95(const std::vector<double>& xs);

/**
 * Runs `replications` copies of the experiment with seeds seed, seed+1, ... concurrently,
 * each into dir/rep_NNN, then writes dir/aggregate.jsonl. A single replication writes
 * straight into dir.
 */
void run_replications(const Experiment& ex, std::size_t replications, const std::filesystem::path& dir);

/// Result row of one sweep point.
struct SweepRow {
    nlohmann::json value;
    RunSummary summary;
};

/// Runs the experiment once per value of `key`, each from a fresh configuration.
std::vector<SweepRow> sweep(const Experiment& ex, const std::string& key, const std::vector<nlohmann::json>& values);

/// CSV with one row per sweep point.
void write_sweep_csv(std::ostream& out, const std::string& key, const std::vector<SweepRow>& rows);

} // namespace first

#endif // FIRST_EXPERIMENT_HPP
