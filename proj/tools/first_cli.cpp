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
#include "first/cvp.hpp"
#include "first/errmodel.hpp"
#include "first/error.hpp"
#include "first/experiment.hpp"
#include "first/moa.hpp"
#include "first/mobility.hpp"
#include "first/traces.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace
{

using namespace first;

struct DistSource {
    std::string dist_csv;
    std::string map;
    std::size_t rows   = 0;
    std::size_t cols   = 0;
    int threshold      = default_black_threshold;
    std::size_t uniform = 0;

    void attach(CLI::App* app)
    {
        auto* d = app->add_option("--dist", dist_csv, "Distribution CSV (header 'prob')");
        auto* m = app->add_option("--map", map, "Graymap raster to run LEA on");
        auto* u = app->add_option("--uniform", uniform, "Uniform distribution over N sectors");
        d->excludes(m)->excludes(u);
        m->excludes(u);
        app->add_option("--rows", rows, "Grid rows (with --map)");
        app->add_option("--cols", cols, "Grid columns (with --map)");
        app->add_option("--threshold", threshold, "Black-pixel intensity threshold (with --map)")
            ->check(CLI::Range(0, 255));
    }

    MobilityDistribution load() const
    {
        if (!dist_csv.empty()) {
            return read_distribution_csv(std::filesystem::path(dist_csv));
        }
        if (!map.empty()) {
            return lea(read_pgm(std::filesystem::path(map)), unit_grid(), threshold);
        }
        if (uniform > 0) {
            return MobilityDistribution::uniform(uniform);
        }
        throw CLI::RequiredError("one of --dist, --map or --uniform");
    }

    SectorGrid unit_grid() const
    {
        if (rows == 0 || cols == 0) {
            throw CLI::RequiredError("--rows and --cols");
        }
        return SectorGrid(rows, cols, BoundingBox{0.0, 1.0, 0.0, 1.0});
    }
};

// Writes to `path`, or stdout when it is empty or "-".
template <class F>
void emit(const std::string& path, F&& write)
{
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + path);
    }
    write(out);
}

std::string default_out_dir()
{
    if (const char* env = std::getenv("FIRST_OUT_DIR"); env && *env) {
        return env;
    }
    return "out";
}

// Sweep values: each comma-separated item is parsed as JSON, falling back to a string.
std::vector<nlohmann::json> parse_values(const std::string& list)
{
    std::vector<nlohmann::json> values;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto parsed = nlohmann::json::parse(item, nullptr, false);
        values.push_back(parsed.is_discarded() ? nlohmann::json(item) : parsed);
    }
    return values;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Trusted-participant sizing and crowdsensing simulation toolkit"};
    app.require_subcommand(1);

    // lea
    auto* lea_cmd = app.add_subcommand("lea", "Sector likelihoods from a road-popularity raster");
    std::string lea_map, lea_out;
    std::size_t lea_rows = 0, lea_cols = 0;
    int lea_threshold = default_black_threshold;
    lea_cmd->add_option("--map", lea_map, "Graymap raster (P2 or P5)")->required();
    lea_cmd->add_option("--rows", lea_rows, "Grid rows")->required();
    lea_cmd->add_option("--cols", lea_cols, "Grid columns")->required();
    lea_cmd->add_option("--threshold", lea_threshold, "Black-pixel intensity threshold")->check(CLI::Range(0, 255));
    lea_cmd->add_option("--out", lea_out, "Output CSV (default stdout)");

    // cvp
    auto* cvp_cmd = app.add_subcommand("cvp", "Validation probability for m MTPs sharing the user distribution");
    DistSource cvp_src;
    cvp_src.attach(cvp_cmd);
    std::size_t cvp_m = 0;
    cvp_cmd->add_option("--mtps,-m", cvp_m, "Number of MTPs")->required();

    // error-curve
    auto* curve_cmd = app.add_subcommand("error-curve", "Classification error for m = 0..m_max");
    DistSource curve_src;
    curve_src.attach(curve_cmd);
    double curve_pf = 0.5;
    std::size_t curve_mmax = 0;
    std::string curve_out;
    curve_cmd->add_option("--pf", curve_pf, "Probability of an unreliable report")->check(CLI::Range(0.0, 1.0));
    curve_cmd->add_option("--m-max", curve_mmax, "Largest MTP count")->required();
    curve_cmd->add_option("--out", curve_out, "Output CSV (default stdout)");

    // moa
    auto* moa_cmd = app.add_subcommand("moa", "Minimum MTP count meeting a maximum classification error");
    DistSource moa_src;
    moa_src.attach(moa_cmd);
    double moa_pf = 0.5, moa_eps = 0.1;
    std::size_t moa_mmax = 0;
    moa_cmd->add_option("--pf", moa_pf, "Probability of an unreliable report")->check(CLI::Range(0.0, 1.0));
    moa_cmd->add_option("--eps-max", moa_eps, "Maximum tolerated classification error")->required();
    moa_cmd->add_option("--m-max", moa_mmax, "MTPs available")->required();

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "Sectorize a normalized trace CSV");
    std::string ingest_traces, ingest_config, ingest_out = default_out_dir();
    std::int64_t ingest_window = 1;
    ingest_cmd->add_option("--traces", ingest_traces, "CSV with agent_id,timestamp_unix_s,lat,lon")->required();
    ingest_cmd->add_option("--config", ingest_config, "Config file supplying the grid (defaults otherwise)");
    ingest_cmd->add_option("--window", ingest_window, "Window length in minutes")->check(CLI::PositiveNumber);
    ingest_cmd->add_option("--out", ingest_out, "Output directory");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Run the crowdsensing simulation");
    std::string sim_config, sim_out = default_out_dir();
    std::optional<std::uint64_t> sim_seed;
    std::size_t sim_reps = 1;
    sim_cmd->add_option("--config", sim_config, "JSON config (all keys optional)");
    sim_cmd->add_option("--out", sim_out, "Output directory (env FIRST_OUT_DIR)");
    sim_cmd->add_option("--seed", sim_seed, "Override the config seed");
    sim_cmd->add_option("--replications", sim_reps, "Independent seeded runs")->check(CLI::PositiveNumber);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Vary one config key across a list of values");
    std::string sweep_config, sweep_param, sweep_values, sweep_out = default_out_dir();
    std::optional<std::uint64_t> sweep_seed;
    sweep_cmd->add_option("--config", sweep_config, "JSON config (all keys optional)");
    sweep_cmd->add_option("--param", sweep_param, "Config key to vary")->required();
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required();
    sweep_cmd->add_option("--out", sweep_out, "Output directory (env FIRST_OUT_DIR)");
    sweep_cmd->add_option("--seed", sweep_seed, "Override the config seed");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (lea_cmd->parsed()) {
            const SectorGrid grid(lea_rows, lea_cols, BoundingBox{0.0, 1.0, 0.0, 1.0});
            const auto dist = lea(read_pgm(std::filesystem::path(lea_map)), grid, lea_threshold);
            emit(lea_out, [&](std::ostream& out) {
                write_distribution_csv(out, dist);
            });
        }
        else if (cvp_cmd->parsed()) {
            const auto dist   = cvp_src.load();
            const auto model  = ValidationModel::shared(dist, cvp_m);
            const auto sector = p_validate_by_sector(model);
            std::cout << "sector,p_v\n";
            for (std::size_t i = 0; i < sector.size(); ++i) {
                fmt::print("{},{}\n", i, sector[i]);
            }
            fmt::print("total,{}\n", p_validate(model));
        }
        else if (curve_cmd->parsed()) {
            const auto dist = curve_src.load();
            emit(curve_out, [&](std::ostream& out) {
                out << "m,p_v,p_accept_unvalidated,p_e\n";
                for (std::size_t m = 0; m <= curve_mmax; ++m) {
                    const auto b = calculate_error({dist, curve_pf, m});
                    fmt::print(out, "{},{},{},{}\n", m, b.p_v, b.p_accept_unvalidated, b.p_e);
                }
            });
        }
        else if (moa_cmd->parsed()) {
            const auto dist = moa_src.load();
            const auto sol  = solve_mop({dist, moa_pf, moa_eps, moa_mmax});
            if (const auto* f = std::get_if<Feasible>(&sol)) {
                const auto b = calculate_error({dist, moa_pf, f->m_star});
                fmt::print("m*={}\np_v={}\np_accept_unvalidated={}\np_r_given_f={}\np_rbar_given_fbar={}\np_e={}\n",
                           f->m_star, b.p_v, b.p_accept_unvalidated, b.p_r_given_f, b.p_rbar_given_fbar, b.p_e);
            }
            else {
                fmt::print("infeasible\np_e_at_m_max={}\n", std::get<Infeasible>(sol).p_e_at_m_max);
            }
        }
        else if (ingest_cmd->parsed()) {
            const Experiment ex = load_experiment_file(ingest_config);
            const TraceSet set  = ingest(std::filesystem::path(ingest_traces), ex.sim.grid);
            const auto disc     = discretize(set, ex.sim.grid, ingest_window);
            const auto dist     = empirical_distribution(
                [&] {
                    std::vector<std::vector<GeoPoint>> tr;
                    for (const auto& [id, fixes] : set.agents) {
                        tr.push_back(fixes);
                    }
                    return tr;
                }(),
                ex.sim.grid);
            std::filesystem::create_directories(ingest_out);
            const std::filesystem::path dir(ingest_out);
            emit((dir / "sectors.csv").string(), [&](std::ostream& out) {
                write_discretized_csv(out, disc);
            });
            emit((dir / "distribution.csv").string(), [&](std::ostream& out) {
                write_distribution_csv(out, dist);
            });
            fmt::print("agents={}\npoints={}\ndropped_out_of_bounds={}\ndropped_duplicates={}\nwindows={}\n",
                       set.agents.size(), set.points(), set.dropped_out_of_bounds, set.dropped_duplicates,
                       disc.windows);
        }
        else if (sim_cmd->parsed()) {
            Experiment ex = load_experiment_file(sim_config);
            if (sim_seed) {
                ex.sim.seed           = *sim_seed;
                ex.effective["seed"] = *sim_seed;
            }
            run_replications(ex, sim_reps, sim_out);
        }
        else if (sweep_cmd->parsed()) {
            Experiment ex = load_experiment_file(sweep_config);
            if (sweep_seed) {
                ex.sim.seed           = *sweep_seed;
                ex.effective["seed"] = *sweep_seed;
            }
            const auto rows = sweep(ex, sweep_param, parse_values(sweep_values));
            std::filesystem::create_directories(sweep_out);
            emit((std::filesystem::path(sweep_out) / "sweep.csv").string(), [&](std::ostream& out) {
                write_sweep_csv(out, sweep_param, rows);
            });
            emit((std::filesystem::path(sweep_out) / "config.json").string(), [&](std::ostream& out) {
                out << ex.effective.dump(2) << '\n';
            });
        }
    }
    catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    }
    catch (const first::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
