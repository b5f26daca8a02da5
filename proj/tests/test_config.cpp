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
#include "first/experiment.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace first;
using first::support::scratch_dir;
using first::support::slurp;
using first::support::spit;
using nlohmann::json;

TEST(Config, DefaultsDescribeTheReferenceScenario)
{
    const auto ex = load_experiment(json::object());
    const auto& s = ex.sim;
    EXPECT_EQ(s.grid.size(), 400u);
    EXPECT_EQ(s.steps(), 48);
    EXPECT_EQ(s.agents.users, 2000u);
    EXPECT_EQ(s.agents.attackers, 1200u);
    EXPECT_EQ(s.agents.mtps, 400u);
    EXPECT_DOUBLE_EQ(s.agents.honest_pf, 0.01);
    EXPECT_DOUBLE_EQ(s.agents.attacker_pf, 0.8);
    EXPECT_EQ(s.agents.attack, AttackKind::Corruption);
    EXPECT_EQ(s.classifier, ClassifierKind::First);
    EXPECT_EQ(s.decision_rule, DecisionRule::Argmax);
    EXPECT_FALSE(s.adaptive.has_value());
    ASSERT_TRUE(s.distribution.has_value());
    EXPECT_DOUBLE_EQ((*s.distribution)[0], 1.0 / 400.0);
    EXPECT_EQ(ex.effective, default_config());
}

TEST(Config, OverridesApply)
{
    const auto ex = load_experiment({{"grid_rows", 2},
                                     {"grid_cols", 4},
                                     {"attack", "collusion"},
                                     {"collusion_targets", {1, 2, 3}},
                                     {"classifier", "majority"},
                                     {"decision_rule", "sample"},
                                     {"adaptive", true},
                                     {"eps_max", 0.05},
                                     {"seed", 99}});
    EXPECT_EQ(ex.sim.grid.size(), 8u);
    EXPECT_EQ(ex.sim.agents.attack, AttackKind::Collusion);
    EXPECT_EQ(ex.sim.agents.collusion_targets, (std::vector<SectorIndex>{1, 2, 3}));
    EXPECT_EQ(ex.sim.classifier, ClassifierKind::Majority);
    EXPECT_EQ(ex.sim.decision_rule, DecisionRule::Sample);
    ASSERT_TRUE(ex.sim.adaptive.has_value());
    EXPECT_DOUBLE_EQ(ex.sim.adaptive->eps_max, 0.05);
    EXPECT_EQ(ex.sim.seed, 99u);
    EXPECT_EQ(ex.effective.at("grid_rows"), 2);
}

TEST(Config, RejectsUnknownAndMistypedKeys)
{
    EXPECT_THROW(load_experiment({{"userz", 10}}), ConfigError);
    EXPECT_THROW(load_experiment({{"users", "many"}}), ConfigError);
    EXPECT_THROW(load_experiment({{"users", -3}}), ConfigError);
    EXPECT_THROW(load_experiment({{"users", 2.5}}), ConfigError);
    EXPECT_THROW(load_experiment({{"seed", -1}}), ConfigError);
    EXPECT_THROW(load_experiment({{"adaptive", "yes"}}), ConfigError);
    EXPECT_THROW(load_experiment({{"attack", "sybil"}}), ConfigError);
    EXPECT_THROW(load_experiment({{"mobility", "teleport"}}), ConfigError);
    EXPECT_THROW(load_experiment({{"grid_rows", 0}}), ConfigError);
    EXPECT_THROW(load_experiment({{"collusion_targets", 3}}), ConfigError);
    EXPECT_THROW(load_experiment(json::array()), ConfigError);
}

TEST(Config, UnavailableBaselinesAreRejected)
{
    for (const char* name : {"fides", "huang"}) {
        try {
            load_experiment({{"classifier", name}});
            FAIL() << name;
        }
        catch (const ConfigError& e) {
            EXPECT_NE(std::string(e.what()).find(name), std::string::npos);
        }
    }
}

TEST(Config, FilesResolveAgainstTheConfigDirectory)
{
    const auto dir = scratch_dir("config_files");
    spit(dir / "dist.csv", "prob\n0.125\n0\n0.125\n0\n0.125\n0\n0.25\n0.375\n");
    spit(dir / "exp.json", R"({"grid_rows": 2, "grid_cols": 4, "distribution": "dist.csv"})");
    const auto ex = load_experiment_file(dir / "exp.json");
    EXPECT_DOUBLE_EQ((*ex.sim.distribution)[7], 0.375);

    // a map file goes through LEA over the configured grid
    spit(dir / "map.pgm", "P2\n4 2\n255\n0 255 255 255\n255 255 255 0\n");
    spit(dir / "map.json", R"({"grid_rows": 2, "grid_cols": 4, "map_file": "map.pgm"})");
    const auto mx = load_experiment_file(dir / "map.json");
    EXPECT_DOUBLE_EQ((*mx.sim.distribution)[0], 0.5);
    EXPECT_DOUBLE_EQ((*mx.sim.distribution)[7], 0.5);

    spit(dir / "both.json", R"({"grid_rows": 2, "grid_cols": 4, "map_file": "map.pgm", "distribution": "dist.csv"})");
    EXPECT_THROW(load_experiment_file(dir / "both.json"), ConfigError);
    spit(dir / "white.pgm", "P2\n4 2\n255\n255 255 255 255\n255 255 255 255\n");
    spit(dir / "white.json", R"({"grid_rows": 2, "grid_cols": 4, "map_file": "white.pgm"})");
    EXPECT_THROW(load_experiment_file(dir / "white.json"), AllWhiteMap);

    spit(dir / "broken.json", "{ nope");
    EXPECT_THROW(load_experiment_file(dir / "broken.json"), ConfigError);
    EXPECT_THROW(load_experiment_file(dir / "missing.json"), ConfigError);
    spit(dir / "traces.json", R"({"mobility": "traces"})");
    EXPECT_THROW(load_experiment_file(dir / "traces.json"), ConfigError);
}

TEST(Experiment, WritesRunFiles)
{
    const auto dir = scratch_dir("write_run");
    const auto ex  = load_experiment({{"users", 50}, {"attackers", 10}, {"mtps", 20}, {"duration_min", 30}});
    write_run(dir, run(ex.sim), ex.effective);
    for (const char* f : {"steps.csv", "summary.jsonl", "ledger.csv", "config.json"}) {
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    }
    const auto summary = json::parse(slurp(dir / "summary.jsonl"));
    EXPECT_EQ(summary.at("steps"), 6);
    EXPECT_EQ(summary.at("overall").at("reports"), 300);
    EXPECT_EQ(summary.at("config"), ex.effective);
    EXPECT_EQ(json::parse(slurp(dir / "config.json")), ex.effective);
    const auto steps = slurp(dir / "steps.csv");
    EXPECT_EQ(steps.substr(0, steps.find('\n')), step_csv_header);
}

TEST(Experiment, MeanConfidenceInterval)
{
    const auto m = mean_ci95({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(m.mean, 2.5);
    EXPECT_NEAR(m.half_width, 1.96 * std::sqrt(5.0 / 3.0) / 2.0, 1e-12);
    EXPECT_EQ(m.n, 4u);
    EXPECT_DOUBLE_EQ(mean_ci95({7.0}).half_width, 0.0);
    EXPECT_EQ(mean_ci95({}).n, 0u);
}

TEST(Experiment, ReplicationsUseConsecutiveSeeds)
{
    const auto dir = scratch_dir("replications");
    const auto ex  = load_experiment({{"users", 40}, {"attackers", 10}, {"mtps", 10}, {"duration_min", 20}, {"seed", 7}});
    run_replications(ex, 3, dir);
    for (int r = 0; r < 3; ++r) {
        const auto rep = dir / ("rep_00" + std::to_string(r));
        const auto s   = json::parse(slurp(rep / "summary.jsonl"));
        EXPECT_EQ(s.at("seed"), 7 + r);
        EXPECT_EQ(s.at("config").at("seed"), 7 + r);
    }
    const auto agg = json::parse(slurp(dir / "aggregate.jsonl"));
    EXPECT_EQ(agg.at("replications"), 3);
    EXPECT_EQ(agg.at("validation_rate").at("n"), 3);
    EXPECT_THROW(run_replications(ex, 0, dir), ConfigError);

    // a replication equals a single run at its seed
    auto single = ex;
    single.sim.seed = 8;
    single.effective["seed"] = 8;
    const auto one = scratch_dir("replications_single");
    run_replications(single, 1, one);
    EXPECT_EQ(slurp(one / "steps.csv"), slurp(dir / "rep_001" / "steps.csv"));
}

TEST(Experiment, SweepVariesOneKey)
{
    const auto ex = load_experiment({{"users", 60}, {"attackers", 20}, {"duration_min", 30}});
    const auto rows = sweep(ex, "mtps", {0, 50, 400});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].summary.overall.validated, 0u);
    EXPECT_LT(*rows[1].summary.overall.validation_rate(), *rows[2].summary.overall.validation_rate());
    std::ostringstream out;
    write_sweep_csv(out, "mtps", rows);
    const auto text = out.str();
    EXPECT_EQ(text.substr(0, text.find(',')), "mtps");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
    // each point equals a fresh run with the key set
    for (const auto& row : rows) {
        json cfg   = ex.effective;
        cfg["mtps"] = row.value;
        const auto single = run(load_experiment(cfg).sim).summary;
        EXPECT_EQ(summary_json(row.summary, {}), summary_json(single, {}));
    }
    EXPECT_THROW(sweep(ex, "nonsense", {1}), ConfigError);
    EXPECT_THROW(sweep(ex, "classifier", {"fides"}), ConfigError);
}
