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
#include "first/experiment.hpp"
#include "first/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <future>
#include <numeric>

namespace first
{

namespace
{

nlohmann::json opt(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json tally_json(const Tally& t)
{
    return {
        {"reports", t.reports},
        {"reports_validated", t.validated},
        {"reports_nonvalidated", t.nonvalidated},
        {"errors_nonvalidated", t.errors_nonvalidated},
        {"errors_total", t.errors_total},
        {"error_rate", opt(t.error_rate())},
        {"error_rate_all", opt(t.error_rate_all())},
        {"validation_rate", opt(t.validation_rate())},
        {"p_accept_unvalidated", opt(t.p_accept_unvalidated())},
        {"p_accept_attackers", opt(t.p_accept_attackers())},
    };
}

std::ofstream open_out(const std::filesystem::path& p)
{
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + p.string());
    }
    return out;
}

} // namespace

nlohmann::json summary_json(const RunSummary& s, const nlohmann::json& effective)
{
    return {
        {"seed", s.seed},
        {"steps", s.steps},
        {"overall", tally_json(s.overall)},
        {"final_quarter", tally_json(s.final_quarter)},
        {"initial_active_mtps", s.initial_active_mtps},
        {"final_active_mtps", s.final_active_mtps},
        {"mean_trust_honest", opt(s.mean_trust_honest)},
        {"mean_trust_attackers", opt(s.mean_trust_attackers)},
        {"dominated_windows", s.dominated_windows},
        {"dominated_reports", s.dominated_reports},
        {"dominated_errors", s.dominated_errors},
        {"dominated_error_rate", opt(s.dominated_error_rate())},
        {"config", effective},
    };
}

void write_run(const std::filesystem::path& dir, const RunResult& result, const nlohmann::json& effective)
{
    std::filesystem::create_directories(dir);
    {
        auto out = open_out(dir / "steps.csv");
        write_steps_csv(out, result.steps);
    }
    {
        auto out = open_out(dir / "summary.jsonl");
        out << summary_json(result.summary, effective).dump() << '\n';
    }
    {
        auto out = open_out(dir / "ledger.csv");
        result.ledger.write_csv(out);
    }
    {
        auto out = open_out(dir / "config.json");
        out << effective.dump(2) << '\n';
    }
}

MeanCi mean_ci95(const std::vector<double>& xs)
{
    MeanCi r;
    r.n = xs.size();
    if (xs.empty()) {
        return r;
    }
    r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() < 2) {
        return r;
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - r.mean) * (x - r.mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    r.half_width    = 1.96 * sd / std::sqrt(static_cast<double>(xs.size()));
    return r;
}

void run_replications(const Experiment& ex, std::size_t replications, const std::filesystem::path& dir)
{
    if (replications == 0) {
        throw ConfigError("replications must be at least 1");
    }
    if (replications == 1) {
        write_run(dir, run(ex.sim), ex.effective);
        return;
    }

    std::vector<std::future<RunSummary>> jobs;
    jobs.reserve(replications);
    for (std::size_t r = 0; r < replications; ++r) {
        jobs.push_back(std::async(std::launch::async, [&ex, &dir, r] {
            SimConfig cfg = ex.sim;
            cfg.seed      = ex.sim.seed + r;
            nlohmann::json eff = ex.effective;
            eff["seed"]        = cfg.seed;
            RunResult result   = run(cfg);
            write_run(dir / fmt::format("rep_{:03}", r), result, eff);
            return result.summary;
        }));
    }
    std::vector<RunSummary> summaries;
    for (auto& j : jobs) {
        summaries.push_back(j.get());
    }

    auto collect = [&](auto&& field) {
        std::vector<double> xs;
        for (const auto& s : summaries) {
            if (const auto v = field(s)) {
                xs.push_back(*v);
            }
        }
        const MeanCi m = mean_ci95(xs);
        return nlohmann::json{{"mean", m.mean}, {"ci95_half_width", m.half_width}, {"n", m.n}};
    };
    nlohmann::json agg = {
        {"replications", replications},
        {"error_rate", collect([](const RunSummary& s) {
             return s.overall.error_rate();
         })},
        {"error_rate_all", collect([](const RunSummary& s) {
             return s.overall.error_rate_all();
         })},
        {"validation_rate", collect([](const RunSummary& s) {
             return s.overall.validation_rate();
         })},
        {"p_accept_unvalidated", collect([](const RunSummary& s) {
             return s.overall.p_accept_unvalidated();
         })},
        {"config", ex.effective},
    };
    std::filesystem::create_directories(dir);
    auto out = open_out(dir / "aggregate.jsonl");
    out << agg.dump() << '\n';
}

std::vector<SweepRow> sweep(const Experiment& ex, const std::string& key, const std::vector<nlohmann::json>& values)
{
    if (!ex.effective.contains(key)) {
        throw ConfigError(fmt::format("unknown sweep key '{}'", key));
    }
    std::vector<SweepRow> rows;
    for (const auto& v : values) {
        nlohmann::json cfg = ex.effective;
        cfg[key]           = v;
        const Experiment point = load_experiment(cfg, ex.base_dir);
        rows.push_back({v, run(point.sim).summary});
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::string& key, const std::vector<SweepRow>& rows)
{
    auto cell = [](const std::optional<double>& v) {
        return v ? fmt::format("{}", *v) : std::string{};
    };
    out << key
        << ",error_rate,error_rate_all,validation_rate,p_accept_unvalidated,p_accept_attackers,"
           "final_active_mtps,dominated_error_rate\n";
    for (const auto& r : rows) {
        const auto& s = r.summary;
        out << fmt::format("{},{},{},{},{},{},{},{}\n", r.value.is_string() ? r.value.get<std::string>() : r.value.dump(),
                           cell(s.overall.error_rate()), cell(s.overall.error_rate_all()),
                           cell(s.overall.validation_rate()), cell(s.overall.p_accept_unvalidated()),
                           cell(s.overall.p_accept_attackers()), s.final_active_mtps, cell(s.dominated_error_rate()));
    }
}

} // namespace first
