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
#ifndef FIRST_SIM_HPP
#define FIRST_SIM_HPP

#include "first/agents.hpp"
#include "first/grid.hpp"
#include "first/mobility.hpp"
#include "first/traces.hpp"
#include "first/trust.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace first
{

enum class MobilityMode : std::uint8_t
{
    Distribution,
    Traces,
};

enum class ClassifierKind : std::uint8_t
{
    First,
    Majority,
};

enum class AttackKind : std::uint8_t
{
    None,
    Corruption,
    OnOff,
    Collusion,
};

/// Population of the run. Attackers are a subset of `users`.
struct AgentMix {
    std::size_t users     = 2000;
    std::size_t attackers = 1200;
    std::size_t mtps      = 400;
    double honest_pf      = 0.01;
    AttackKind attack     = AttackKind::Corruption;
    double attacker_pf    = 0.8;
    std::uint32_t on_steps  = 10;
    std::uint32_t off_steps = 10;
    std::uint32_t collusion_groups = 3;
    std::vector<SectorIndex> collusion_targets; ///< empty: drawn from the mobility distribution
};

/// Per-sector truth: each step the state is redrawn with probability redraw_prob, and a
/// redraw yields an anomaly (category >= 1) with probability anomaly_prob.
struct GroundTruthModel {
    double anomaly_prob = 0.5;
    double redraw_prob  = 1.0;
};

/// Re-sizing of the MTP workforce from the running P{F} estimate, every estimate interval.
struct AdaptiveConfig {
    double eps_max    = 0.1;
    std::size_t m_max = 0; ///< 0: the configured MTP count
};

struct SimConfig {
    SectorGrid grid{20, 20, BoundingBox{41.8822, 41.9182, 12.4585, 12.5068}};
    std::int64_t duration_min          = 240;
    std::int64_t timestep_min          = 5;
    std::int64_t validation_window_min = 5;
    std::int64_t estimate_interval_min = 5;
    AgentMix agents;
    MobilityMode mobility = MobilityMode::Distribution;
    /// Distribution-mode mobility, also used by the optimizer. Empty means uniform.
    std::optional<MobilityDistribution> distribution;
    std::shared_ptr<const TraceSet> traces; ///< required in trace mode
    GroundTruthModel truth;
    std::uint32_t categories   = 2;
    ClassifierKind classifier  = ClassifierKind::First;
    DecisionRule decision_rule = DecisionRule::Argmax;
    std::uint64_t seed         = 1;
    std::optional<AdaptiveConfig> adaptive;
    double dominated_window_share = 0.6;

    std::int64_t steps() const
    {
        return duration_min / timestep_min;
    }
    /// Throws ConfigError describing the first inconsistency found.
    void validate() const;
};

/// Metrics of one timestep. Rates are empty when their denominator is zero.
struct StepMetrics {
    std::int64_t timestep = 0;
    std::uint64_t reports_total        = 0; ///< user reports, MTP reports excluded
    std::uint64_t reports_validated    = 0;
    std::uint64_t reports_nonvalidated = 0;
    std::uint64_t errors_nonvalidated  = 0;
    std::optional<double> error_rate;           ///< errors_nonvalidated / reports_nonvalidated
    std::optional<double> p_accept_unvalidated; ///< mean acceptance probability of non-validated reports
    double p_f_estimate = 0.5;                  ///< latest estimate at the end of the step
    std::size_t active_mtps = 0;                ///< MTPs deployed during the step
    std::uint64_t errors_total = 0;             ///< misclassified user reports, validated or not
    std::optional<double> error_rate_all;       ///< errors_total / reports_total
    std::optional<double> p_accept_attackers;   ///< as p_accept_unvalidated, attacker reports only
};

/// Column order of the per-step CSV.
inline constexpr const char* step_csv_header =
    "timestep,reports_total,reports_validated,reports_nonvalidated,errors_nonvalidated,error_rate,"
    "p_accept_unvalidated,p_f_estimate,active_mtps,errors_total,error_rate_all,p_accept_attackers";

/// Aggregate counters for a range of steps.
struct Tally {
    std::uint64_t reports      = 0;
    std::uint64_t validated    = 0;
    std::uint64_t nonvalidated = 0;
    std::uint64_t errors_nonvalidated = 0;
    std::uint64_t errors_total        = 0;
    double accept_sum                  = 0.0; ///< over non-validated reports
    std::uint64_t attacker_nonvalidated = 0;
    double attacker_accept_sum          = 0.0;

    std::optional<double> error_rate() const;
    std::optional<double> error_rate_all() const;
    std::optional<double> validation_rate() const;
    std::optional<double> p_accept_unvalidated() const;
    std::optional<double> p_accept_attackers() const;
};

struct RunSummary {
    std::uint64_t seed = 0;
    std::int64_t steps = 0;
    Tally overall;
    Tally final_quarter; ///< steps with index >= 3/4 of the run
    std::size_t initial_active_mtps = 0;
    std::size_t final_active_mtps   = 0;
    std::optional<double> mean_trust_honest;
    std::optional<double> mean_trust_attackers;
    /// Sector-step windows where ON-phase colluders make up at least dominated_window_share
    /// of all reports (MTP reports included); errors over all user reports in them.
    std::uint64_t dominated_windows = 0;
    std::uint64_t dominated_reports = 0;
    std::uint64_t dominated_errors  = 0;

    std::optional<double> dominated_error_rate() const;
};

struct RunResult {
    std::vector<StepMetrics> steps;
    RunSummary summary;
    TrustLedger ledger;
};

/// Called once per step with the user reports (classified) and the MTP reports.
using ReportObserver = std::function<void(std::int64_t step, std::span<const Report> users,
                                          std::span<const Report> mtps, std::span<const Category> truth)>;

/**
 * Runs one seeded, strictly sequential simulation.
 *
 * Per step: ground truth evolves, agents move, active MTPs stamp their sector, users
 * report, each user report is checked against its sector's latest MTP record, the
 * configured classifier decides, and metrics accumulate. An MTP record stamped at step s
 * validates user reports of steps s .. s + T/timestep - 1 (MTP reports precede user
 * reports within a step) and is discarded when the sector's truth changes.
 */
RunResult run(const SimConfig& config, const ReportObserver& observer = {});

/// Fraction of validated reports found unreliable, or 1/2 when nothing was validated.
double estimate_pf(std::uint64_t validated, std::uint64_t validated_unreliable);
double estimate_pf(std::span<const Report> reports);

/// New active MTP count after re-solving the optimization with the current estimate.
/// Never exceeds current_mtps; an infeasible problem keeps the current count.
std::size_t adaptive_step(std::size_t current_mtps, double pf_estimate, const MobilityDistribution& dist,
                          double eps_max, std::size_t m_max);

/// Mobility distribution the run uses for sizing and collusion targets.
MobilityDistribution effective_distribution(const SimConfig& config);

void write_steps_csv(std::ostream& out, std::span<const StepMetrics> steps);

} // namespace first

#endif // FIRST_SIM_HPP
