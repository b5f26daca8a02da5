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
#include "first/sim.hpp"
#include "first/error.hpp"
#include "first/moa.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <ostream>

namespace first
{

namespace
{

// independent random streams of one run
enum Stream : std::uint64_t
{
    TruthStream = 1,
    MobilityStream,
    BehaviorStream,
    ClassifierStream,
    SetupStream,
    AdaptiveStream,
};

std::optional<double> ratio(double num, std::uint64_t den)
{
    if (den == 0) {
        return std::nullopt;
    }
    return num / static_cast<double>(den);
}

bool decided_wrong(const Report& r)
{
    return (r.decision == Decision::Reliable) != r.ground_truth_match;
}

struct MtpRecord {
    std::int64_t step;
    Category value;
};

// Draws the next location of every agent, from the distribution or from its trace cursor.
class Mover
{
public:
    Mover(const SimConfig& config, std::size_t agents, Rng& setup_rng)
        : m_dist(effective_distribution(config))
    {
        if (config.mobility != MobilityMode::Traces) {
            return;
        }
        m_traces = discretize(*config.traces, config.grid, config.timestep_min);
        const std::size_t count = m_traces.agent_ids.size();
        m_cursors.reserve(agents);
        for (std::size_t a = 0; a < agents; ++a) {
            Cursor c;
            c.trace           = a % count;
            const auto& seq   = m_traces.sectors[c.trace];
            const auto first  = std::find_if(seq.begin(), seq.end(), [](const auto& s) {
                return s.has_value();
            });
            c.first_valid     = static_cast<std::size_t>(first - seq.begin());
            c.span            = seq.size() - c.first_valid;
            c.offset          = setup_rng.below(c.span);
            m_cursors.push_back(c);
        }
    }

    SectorIndex place(std::size_t agent, std::int64_t step, Rng& rng) const
    {
        if (m_cursors.empty()) {
            return m_dist.sample_sector(rng);
        }
        const Cursor& c = m_cursors[agent];
        const std::size_t idx = c.first_valid + (c.offset + static_cast<std::size_t>(step)) % c.span;
        return *m_traces.sectors[c.trace][idx];
    }

    const MobilityDistribution& distribution() const
    {
        return m_dist;
    }

private:
    struct Cursor {
        std::size_t trace       = 0;
        std::size_t first_valid = 0;
        std::size_t span        = 1;
        std::size_t offset      = 0;
    };

    MobilityDistribution m_dist;
    DiscretizedTraces m_traces;
    std::vector<Cursor> m_cursors;
};

Category draw_truth(const GroundTruthModel& model, std::uint32_t categories, Rng& rng)
{
    if (!rng.bernoulli(model.anomaly_prob)) {
        return 0;
    }
    return categories == 2 ? 1 : static_cast<Category>(1 + rng.below(categories - 1));
}

void accumulate(Tally& t, const StepMetrics& m, double accept_sum, std::uint64_t attacker_nv,
                double attacker_accept_sum)
{
    t.reports += m.reports_total;
    t.validated += m.reports_validated;
    t.nonvalidated += m.reports_nonvalidated;
    t.errors_nonvalidated += m.errors_nonvalidated;
    t.errors_total += m.errors_total;
    t.accept_sum += accept_sum;
    t.attacker_nonvalidated += attacker_nv;
    t.attacker_accept_sum += attacker_accept_sum;
}

} // namespace

void SimConfig::validate() const
{
    auto fail = [](const std::string& why) {
        throw ConfigError(why);
    };
    if (timestep_min < 1) {
        fail("timestep_min must be at least 1");
    }
    if (duration_min < timestep_min) {
        fail("duration_min must be at least one timestep");
    }
    if (validation_window_min < timestep_min || validation_window_min % timestep_min != 0) {
        fail("validation_window_min must be a positive whole number of timesteps");
    }
    if (estimate_interval_min < timestep_min || estimate_interval_min % timestep_min != 0) {
        fail("estimate_interval_min must be a positive whole number of timesteps");
    }
    if (agents.attackers > agents.users) {
        fail(fmt::format("attackers ({}) exceed users ({})", agents.attackers, agents.users));
    }
    if (agents.attackers > 0 && agents.attack == AttackKind::None) {
        fail("attackers configured but attack is 'none'");
    }
    auto prob = [&](double p, const char* what) {
        if (!(p >= 0.0 && p <= 1.0)) {
            fail(fmt::format("{} must lie in [0, 1]", what));
        }
    };
    prob(agents.honest_pf, "honest_pf");
    prob(agents.attacker_pf, "attacker_pf");
    prob(truth.anomaly_prob, "truth_anomaly_prob");
    prob(truth.redraw_prob, "truth_redraw_prob");
    prob(dominated_window_share, "dominated_window_share");
    if (categories < 2) {
        fail("categories must be at least 2");
    }
    if (agents.on_steps < 1 || agents.off_steps < 1) {
        fail("onoff_on and onoff_off must be at least 1");
    }
    if (agents.attack == AttackKind::Collusion && agents.attackers > 0) {
        if (agents.collusion_groups < 1) {
            fail("collusion needs at least one group");
        }
        if (!agents.collusion_targets.empty() && agents.collusion_targets.size() != agents.collusion_groups) {
            fail("collusion_targets must list one sector per group");
        }
        for (SectorIndex s : agents.collusion_targets) {
            if (s >= grid.size()) {
                fail(fmt::format("collusion target {} outside the {}-sector grid", s, grid.size()));
            }
        }
    }
    if (distribution && distribution->size() != grid.size()) {
        fail(fmt::format("distribution has {} sectors, grid has {}", distribution->size(), grid.size()));
    }
    if (mobility == MobilityMode::Traces && !traces) {
        fail("trace mobility selected but no traces loaded");
    }
    if (adaptive) {
        if (!(adaptive->eps_max > 0.0 && adaptive->eps_max < 1.0)) {
            fail("eps_max must lie in (0, 1)");
        }
    }
}

std::optional<double> Tally::error_rate() const
{
    return ratio(static_cast<double>(errors_nonvalidated), nonvalidated);
}
std::optional<double> Tally::error_rate_all() const
{
    return ratio(static_cast<double>(errors_total), reports);
}
std::optional<double> Tally::validation_rate() const
{
    return ratio(static_cast<double>(validated), reports);
}
std::optional<double> Tally::p_accept_unvalidated() const
{
    return ratio(accept_sum, nonvalidated);
}
std::optional<double> Tally::p_accept_attackers() const
{
    return ratio(attacker_accept_sum, attacker_nonvalidated);
}

std::optional<double> RunSummary::dominated_error_rate() const
{
    return ratio(static_cast<double>(dominated_errors), dominated_reports);
}

double estimate_pf(std::uint64_t validated, std::uint64_t validated_unreliable)
{
    if (validated == 0) {
        return 0.5;
    }
    return static_cast<double>(validated_unreliable) / static_cast<double>(validated);
}

double estimate_pf(std::span<const Report> reports)
{
    std::uint64_t v = 0;
    std::uint64_t u = 0;
    for (const auto& r : reports) {
        if (r.validation != Validation::NotValidated) {
            ++v;
            u += r.validation == Validation::ValidatedUnreliable ? 1 : 0;
        }
    }
    return estimate_pf(v, u);
}

std::size_t adaptive_step(std::size_t current_mtps, double pf_estimate, const MobilityDistribution& dist,
                          double eps_max, std::size_t m_max)
{
    const MopSolution s = solve_mop({dist, pf_estimate, eps_max, std::max<std::size_t>(m_max, 1)});
    if (const auto* f = std::get_if<Feasible>(&s)) {
        return std::min(current_mtps, f->m_star);
    }
    return current_mtps;
}

MobilityDistribution effective_distribution(const SimConfig& config)
{
    if (config.mobility == MobilityMode::Traces) {
        if (!config.traces) {
            throw ConfigError("trace mobility selected but no traces loaded");
        }
        const auto d = discretize(*config.traces, config.grid, config.timestep_min);
        std::vector<SectorIndex> samples;
        for (const auto& seq : d.sectors) {
            for (const auto& s : seq) {
                if (s) {
                    samples.push_back(*s);
                }
            }
        }
        return empirical_distribution(samples, config.grid.size());
    }
    if (config.distribution) {
        return *config.distribution;
    }
    return MobilityDistribution::uniform(config.grid.size());
}

RunResult run(const SimConfig& config, const ReportObserver& observer)
{
    config.validate();

    const std::size_t n         = config.grid.size();
    const std::int64_t steps    = config.steps();
    const std::int64_t window   = config.validation_window_min / config.timestep_min;
    const std::int64_t interval = config.estimate_interval_min / config.timestep_min;
    const std::int64_t quarter_start = steps - steps / 4;
    const AgentMix& mix         = config.agents;

    Rng truth_rng    = Rng::stream(config.seed, TruthStream);
    Rng mobility_rng = Rng::stream(config.seed, MobilityStream);
    Rng behavior_rng = Rng::stream(config.seed, BehaviorStream);
    Rng classify_rng = Rng::stream(config.seed, ClassifierStream);
    Rng setup_rng    = Rng::stream(config.seed, SetupStream);
    Rng adaptive_rng = Rng::stream(config.seed, AdaptiveStream);

    // agents 0..mtps-1 are MTPs for trace assignment, users follow
    const Mover mover(config, mix.mtps + mix.users, setup_rng);
    const MobilityDistribution& dist = mover.distribution();

    std::vector<SectorIndex> targets = mix.collusion_targets;
    std::vector<CollusionGroupState> groups;
    if (mix.attack == AttackKind::Collusion && mix.attackers > 0) {
        while (targets.size() < mix.collusion_groups) {
            targets.push_back(dist.sample_sector(setup_rng));
        }
        groups.assign(mix.collusion_groups, CollusionGroupState{mix.on_steps, mix.off_steps, 0, 0});
    }

    std::vector<AgentState> users(mix.users);
    const std::size_t first_attacker = mix.users - mix.attackers;
    for (std::size_t u = 0; u < mix.users; ++u) {
        AgentState& a = users[u];
        a.id          = static_cast<UserId>(u);
        a.role        = Role::User;
        if (u < first_attacker) {
            a.behavior = behavior::Honest{mix.honest_pf};
            continue;
        }
        const std::size_t j = u - first_attacker;
        switch (mix.attack) {
        case AttackKind::None:
        case AttackKind::Corruption:
            a.behavior = behavior::Corruption{mix.attacker_pf};
            break;
        case AttackKind::OnOff:
            a.behavior = behavior::OnOff{mix.on_steps, mix.off_steps};
            break;
        case AttackKind::Collusion: {
            const auto g = static_cast<std::uint32_t>(j % mix.collusion_groups);
            a.behavior   = behavior::Collusion{g, targets[g], mix.on_steps, mix.off_steps, mix.honest_pf};
            break;
        }
        }
    }
    std::vector<bool> attacker(mix.users);
    for (std::size_t u = 0; u < mix.users; ++u) {
        attacker[u] = is_attacker(users[u].behavior);
    }

    // active MTP ids; adaptive runs start from the worst-case sizing at P{F} = 1/2
    std::vector<std::size_t> active(mix.mtps);
    std::iota(active.begin(), active.end(), std::size_t{0});
    const std::size_t m_max = config.adaptive && config.adaptive->m_max > 0 ? config.adaptive->m_max : mix.mtps;
    auto release_to = [&](std::size_t target) {
        while (active.size() > target) {
            const std::size_t i = adaptive_rng.below(active.size());
            active[i]           = active.back();
            active.pop_back();
        }
        // keep placement order independent of removal order
        std::sort(active.begin(), active.end());
    };
    if (config.adaptive) {
        release_to(adaptive_step(mix.mtps, 0.5, dist, config.adaptive->eps_max, std::max<std::size_t>(m_max, 1)));
    }

    RunResult result;
    result.ledger = TrustLedger(mix.users);
    result.steps.reserve(static_cast<std::size_t>(steps));
    RunSummary& summary         = result.summary;
    summary.seed                = config.seed;
    summary.steps               = steps;
    summary.initial_active_mtps = active.size();

    std::vector<Category> truth(n, 0);
    std::vector<std::optional<MtpRecord>> records(n);
    double pf_estimate = 0.5;
    std::uint64_t interval_validated   = 0;
    std::uint64_t interval_unreliable  = 0;

    std::vector<Report> mtp_reports;
    std::vector<Report> user_reports(mix.users);
    std::vector<double> accept(mix.users);
    std::vector<std::vector<std::size_t>> by_sector(n);

    for (std::int64_t t = 0; t < steps; ++t) {
        // (0) ground truth
        for (SectorIndex s = 0; s < n; ++s) {
            if (t == 0 || truth_rng.bernoulli(config.truth.redraw_prob)) {
                const Category next = draw_truth(config.truth, config.categories, truth_rng);
                if (t > 0 && next != truth[s]) {
                    records[s].reset();
                }
                truth[s] = next;
            }
        }
        for (std::size_t g = 0; g < groups.size(); ++g) {
            groups[g].clock = static_cast<std::uint64_t>(t);
            if (groups[g].on()) {
                groups[g].false_value = false_category(truth[targets[g]], config.categories, behavior_rng);
            }
        }

        // (1)+(2) MTPs move and stamp their sector
        mtp_reports.clear();
        for (std::size_t id : active) {
            const SectorIndex s = mover.place(id, t, mobility_rng);
            records[s]          = MtpRecord{t, truth[s]};
            Report r;
            r.user       = static_cast<UserId>(id);
            r.sector     = s;
            r.timestep   = t;
            r.value      = truth[s];
            r.validation = Validation::NotValidated;
            r.decision   = Decision::Reliable;
            mtp_reports.push_back(r);
        }

        // (1)+(3)+(4) users move, report and are checked against the MTP records
        for (std::size_t u = 0; u < mix.users; ++u) {
            const SectorIndex here = mover.place(mix.mtps + u, t, mobility_rng);
            const EmittedReport e  = next_report(users[u], here, truth[here], config.categories, groups, behavior_rng);
            Report& r              = user_reports[u];
            r.user                 = static_cast<UserId>(u);
            r.sector               = e.sector;
            r.timestep             = t;
            r.value                = e.value;
            r.ground_truth_match   = e.value == truth[e.sector];
            const auto& rec        = records[e.sector];
            if (rec && t - rec->step < window) {
                r.validation = r.value == rec->value ? Validation::ValidatedReliable : Validation::ValidatedUnreliable;
            }
            else {
                r.validation = Validation::NotValidated;
            }
        }

        // (5) classification
        if (config.classifier == ClassifierKind::First) {
            for (std::size_t u = 0; u < mix.users; ++u) {
                const Classification c = result.ledger.classify(user_reports[u], classify_rng, config.decision_rule);
                user_reports[u].decision = c.decision;
                accept[u]                = c.p_accept;
            }
        }
        else {
            for (auto& b : by_sector) {
                b.clear();
            }
            std::vector<std::vector<Report>> windows(n);
            for (const auto& r : mtp_reports) {
                windows[r.sector].push_back(r);
            }
            for (std::size_t u = 0; u < mix.users; ++u) {
                result.ledger.record(user_reports[u]);
                by_sector[user_reports[u].sector].push_back(u);
                windows[user_reports[u].sector].push_back(user_reports[u]);
            }
            for (SectorIndex s = 0; s < n; ++s) {
                if (by_sector[s].empty()) {
                    continue;
                }
                const auto decisions     = majority_vote(windows[s]);
                const std::size_t offset = windows[s].size() - by_sector[s].size();
                for (std::size_t i = 0; i < by_sector[s].size(); ++i) {
                    const std::size_t u      = by_sector[s][i];
                    user_reports[u].decision = decisions[offset + i];
                    accept[u]                = decisions[offset + i] == Decision::Reliable ? 1.0 : 0.0;
                }
            }
        }

        // (6) metrics
        StepMetrics m;
        m.timestep    = t;
        m.active_mtps = active.size();
        double accept_sum          = 0.0;
        double attacker_accept_sum = 0.0;
        std::uint64_t attacker_nv  = 0;
        std::vector<std::uint64_t> window_total(n, 0);
        std::vector<std::uint64_t> window_colluders(n, 0);
        for (const auto& r : mtp_reports) {
            ++window_total[r.sector];
        }
        for (std::size_t u = 0; u < mix.users; ++u) {
            const Report& r = user_reports[u];
            ++m.reports_total;
            ++window_total[r.sector];
            if (const auto* c = std::get_if<behavior::Collusion>(&users[u].behavior); c && groups[c->group].on()) {
                ++window_colluders[r.sector];
            }
            const bool wrong = decided_wrong(r);
            m.errors_total += wrong ? 1 : 0;
            if (r.validation == Validation::NotValidated) {
                ++m.reports_nonvalidated;
                m.errors_nonvalidated += wrong ? 1 : 0;
                accept_sum += accept[u];
                if (attacker[u]) {
                    ++attacker_nv;
                    attacker_accept_sum += accept[u];
                }
            }
            else {
                ++m.reports_validated;
                ++interval_validated;
                interval_unreliable += r.validation == Validation::ValidatedUnreliable ? 1 : 0;
            }
        }
        if (!groups.empty()) {
            std::vector<bool> dominated(n, false);
            for (SectorIndex s = 0; s < n; ++s) {
                if (window_total[s] > 0 && static_cast<double>(window_colluders[s]) >=
                                               config.dominated_window_share * static_cast<double>(window_total[s])) {
                    dominated[s] = true;
                    ++summary.dominated_windows;
                }
            }
            for (const auto& r : user_reports) {
                if (dominated[r.sector]) {
                    ++summary.dominated_reports;
                    summary.dominated_errors += decided_wrong(r) ? 1 : 0;
                }
            }
        }
        m.error_rate           = ratio(static_cast<double>(m.errors_nonvalidated), m.reports_nonvalidated);
        m.error_rate_all       = ratio(static_cast<double>(m.errors_total), m.reports_total);
        m.p_accept_unvalidated = ratio(accept_sum, m.reports_nonvalidated);
        m.p_accept_attackers   = ratio(attacker_accept_sum, attacker_nv);

        // P{F} estimate and, in adaptive mode, MTP release at interval boundaries
        if ((t + 1) % interval == 0) {
            pf_estimate = estimate_pf(interval_validated, interval_unreliable);
            interval_validated  = 0;
            interval_unreliable = 0;
            if (config.adaptive) {
                release_to(adaptive_step(active.size(), pf_estimate, dist, config.adaptive->eps_max,
                                         std::max<std::size_t>(m_max, 1)));
            }
        }
        m.p_f_estimate = pf_estimate;

        accumulate(summary.overall, m, accept_sum, attacker_nv, attacker_accept_sum);
        if (t >= quarter_start) {
            accumulate(summary.final_quarter, m, accept_sum, attacker_nv, attacker_accept_sum);
        }
        if (observer) {
            observer(t, user_reports, mtp_reports, truth);
        }
        result.steps.push_back(m);
    }

    summary.final_active_mtps = active.size();
    double honest_sum = 0.0;
    double attacker_sum = 0.0;
    std::size_t honest_n = 0;
    std::size_t attacker_n = 0;
    for (std::size_t u = 0; u < mix.users; ++u) {
        const double tr = result.ledger.trust_of(static_cast<UserId>(u));
        if (attacker[u]) {
            attacker_sum += tr;
            ++attacker_n;
        }
        else {
            honest_sum += tr;
            ++honest_n;
        }
    }
    summary.mean_trust_honest    = ratio(honest_sum, honest_n);
    summary.mean_trust_attackers = ratio(attacker_sum, attacker_n);
    return result;
}

void write_steps_csv(std::ostream& out, std::span<const StepMetrics> steps)
{
    auto opt = [](const std::optional<double>& v) {
        return v ? fmt::format("{}", *v) : std::string{};
    };
    out << step_csv_header << '\n';
    for (const auto& m : steps) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", m.timestep, m.reports_total, m.reports_validated,
                           m.reports_nonvalidated, m.errors_nonvalidated, opt(m.error_rate),
                           opt(m.p_accept_unvalidated), m.p_f_estimate, m.active_mtps, m.errors_total,
                           opt(m.error_rate_all), opt(m.p_accept_attackers));
    }
}

} // namespace first
