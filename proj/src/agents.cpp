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
#include "first/agents.hpp"
#include "first/error.hpp"

#include <algorithm>
#include <map>

namespace first
{

namespace
{

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_probability(double p, const char* what)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
    }
}

} // namespace

void validate_behavior(const BehaviorSpec& spec, std::size_t n)
{
    std::visit(overloaded{
                   [](const behavior::Honest& b) {
                       check_probability(b.p_f, "honest p_f");
                   },
                   [](const behavior::Corruption& b) {
                       check_probability(b.p, "corruption probability");
                   },
                   [](const behavior::OnOff& b) {
                       if (b.n_on < 1 || b.m_off < 1) {
                           throw InvalidArgument("on/off phases need at least one report each");
                       }
                   },
                   [n](const behavior::Collusion& b) {
                       if (b.n_on < 1 || b.m_off < 1) {
                           throw InvalidArgument("collusion phases need at least one report each");
                       }
                       if (b.target_sector >= n) {
                           throw InvalidArgument("collusion target sector out of range");
                       }
                       check_probability(b.off_pf, "collusion off-phase p_f");
                   },
               },
               spec);
}

bool is_attacker(const BehaviorSpec& spec)
{
    return !std::holds_alternative<behavior::Honest>(spec);
}

Category false_category(Category truth, std::uint32_t categories, Rng& rng)
{
    const auto r = static_cast<Category>(rng.below(categories - 1));
    return r < truth ? r : r + 1;
}

EmittedReport next_report(AgentState& agent, SectorIndex sector, Category truth, std::uint32_t categories,
                          std::span<const CollusionGroupState> groups, Rng& rng)
{
    if (agent.role == Role::Mtp) {
        return {sector, truth, true};
    }

    auto honest_with = [&](double p_f) -> EmittedReport {
        if (rng.bernoulli(p_f)) {
            return {sector, false_category(truth, categories, rng), false};
        }
        return {sector, truth, true};
    };

    const std::uint64_t phase = agent.phase++;
    return std::visit(overloaded{
                          [&](const behavior::Honest& b) {
                              return honest_with(b.p_f);
                          },
                          [&](const behavior::Corruption& b) {
                              return honest_with(b.p);
                          },
                          [&](const behavior::OnOff& b) {
                              const std::uint64_t cycle = static_cast<std::uint64_t>(b.n_on) + b.m_off;
                              if (phase % cycle < b.n_on) {
                                  return EmittedReport{sector, truth, true};
                              }
                              return EmittedReport{sector, false_category(truth, categories, rng), false};
                          },
                          [&](const behavior::Collusion& b) {
                              const CollusionGroupState& g = groups[b.group];
                              if (g.on()) {
                                  return EmittedReport{b.target_sector, g.false_value, false};
                              }
                              return honest_with(b.off_pf);
                          },
                      },
                      agent.behavior);
}

std::vector<Decision> majority_vote(std::span<const Report> window)
{
    if (window.empty()) {
        throw EmptyWindow();
    }
    // count per value, remembering first appearance for the tie-break
    std::map<Category, std::pair<std::size_t, std::size_t>> tally; // value -> (count, first index)
    for (std::size_t i = 0; i < window.size(); ++i) {
        auto [it, inserted] = tally.try_emplace(window[i].value, 0, i);
        ++it->second.first;
    }
    Category mode          = window.front().value;
    std::size_t best_count = 0;
    std::size_t best_first = window.size();
    for (const auto& [value, cf] : tally) {
        const auto [count, first] = cf;
        if (count > best_count || (count == best_count && first < best_first)) {
            mode       = value;
            best_count = count;
            best_first = first;
        }
    }
    std::vector<Decision> out(window.size());
    std::transform(window.begin(), window.end(), out.begin(), [mode](const Report& r) {
        return r.value == mode ? Decision::Reliable : Decision::Unreliable;
    });
    return out;
}

} // namespace first
