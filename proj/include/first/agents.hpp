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
#ifndef FIRST_AGENTS_HPP
#define FIRST_AGENTS_HPP

#include "first/random.hpp"
#include "first/trust.hpp"

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace first
{

namespace behavior
{

/// Non-attacker that errs with probability p_f.
struct Honest {
    double p_f = 0.01;
};

/// Sends a false value with probability p on every report.
struct Corruption {
    double p = 0.8;
};

/// n_on truthful reports, then m_off false ones, repeating.
struct OnOff {
    std::uint32_t n_on  = 10;
    std::uint32_t m_off = 10;
};

/// Member of a collusion group. While the group is ON every member claims target_sector
/// and sends the group's agreed false value; while OFF it behaves as Honest{off_pf}.
struct Collusion {
    std::uint32_t group       = 0;
    SectorIndex target_sector = 0;
    std::uint32_t n_on        = 10;
    std::uint32_t m_off       = 10;
    double off_pf             = 0.01;
};

} // namespace behavior

using BehaviorSpec = std::variant<behavior::Honest, behavior::Corruption, behavior::OnOff, behavior::Collusion>;

/// Throws InvalidArgument when parameters are out of range for a grid of n sectors.
void validate_behavior(const BehaviorSpec& spec, std::size_t n);

bool is_attacker(const BehaviorSpec& spec);

enum class Role : std::uint8_t
{
    User,
    Mtp,
};

struct AgentState {
    UserId id = 0;
    Role role = Role::User;
    BehaviorSpec behavior = behavior::Honest{};
    std::uint64_t phase = 0; ///< reports emitted so far, drives on/off cycles
};

/// Shared phase clock and agreed value of one collusion group, owned by the run.
struct CollusionGroupState {
    std::uint32_t n_on   = 10;
    std::uint32_t m_off  = 10;
    std::uint64_t clock  = 0; ///< advanced once per timestep
    Category false_value = 0; ///< agreed value for the current step

    bool on() const
    {
        return clock % (static_cast<std::uint64_t>(n_on) + m_off) < n_on;
    }
};

/// Value and claimed location of one emitted report.
struct EmittedReport {
    SectorIndex sector;
    Category value;
    bool truthful; ///< value equals the ground truth of `sector`
};

/// Uniform draw among the categories different from `truth`. categories must be >= 2.
Category false_category(Category truth, std::uint32_t categories, Rng& rng);

/**
 * Produces the next report of an agent located in `sector` whose ground truth is `truth`.
 *
 * MTPs always send the truth. For colluders in an ON phase the claimed sector is the
 * group target and the value the group's agreed false value; `groups` must then hold
 * that group's state.
 */
EmittedReport next_report(AgentState& agent, SectorIndex sector, Category truth, std::uint32_t categories,
                          std::span<const CollusionGroupState> groups, Rng& rng);

/**
 * Majority-vote baseline over all reports of one sector and timestep window.
 *
 * Reports carrying the modal value are Reliable, the rest Unreliable. Among tied modes the
 * value that appears first in the window wins. Throws EmptyWindow for an empty span.
 */
std::vector<Decision> majority_vote(std::span<const Report> window);

} // namespace first

#endif // FIRST_AGENTS_HPP
