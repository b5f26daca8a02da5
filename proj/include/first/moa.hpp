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
#ifndef FIRST_MOA_HPP
#define FIRST_MOA_HPP

#include "first/mobility.hpp"

#include <cstddef>
#include <functional>
#include <variant>

namespace first
{

/// Smallest number of MTPs keeping the classification error at or below eps_max.
struct MopProblem {
    MobilityDistribution dist;
    double p_f;
    double eps_max;
    std::size_t m_max;
};

struct Feasible {
    std::size_t m_star;
    double p_e_at_m_star;
};

struct Infeasible {
    double p_e_at_m_max;
};

using MopSolution = std::variant<Feasible, Infeasible>;

/// Error as a function of the MTP count. Must be non-increasing for the search to be exact.
using ErrorCurve = std::function<double(std::size_t)>;

/**
 * Leftmost m in [0, m_max] with error(m) <= eps_max, by binary search.
 *
 * error(m_max) is evaluated first; if it already exceeds eps_max the problem is
 * infeasible. Otherwise at most ceil(log2(m_max + 1)) further evaluations are made.
 */
MopSolution solve_leftmost(const ErrorCurve& error, double eps_max, std::size_t m_max);

/// Solves the MTP optimization problem on the closed-form error model.
MopSolution solve_mop(const MopProblem& problem);

inline bool is_feasible(const MopSolution& s)
{
    return std::holds_alternative<Feasible>(s);
}

} // namespace first

#endif // FIRST_MOA_HPP
