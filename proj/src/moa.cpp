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
#include "first/moa.hpp"
#include "first/errmodel.hpp"
#include "first/error.hpp"

namespace first
{

MopSolution solve_leftmost(const ErrorCurve& error, double eps_max, std::size_t m_max)
{
    const double eps_min = error(m_max);
    if (eps_max < eps_min) {
        return Infeasible{eps_min};
    }

    // invariant: error(hi) <= eps_max, and every m < lo has error(m) > eps_max
    std::size_t lo = 0;
    std::size_t hi = m_max;
    double at_hi   = eps_min;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const double e        = error(mid);
        if (e <= eps_max) {
            hi    = mid;
            at_hi = e;
        }
        else {
            lo = mid + 1;
        }
    }
    return Feasible{hi, at_hi};
}

MopSolution solve_mop(const MopProblem& problem)
{
    if (!(problem.eps_max > 0.0 && problem.eps_max < 1.0)) {
        throw InvalidArgument("eps_max must lie in (0, 1)");
    }
    if (problem.m_max < 1) {
        throw InvalidArgument("m_max must be at least 1");
    }
    if (!(problem.p_f >= 0.0 && problem.p_f <= 1.0)) {
        throw InvalidArgument("P{F} must lie in [0, 1]");
    }
    const auto curve = [&problem](std::size_t m) {
        return p_error(problem.dist, problem.p_f, m);
    };
    return solve_leftmost(curve, problem.eps_max, problem.m_max);
}

} // namespace first
