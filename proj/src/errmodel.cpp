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
#include "first/errmodel.hpp"
#include "first/cvp.hpp"
#include "first/error.hpp"

namespace first
{

ErrorBreakdown error_from_validation(double p_v, double p_f)
{
    if (!(p_f >= 0.0 && p_f <= 1.0)) {
        throw InvalidArgument("P{F} must lie in [0, 1]");
    }
    if (!(p_v >= 0.0 && p_v <= 1.0)) {
        throw InvalidArgument("P{V} must lie in [0, 1]");
    }
    ErrorBreakdown b{};
    b.p_v = p_v;
    const double not_validated = 1.0 - p_v;
    // belief (validated and reliable) plus half of the uncertainty mass
    b.p_accept_unvalidated = p_v * (1.0 - p_f) + 0.5 * not_validated;
    // a validated unreliable report is never accepted, acceptance of the rest ignores F
    b.p_r_given_f = b.p_accept_unvalidated * not_validated;
    // a validated reliable report is always accepted
    b.p_rbar_given_fbar = 1.0 - (p_v + not_validated * b.p_accept_unvalidated);
    b.p_e = p_f * b.p_r_given_f + (1.0 - p_f) * b.p_rbar_given_fbar;
    return b;
}

ErrorBreakdown calculate_error(const ErrorModelInput& input)
{
    return error_from_validation(p_validate_shared(input.dist, input.m), input.p_f);
}

} // namespace first
