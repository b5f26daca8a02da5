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
#ifndef FIRST_ERRMODEL_HPP
#define FIRST_ERRMODEL_HPP

#include "first/mobility.hpp"

#include <cstddef>

namespace first
{

struct ErrorModelInput {
    MobilityDistribution dist; ///< shared by users and MTPs
    double p_f;                ///< probability that a user report is unreliable
    std::size_t m;             ///< number of MTPs
};

/// Intermediate and final probabilities of the classification-error model.
struct ErrorBreakdown {
    double p_v;                  ///< report validated by at least one MTP
    double p_accept_unvalidated; ///< P{R | not validated}, trust-model acceptance
    double p_r_given_f;          ///< unreliable report accepted
    double p_rbar_given_fbar;    ///< reliable report rejected
    double p_e;                  ///< classification error
};

/// Error breakdown for a given validation probability and unreliability rate.
ErrorBreakdown error_from_validation(double p_v, double p_f);

/// Full chain: validation probability for m identical MTPs, then the error breakdown.
ErrorBreakdown calculate_error(const ErrorModelInput& input);

inline double p_error(const MobilityDistribution& dist, double p_f, std::size_t m)
{
    return calculate_error({dist, p_f, m}).p_e;
}

} // namespace first

#endif // FIRST_ERRMODEL_HPP
