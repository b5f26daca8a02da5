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
#ifndef FIRST_CVP_HPP
#define FIRST_CVP_HPP

#include "first/mobility.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace first
{

/**
 * Inputs of the validation-probability computation: one location distribution per
 * MTP and either a single distribution shared by every user or one per user.
 * MTPs move independently of each other.
 */
class ValidationModel
{
public:
    using UserDistributions = std::variant<MobilityDistribution, std::vector<MobilityDistribution>>;

    ValidationModel(std::vector<MobilityDistribution> mtp_dists, UserDistributions user_dists);

    /// m MTPs and all users following the same distribution.
    static ValidationModel shared(const MobilityDistribution& dist, std::size_t m);

    std::size_t sectors() const
    {
        return m_sectors;
    }
    std::size_t mtps() const
    {
        return m_mtp_dists.size();
    }
    const std::vector<MobilityDistribution>& mtp_dists() const
    {
        return m_mtp_dists;
    }
    const UserDistributions& user_dists() const
    {
        return m_user_dists;
    }

private:
    std::vector<MobilityDistribution> m_mtp_dists;
    UserDistributions m_user_dists;
    std::size_t m_sectors;
};

/// Probability that at least one MTP is in `sector`: 1 - prod_k (1 - q_k(sector)).
double p_validate_given_sector(const ValidationModel& model, SectorIndex sector);

/// The per-sector vector of p_validate_given_sector.
std::vector<double> p_validate_by_sector(const ValidationModel& model);

/// Average probability that a user report is validated, over sectors and users.
double p_validate(const ValidationModel& model);

/// Closed form for m identical MTPs sharing `dist` with the users, in O(n).
double p_validate_shared(const MobilityDistribution& dist, std::size_t m);

} // namespace first

#endif // FIRST_CVP_HPP
