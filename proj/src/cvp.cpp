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
#include "first/cvp.hpp"
#include "first/error.hpp"

#include <algorithm>
#include <cmath>

namespace first
{

ValidationModel::ValidationModel(std::vector<MobilityDistribution> mtp_dists, UserDistributions user_dists)
    : m_mtp_dists(std::move(mtp_dists))
    , m_user_dists(std::move(user_dists))
{
    if (const auto* one = std::get_if<MobilityDistribution>(&m_user_dists)) {
        m_sectors = one->size();
    }
    else {
        const auto& many = std::get<std::vector<MobilityDistribution>>(m_user_dists);
        if (many.empty()) {
            throw InvalidArgument("per-user mode needs at least one user distribution");
        }
        m_sectors = many.front().size();
        for (const auto& d : many) {
            if (d.size() != m_sectors) {
                throw InvalidArgument("user distributions disagree on the sector count");
            }
        }
    }
    for (const auto& q : m_mtp_dists) {
        if (q.size() != m_sectors) {
            throw InvalidArgument("MTP distribution sector count differs from the users'");
        }
    }
}

ValidationModel ValidationModel::shared(const MobilityDistribution& dist, std::size_t m)
{
    return ValidationModel(std::vector<MobilityDistribution>(m, dist), dist);
}

double p_validate_given_sector(const ValidationModel& model, SectorIndex sector)
{
    if (sector >= model.sectors()) {
        throw InvalidArgument("sector index out of range");
    }
    double none_present = 1.0;
    for (const auto& q : model.mtp_dists()) {
        none_present *= 1.0 - q[sector];
    }
    return 1.0 - none_present;
}

std::vector<double> p_validate_by_sector(const ValidationModel& model)
{
    std::vector<double> out(model.sectors());
    for (SectorIndex i = 0; i < out.size(); ++i) {
        out[i] = p_validate_given_sector(model, i);
    }
    return out;
}

namespace
{

double p_validate_user(const std::vector<double>& by_sector, const MobilityDistribution& u)
{
    double p = 0.0;
    for (SectorIndex i = 0; i < by_sector.size(); ++i) {
        p += by_sector[i] * u[i];
    }
    // masses may sum to 1 within rounding, so clip the overshoot
    return std::min(p, 1.0);
}

} // namespace

double p_validate(const ValidationModel& model)
{
    const auto by_sector = p_validate_by_sector(model);
    if (const auto* one = std::get_if<MobilityDistribution>(&model.user_dists())) {
        return p_validate_user(by_sector, *one);
    }
    const auto& users = std::get<std::vector<MobilityDistribution>>(model.user_dists());
    double sum = 0.0;
    for (const auto& u : users) {
        sum += p_validate_user(by_sector, u);
    }
    return sum / static_cast<double>(users.size());
}

double p_validate_shared(const MobilityDistribution& dist, std::size_t m)
{
    double p = 0.0;
    for (double l : dist.probs()) {
        p += l * (1.0 - std::pow(1.0 - l, static_cast<double>(m)));
    }
    return std::min(p, 1.0);
}

} // namespace first
