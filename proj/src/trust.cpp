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
#include "first/trust.hpp"

#include <fmt/format.h>

#include <ostream>

namespace first
{

double trust_value(const TrustCounters& c)
{
    if (c.k == 0) {
        return 0.5;
    }
    const auto k = static_cast<double>(c.k);
    return static_cast<double>(c.k_r) / k + 0.5 * (1.0 - static_cast<double>(c.k_v) / k);
}

TrustCounters& TrustLedger::slot(UserId user)
{
    if (user >= m_counters.size()) {
        m_counters.resize(static_cast<std::size_t>(user) + 1);
    }
    return m_counters[user];
}

Classification TrustLedger::classify(const Report& report, Rng& rng, DecisionRule rule)
{
    record(report);
    switch (report.validation) {
    case Validation::ValidatedReliable:
        return {Decision::Reliable, 1.0};
    case Validation::ValidatedUnreliable:
        return {Decision::Unreliable, 0.0};
    case Validation::NotValidated:
        break;
    }

    const TrustCounters& c = m_counters[report.user];
    const double t = trust_value(c);
    if (rule == DecisionRule::Sample) {
        return {rng.bernoulli(t) ? Decision::Reliable : Decision::Unreliable, t};
    }
    // T > 1/2 exactly when 2 k_r > k_v; compare in integers so ties are exact
    if (2 * c.k_r > c.k_v) {
        return {Decision::Reliable, t};
    }
    if (2 * c.k_r < c.k_v) {
        return {Decision::Unreliable, t};
    }
    return {rng.bernoulli(0.5) ? Decision::Reliable : Decision::Unreliable, t};
}

void TrustLedger::record(const Report& report)
{
    TrustCounters& c = slot(report.user);
    ++c.k;
    if (report.validation != Validation::NotValidated) {
        ++c.k_v;
    }
    if (report.validation == Validation::ValidatedReliable) {
        ++c.k_r;
    }
}

void TrustLedger::write_csv(std::ostream& out) const
{
    out << "user_id,k,k_v,k_r,T\n";
    for (std::size_t u = 0; u < m_counters.size(); ++u) {
        const auto& c = m_counters[u];
        out << fmt::format("{},{},{},{},{}\n", u, c.k, c.k_v, c.k_r, trust_value(c));
    }
}

} // namespace first
