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
#ifndef FIRST_TRUST_HPP
#define FIRST_TRUST_HPP

#include "first/grid.hpp"
#include "first/random.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace first
{

using UserId   = std::uint32_t;
using Category = std::uint32_t;

enum class Validation : std::uint8_t
{
    NotValidated,
    ValidatedReliable,
    ValidatedUnreliable,
};

enum class Decision : std::uint8_t
{
    Reliable,
    Unreliable,
};

struct Report {
    UserId user = 0;
    SectorIndex sector = 0;
    std::int64_t timestep = 0;
    Category value = 0;
    bool ground_truth_match = true; ///< known to the simulator only
    Validation validation = Validation::NotValidated;
    Decision decision = Decision::Unreliable;
};

struct TrustCounters {
    std::uint64_t k   = 0; ///< reports submitted
    std::uint64_t k_v = 0; ///< reports validated by an MTP
    std::uint64_t k_r = 0; ///< reports validated as reliable
};

/// k_r/k + (1 - k_v/k)/2, or 1/2 when nothing has been submitted yet.
double trust_value(const TrustCounters& c);

/// How a non-validated report is turned into a decision from the user's trust T.
enum class DecisionRule : std::uint8_t
{
    Argmax, ///< the more probable class, fair coin at T = 1/2
    Sample, ///< R with probability T
};

/// Outcome of classifying one report.
struct Classification {
    Decision decision;
    double p_accept; ///< probability the classifier assigned to R
};

/**
 * Per-user report counters and the trust-based report classifier.
 *
 * Users are dense integer ids; an id never seen before starts at (0, 0, 0).
 * The ledger is single-writer: reports must be classified in arrival order.
 */
class TrustLedger
{
public:
    TrustLedger() = default;
    explicit TrustLedger(std::size_t users)
        : m_counters(users)
    {
    }

    TrustCounters counters(UserId user) const
    {
        return user < m_counters.size() ? m_counters[user] : TrustCounters{};
    }

    double trust_of(UserId user) const
    {
        return trust_value(counters(user));
    }

    /**
     * Records the report and returns its class.
     *
     * Validated reports are decided by the MTP verdict. For a non-validated report the
     * trust is computed after counting the report itself, and the decision follows `rule`.
     */
    Classification classify(const Report& report, Rng& rng, DecisionRule rule = DecisionRule::Argmax);

    /// Updates the counters for `report` without deciding it.
    void record(const Report& report);

    std::size_t users() const
    {
        return m_counters.size();
    }

    /// CSV with columns user_id,k,k_v,k_r,T, one row per known user.
    void write_csv(std::ostream& out) const;

private:
    TrustCounters& slot(UserId user);

    std::vector<TrustCounters> m_counters;
};

/// Free-function form mirroring TrustLedger::trust_of.
inline double trust_of(const TrustLedger& ledger, UserId user)
{
    return ledger.trust_of(user);
}

} // namespace first

#endif // FIRST_TRUST_HPP
