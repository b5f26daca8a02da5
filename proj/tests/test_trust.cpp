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

#include <gtest/gtest.h>

#include <sstream>

using namespace first;

namespace
{

Report report(UserId user, Validation v)
{
    Report r;
    r.user       = user;
    r.validation = v;
    return r;
}

// Feeds reports so that `user` ends at exactly (k, k_v, k_r).
void seed_counters(TrustLedger& ledger, UserId user, std::uint64_t k, std::uint64_t k_v, std::uint64_t k_r)
{
    for (std::uint64_t i = 0; i < k_r; ++i) {
        ledger.record(report(user, Validation::ValidatedReliable));
    }
    for (std::uint64_t i = k_r; i < k_v; ++i) {
        ledger.record(report(user, Validation::ValidatedUnreliable));
    }
    for (std::uint64_t i = k_v; i < k; ++i) {
        ledger.record(report(user, Validation::NotValidated));
    }
}

} // namespace

TEST(Trust, ValueExamples)
{
    EXPECT_DOUBLE_EQ(trust_value({10, 10, 10}), 1.0);
    EXPECT_DOUBLE_EQ(trust_value({10, 0, 0}), 0.5);
    EXPECT_DOUBLE_EQ(trust_value({4, 2, 1}), 0.5);
    EXPECT_DOUBLE_EQ(trust_value({0, 0, 0}), 0.5);
    EXPECT_DOUBLE_EQ(trust_value({8, 8, 0}), 0.0);
}

TEST(Trust, LedgerLookup)
{
    TrustLedger ledger;
    seed_counters(ledger, 3, 4, 2, 1);
    const auto c = ledger.counters(3);
    EXPECT_EQ(c.k, 4u);
    EXPECT_EQ(c.k_v, 2u);
    EXPECT_EQ(c.k_r, 1u);
    EXPECT_DOUBLE_EQ(trust_of(ledger, 3), 0.5);
    // unknown users read as fresh
    EXPECT_EQ(ledger.counters(99).k, 0u);
    EXPECT_DOUBLE_EQ(ledger.trust_of(99), 0.5);
}

TEST(Trust, ValidatedReportsFollowTheMtp)
{
    TrustLedger ledger;
    Rng rng(1);
    seed_counters(ledger, 0, 20, 20, 0); // trust 0
    const auto ok = ledger.classify(report(0, Validation::ValidatedReliable), rng);
    EXPECT_EQ(ok.decision, Decision::Reliable);
    EXPECT_EQ(ledger.counters(0).k, 21u);
    EXPECT_EQ(ledger.counters(0).k_v, 21u);
    EXPECT_EQ(ledger.counters(0).k_r, 1u);

    seed_counters(ledger, 1, 20, 20, 20); // trust 1
    const auto bad = ledger.classify(report(1, Validation::ValidatedUnreliable), rng);
    EXPECT_EQ(bad.decision, Decision::Unreliable);
    EXPECT_EQ(ledger.counters(1).k_r, 20u);
    EXPECT_EQ(ledger.counters(1).k_v, 21u);
}

TEST(Trust, FreshUserIsCoinFlip)
{
    int accepted   = 0;
    const int runs = 20000;
    for (int i = 0; i < runs; ++i) {
        TrustLedger ledger;
        Rng rng(static_cast<std::uint64_t>(i));
        const auto c = ledger.classify(report(0, Validation::NotValidated), rng);
        EXPECT_DOUBLE_EQ(c.p_accept, 0.5);
        accepted += c.decision == Decision::Reliable ? 1 : 0;
    }
    EXPECT_NEAR(accepted / static_cast<double>(runs), 0.5, 0.02);
}

TEST(Trust, TrustCountsTheCurrentReport)
{
    TrustLedger ledger;
    Rng rng(2);
    seed_counters(ledger, 0, 9, 9, 9);
    const auto c = ledger.classify(report(0, Validation::NotValidated), rng);
    EXPECT_DOUBLE_EQ(c.p_accept, 0.95);
    EXPECT_EQ(c.decision, Decision::Reliable);
    EXPECT_EQ(ledger.counters(0).k, 10u);
}

TEST(Trust, ArgmaxRejectsLowTrust)
{
    TrustLedger ledger;
    Rng rng(3);
    seed_counters(ledger, 0, 9, 9, 2);
    const auto c = ledger.classify(report(0, Validation::NotValidated), rng);
    EXPECT_LT(c.p_accept, 0.5);
    EXPECT_EQ(c.decision, Decision::Unreliable);
}

TEST(Trust, ExactTieUsesTheCoin)
{
    // (k, k_v, k_r) = (3, 2, 1) after the report: T = 1/3 + 1/6 = 1/2
    int accepted = 0;
    for (std::uint64_t s = 0; s < 4000; ++s) {
        TrustLedger ledger;
        Rng rng(s);
        seed_counters(ledger, 0, 2, 2, 1);
        accepted += ledger.classify(report(0, Validation::NotValidated), rng).decision == Decision::Reliable ? 1 : 0;
    }
    EXPECT_NEAR(accepted / 4000.0, 0.5, 0.04);
}

TEST(Trust, SampleRuleAcceptsWithProbabilityT)
{
    int accepted = 0;
    const int runs = 40000;
    for (int i = 0; i < runs; ++i) {
        TrustLedger ledger;
        Rng rng(static_cast<std::uint64_t>(i) + 7);
        seed_counters(ledger, 0, 9, 8, 6); // T after the report = 0.6 + 0.1 = 0.7
        const auto c = ledger.classify(report(0, Validation::NotValidated), rng, DecisionRule::Sample);
        ASSERT_DOUBLE_EQ(c.p_accept, 0.7);
        accepted += c.decision == Decision::Reliable ? 1 : 0;
    }
    EXPECT_NEAR(accepted / static_cast<double>(runs), 0.7, 0.01);
}

TEST(Trust, CounterInvariantUnderRandomStreams)
{
    Rng rng(5);
    TrustLedger ledger;
    for (int i = 0; i < 100000; ++i) {
        const auto user = static_cast<UserId>(rng.below(50));
        const auto v    = static_cast<Validation>(rng.below(3));
        const auto rule = rng.bernoulli(0.5) ? DecisionRule::Argmax : DecisionRule::Sample;
        const auto c    = ledger.classify(report(user, v), rng, rule);
        const auto t    = ledger.counters(user);
        ASSERT_LE(t.k_r, t.k_v);
        ASSERT_LE(t.k_v, t.k);
        ASSERT_GE(c.p_accept, 0.0);
        ASSERT_LE(c.p_accept, 1.0);
    }
    EXPECT_LE(ledger.users(), 50u);
}

TEST(Trust, ExtremeHistories)
{
    TrustLedger ledger;
    Rng rng(6);
    for (int i = 0; i < 500; ++i) {
        ledger.classify(report(0, Validation::ValidatedReliable), rng);
        ledger.classify(report(1, Validation::ValidatedUnreliable), rng);
        ASSERT_DOUBLE_EQ(ledger.trust_of(0), 1.0);
        ASSERT_DOUBLE_EQ(ledger.trust_of(1), 0.0);
    }
}

TEST(Trust, ConvergesToValidationMixture)
{
    Rng rng(7);
    for (auto [v, f] : {std::pair{0.9, 0.8}, {0.5, 0.2}, {0.3, 0.01}, {0.7, 0.5}}) {
        TrustLedger ledger;
        for (int i = 0; i < 10000; ++i) {
            Validation val = Validation::NotValidated;
            if (rng.bernoulli(v)) {
                val = rng.bernoulli(f) ? Validation::ValidatedUnreliable : Validation::ValidatedReliable;
            }
            ledger.classify(report(0, val), rng);
        }
        EXPECT_NEAR(ledger.trust_of(0), v * (1.0 - f) + 0.5 * (1.0 - v), 0.02) << "v=" << v << " f=" << f;
    }
}

TEST(Trust, StorageIsThreeCountersPerUser)
{
    TrustLedger ledger;
    Rng rng(8);
    for (int i = 0; i < 50000; ++i) {
        ledger.classify(report(2, Validation::NotValidated), rng);
    }
    EXPECT_EQ(ledger.users(), 3u);
    static_assert(sizeof(TrustCounters) == 3 * sizeof(std::uint64_t));
}

TEST(Trust, CsvHasOneRowPerUser)
{
    TrustLedger ledger;
    seed_counters(ledger, 1, 4, 2, 1);
    std::ostringstream out;
    ledger.write_csv(out);
    EXPECT_EQ(out.str(), "user_id,k,k_v,k_r,T\n0,0,0,0,0.5\n1,4,2,1,0.5\n");
}
