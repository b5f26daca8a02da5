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

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace first;
using first::support::brute_force_pv;
using first::support::l2;
using first::support::random_distribution;

TEST(Cvp, UniformSectorOfEight)
{
    const auto model = ValidationModel::shared(MobilityDistribution::uniform(8), 5);
    const double expected = 1.0 - std::pow(7.0 / 8.0, 5);
    for (SectorIndex s = 0; s < 8; ++s) {
        EXPECT_DOUBLE_EQ(p_validate_given_sector(model, s), expected);
    }
    EXPECT_NEAR(p_validate_given_sector(model, 0), 0.49, 0.005);
}

TEST(Cvp, NoMtpsNeverValidates)
{
    const auto model = ValidationModel::shared(l2(), 0);
    for (SectorIndex s = 0; s < 8; ++s) {
        EXPECT_EQ(p_validate_given_sector(model, s), 0.0);
    }
    EXPECT_EQ(p_validate(model), 0.0);
    EXPECT_EQ(p_validate_shared(MobilityDistribution::uniform(5), 0), 0.0);
}

TEST(Cvp, CertainPresenceValidates)
{
    const ValidationModel model({MobilityDistribution({0.0, 1.0, 0.0})}, MobilityDistribution::uniform(3));
    EXPECT_EQ(p_validate_given_sector(model, 1), 1.0);
    EXPECT_EQ(p_validate_given_sector(model, 0), 0.0);
}

TEST(Cvp, WorkedExamples)
{
    EXPECT_NEAR(p_validate_shared(MobilityDistribution::uniform(8), 5), 0.49, 0.005);
    EXPECT_NEAR(p_validate_shared(l2(), 5), 0.71, 0.005);
    EXPECT_NEAR(p_validate(ValidationModel::shared(l2(), 5)), 0.71, 0.005);
    // single MTP: sum of squared masses, 16/64
    EXPECT_DOUBLE_EQ(p_validate_shared(l2(), 1), 0.25);
}

TEST(Cvp, BySectorMatchesPointQueries)
{
    const auto model = ValidationModel::shared(l2(), 3);
    const auto by = p_validate_by_sector(model);
    ASSERT_EQ(by.size(), 8u);
    for (SectorIndex s = 0; s < 8; ++s) {
        EXPECT_EQ(by[s], p_validate_given_sector(model, s));
    }
    EXPECT_THROW(p_validate_given_sector(model, 8), InvalidArgument);
}

TEST(Cvp, RejectsMismatchedSectorCounts)
{
    EXPECT_THROW(ValidationModel({MobilityDistribution::uniform(3)}, MobilityDistribution::uniform(4)),
                 InvalidArgument);
    EXPECT_THROW(ValidationModel({}, std::vector<MobilityDistribution>{}), InvalidArgument);
    EXPECT_THROW(ValidationModel({}, std::vector<MobilityDistribution>{MobilityDistribution::uniform(2),
                                                                        MobilityDistribution::uniform(3)}),
                 InvalidArgument);
}

TEST(Cvp, BruteForceSharedMode)
{
    Rng rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng.below(4);
        const std::size_t m = rng.below(4);
        const auto d = random_distribution(rng, n);
        const std::vector<MobilityDistribution> mtps(m, d);
        const double oracle = brute_force_pv(mtps, {d});
        ASSERT_NEAR(p_validate(ValidationModel::shared(d, m)), oracle, 1e-12) << "n=" << n << " m=" << m;
        ASSERT_NEAR(p_validate_shared(d, m), oracle, 1e-12) << "n=" << n << " m=" << m;
    }
}

TEST(Cvp, BruteForceHeterogeneousMode)
{
    Rng rng(18);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng.below(4);
        const std::size_t m = rng.below(4);
        std::vector<MobilityDistribution> mtps;
        for (std::size_t k = 0; k < m; ++k) {
            mtps.push_back(random_distribution(rng, n));
        }
        std::vector<MobilityDistribution> users;
        for (std::size_t u = 0, nu = 1 + rng.below(4); u < nu; ++u) {
            users.push_back(random_distribution(rng, n));
        }
        const double oracle = brute_force_pv(mtps, users);
        ASSERT_NEAR(p_validate(ValidationModel(mtps, users)), oracle, 1e-12);
    }
}

TEST(Cvp, MonotoneAndBoundedInM)
{
    Rng rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = random_distribution(rng, 1 + rng.below(40));
        double prev = -1.0;
        for (std::size_t m = 0; m <= 10; ++m) {
            const double pv = p_validate(ValidationModel::shared(d, m));
            ASSERT_GE(pv, 0.0);
            ASSERT_LE(pv, 1.0);
            ASSERT_GE(pv, prev);
            prev = pv;
        }
    }
}

TEST(Cvp, CertaintyCharacterization)
{
    // users on sectors {0, 2}; the MTP set covers both with certainty
    const MobilityDistribution user({0.5, 0.0, 0.5});
    const ValidationModel covered({MobilityDistribution({1.0, 0.0, 0.0}), MobilityDistribution({0.0, 0.0, 1.0})}, user);
    EXPECT_EQ(p_validate(covered), 1.0);
    const ValidationModel partial({MobilityDistribution({1.0, 0.0, 0.0}), MobilityDistribution({0.0, 0.5, 0.5})}, user);
    EXPECT_LT(p_validate(partial), 1.0);
    // every sector with user mass is hit with certainty only in a point mass
    EXPECT_EQ(p_validate_shared(MobilityDistribution({0.0, 1.0}), 1), 1.0);
    EXPECT_LT(p_validate_shared(MobilityDistribution({0.5, 0.5}), 50), 1.0);
}
