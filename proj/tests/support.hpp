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
#ifndef FIRST_TESTS_SUPPORT_HPP
#define FIRST_TESTS_SUPPORT_HPP

#include "first/cvp.hpp"
#include "first/errmodel.hpp"
#include "first/mobility.hpp"
#include "first/moa.hpp"
#include "first/random.hpp"

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace first::support
{

// Road-popularity distribution of the two-row, four-column example area.
inline MobilityDistribution l2()
{
    return MobilityDistribution({1.0 / 8, 0.0, 1.0 / 8, 0.0, 1.0 / 8, 0.0, 2.0 / 8, 3.0 / 8});
}

// Random distribution over n sectors; roughly a third of the entries are zeroed.
inline MobilityDistribution random_distribution(Rng& rng, std::size_t n)
{
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& x : w) {
        x = rng.bernoulli(0.3) ? 0.0 : rng.uniform01() + 1e-3;
        total += x;
    }
    if (total == 0.0) {
        w[rng.below(n)] = 1.0;
        total           = 1.0;
    }
    for (auto& x : w) {
        x /= total;
    }
    // renormalize the rounding away so the sum check stays tight
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        s += w[i];
    }
    w[n - 1] = std::max(0.0, 1.0 - s);
    return MobilityDistribution(w);
}

// Validation probability by enumerating every placement of the user and all MTPs.
inline double brute_force_pv_for_user(const std::vector<MobilityDistribution>& mtps, const MobilityDistribution& user)
{
    const std::size_t n = user.size();
    const std::size_t m = mtps.size();
    std::size_t combos  = n;
    for (std::size_t k = 0; k < m; ++k) {
        combos *= n;
    }
    double pv = 0.0;
    std::vector<std::size_t> digits(m + 1);
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rest = c;
        for (auto& d : digits) {
            d = rest % n;
            rest /= n;
        }
        double w = user[digits[0]];
        bool hit = false;
        for (std::size_t k = 0; k < m; ++k) {
            w *= mtps[k][digits[k + 1]];
            hit = hit || digits[k + 1] == digits[0];
        }
        if (hit) {
            pv += w;
        }
    }
    return pv;
}

inline double brute_force_pv(const std::vector<MobilityDistribution>& mtps, const std::vector<MobilityDistribution>& users)
{
    double total = 0.0;
    for (const auto& u : users) {
        total += brute_force_pv_for_user(mtps, u);
    }
    return total / static_cast<double>(users.size());
}

// Smallest m in [0, m_max] meeting the bound, by scanning every m.
inline MopSolution linear_scan_mop(const MopProblem& p)
{
    for (std::size_t m = 0; m <= p.m_max; ++m) {
        const double e = p_error(p.dist, p.p_f, m);
        if (e <= p.eps_max) {
            return Feasible{m, e};
        }
    }
    return Infeasible{p_error(p.dist, p.p_f, p.m_max)};
}

inline std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("first_tests_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void spit(const std::filesystem::path& p, const std::string& content)
{
    std::ofstream out(p, std::ios::binary);
    out << content;
}

} // namespace first::support

#endif // FIRST_TESTS_SUPPORT_HPP
