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
#ifndef FIRST_RANDOM_HPP
#define FIRST_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace first
{

/**
 * Seeded random source used everywhere randomness is needed.
 *
 * Wraps std::mt19937_64, whose output sequence is fixed by the standard, and derives
 * uniform reals, bounded integers and coin flips from raw 64-bit draws itself so that
 * results do not depend on the standard library's distribution implementations.
 */
class Rng
{
public:
    explicit Rng(std::uint64_t seed)
        : m_engine(mix(seed))
    {
    }

    std::uint64_t next()
    {
        return m_engine();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01()
    {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t below(std::size_t n)
    {
        const auto bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return static_cast<std::size_t>(x % bound);
    }

    bool bernoulli(double p)
    {
        return uniform01() < p;
    }

    /// Independent generator for a named sub-stream of the same seed.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id)
    {
        return Rng(seed ^ mix(stream_id + 0x9e3779b97f4a7c15ULL));
    }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 m_engine;
};

} // namespace first

#endif // FIRST_RANDOM_HPP
