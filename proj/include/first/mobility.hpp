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
#ifndef FIRST_MOBILITY_HPP
#define FIRST_MOBILITY_HPP

#include "first/grid.hpp"
#include "first/random.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace first
{

/**
 * Stationary probability of finding an agent in each sector.
 *
 * Construction validates the vector (non-negative, sums to one within 1e-9) and
 * precomputes the cumulative sums used by sample_sector.
 */
class MobilityDistribution
{
public:
    explicit MobilityDistribution(std::vector<double> probs);

    static MobilityDistribution uniform(std::size_t n);

    std::size_t size() const
    {
        return m_probs.size();
    }
    double operator[](SectorIndex i) const
    {
        return m_probs[i];
    }
    std::span<const double> probs() const
    {
        return m_probs;
    }

    /// Draws a sector with probability probs[i].
    SectorIndex sample_sector(Rng& rng) const;

private:
    std::vector<double> m_probs;
    std::vector<double> m_cumulative;
};

inline SectorIndex sample_sector(const MobilityDistribution& dist, Rng& rng)
{
    return dist.sample_sector(rng);
}

/// Grayscale raster, row 0 at the top (north).
struct MapRaster {
    std::size_t width  = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels; ///< row-major, width * height

    std::uint8_t at(std::size_t x, std::size_t y) const
    {
        return pixels[y * width + x];
    }
};

/// Reads a portable graymap (P2 or P5, maxval 255).
MapRaster read_pgm(std::istream& in);
MapRaster read_pgm(const std::filesystem::path& path);
/// Writes a binary (P5) graymap.
void write_pgm(std::ostream& out, const MapRaster& raster);

/// Default intensity below which a pixel counts as black.
inline constexpr int default_black_threshold = 128;

/**
 * Likelihood estimation from a road-popularity raster.
 *
 * Counts the pixels darker than black_threshold inside each sector and normalizes by
 * the total. Throws AllWhiteMap when no pixel qualifies.
 */
MobilityDistribution lea(const MapRaster& raster, const SectorGrid& grid,
                         int black_threshold = default_black_threshold);

/// Fraction of in-bounds samples falling into each sector. Throws EmptyTrace if none.
MobilityDistribution empirical_distribution(std::span<const std::vector<GeoPoint>> traces, const SectorGrid& grid);

/// Same, for already sectorized samples over n sectors.
MobilityDistribution empirical_distribution(std::span<const SectorIndex> samples, std::size_t n);

/// One-column CSV with header `prob`.
void write_distribution_csv(std::ostream& out, const MobilityDistribution& dist);
MobilityDistribution read_distribution_csv(std::istream& in);
MobilityDistribution read_distribution_csv(const std::filesystem::path& path);

} // namespace first

#endif // FIRST_MOBILITY_HPP
