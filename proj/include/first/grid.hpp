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
#ifndef FIRST_GRID_HPP
#define FIRST_GRID_HPP

#include <cstddef>
#include <cstdint>
#include <optional>

namespace first
{

using SectorIndex = std::size_t;

struct BoundingBox {
    double lat_min;
    double lat_max;
    double lon_min;
    double lon_max;
};

struct GeoPoint {
    double lat;
    double lon;
    std::int64_t timestamp = 0; ///< seconds
};

/**
 * Rectangular partition of the sensing area into rows x cols sectors.
 *
 * Sectors are numbered row-major, row 0 being the northernmost band and column 0 the
 * westernmost. Cells are half-open: a point on an interior boundary belongs to the cell
 * with the larger index on that axis, and the outer max edge is closed so the partition
 * is total over the bounding box.
 */
class SectorGrid
{
public:
    SectorGrid(std::size_t rows, std::size_t cols, BoundingBox bounds);

    std::size_t rows() const
    {
        return m_rows;
    }
    std::size_t cols() const
    {
        return m_cols;
    }
    std::size_t size() const
    {
        return m_rows * m_cols;
    }
    const BoundingBox& bounds() const
    {
        return m_bounds;
    }

    SectorIndex index(std::size_t row, std::size_t col) const
    {
        return row * m_cols + col;
    }

    bool contains(const GeoPoint& p) const;

    /// Sector containing p, or nothing when p lies outside the bounds.
    std::optional<SectorIndex> sector_of(const GeoPoint& p) const;

    /// Sector of pixel (x, y) of a width x height raster whose row 0 is the northern edge.
    /// Uses exact integer proportional mapping with the same half-open convention.
    SectorIndex sector_of_pixel(std::size_t x, std::size_t y, std::size_t width, std::size_t height) const;

private:
    std::size_t m_rows;
    std::size_t m_cols;
    BoundingBox m_bounds;
};

} // namespace first

#endif // FIRST_GRID_HPP
