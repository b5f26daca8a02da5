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
#include "first/grid.hpp"
#include "first/error.hpp"

#include <algorithm>
#include <cmath>

namespace first
{

SectorGrid::SectorGrid(std::size_t rows, std::size_t cols, BoundingBox bounds)
    : m_rows(rows)
    , m_cols(cols)
    , m_bounds(bounds)
{
    if (rows == 0 || cols == 0) {
        throw InvalidArgument("grid needs at least one row and one column");
    }
    if (!(bounds.lat_min < bounds.lat_max) || !(bounds.lon_min < bounds.lon_max)) {
        throw InvalidArgument("grid bounds must satisfy min < max on both axes");
    }
}

bool SectorGrid::contains(const GeoPoint& p) const
{
    return p.lat >= m_bounds.lat_min && p.lat <= m_bounds.lat_max && p.lon >= m_bounds.lon_min &&
           p.lon <= m_bounds.lon_max;
}

namespace
{

// Cell along one axis for a fraction f in [0, 1]; f == 1 folds into the last cell.
std::size_t cell_along(double f, std::size_t cells)
{
    auto c = static_cast<std::size_t>(std::floor(f * static_cast<double>(cells)));
    return std::min(c, cells - 1);
}

} // namespace

std::optional<SectorIndex> SectorGrid::sector_of(const GeoPoint& p) const
{
    if (!contains(p)) {
        return std::nullopt;
    }
    // row 0 is north, so the row fraction runs from lat_max downwards
    const double fr = (m_bounds.lat_max - p.lat) / (m_bounds.lat_max - m_bounds.lat_min);
    const double fc = (p.lon - m_bounds.lon_min) / (m_bounds.lon_max - m_bounds.lon_min);
    return index(cell_along(fr, m_rows), cell_along(fc, m_cols));
}

SectorIndex SectorGrid::sector_of_pixel(std::size_t x, std::size_t y, std::size_t width, std::size_t height) const
{
    const std::size_t col = x * m_cols / width;
    const std::size_t row = y * m_rows / height;
    return index(row, col);
}

} // namespace first
