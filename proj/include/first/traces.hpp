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
#ifndef FIRST_TRACES_HPP
#define FIRST_TRACES_HPP

#include "first/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace first
{

/// In-bounds GPS fixes per agent, strictly increasing in time.
struct TraceSet {
    std::map<std::string, std::vector<GeoPoint>> agents;
    std::string source;
    std::int64_t t_min = 0; ///< earliest retained timestamp, seconds
    std::int64_t t_max = 0; ///< latest retained timestamp, seconds
    std::size_t dropped_out_of_bounds = 0;
    std::size_t dropped_duplicates    = 0;

    std::size_t points() const;
};

/**
 * Parses the normalized trace CSV (header `agent_id,timestamp_unix_s,lat,lon`).
 *
 * Out-of-bounds fixes are discarded, each agent's fixes are sorted by time and repeated
 * timestamps keep the fix that came first in the file. Throws ParseError with the line
 * number on malformed rows and EmptyTraceSet when nothing survives.
 */
TraceSet ingest(std::istream& in, const SectorGrid& grid, std::string source = "stream");
TraceSet ingest(const std::filesystem::path& path, const SectorGrid& grid);

using SectorSequence = std::vector<std::optional<SectorIndex>>;

/// Per-agent sector per time window, all agents aligned on the set's time range.
struct DiscretizedTraces {
    std::vector<std::string> agent_ids;
    std::vector<SectorSequence> sectors; ///< parallel to agent_ids
    std::int64_t window_seconds = 60;
    std::size_t windows         = 0;
};

/**
 * Maps each window of `window_minutes` (starting at the set's t_min) to the sector of the
 * agent's last fix inside it. Windows without a fix repeat the previous window's sector;
 * windows before an agent's first fix stay empty.
 */
DiscretizedTraces discretize(const TraceSet& set, const SectorGrid& grid, std::int64_t window_minutes);

/// CSV with columns agent_id,window,sector (sector empty before the first fix).
void write_discretized_csv(std::ostream& out, const DiscretizedTraces& d);

} // namespace first

#endif // FIRST_TRACES_HPP
