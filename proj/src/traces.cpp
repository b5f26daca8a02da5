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
#include "first/traces.hpp"
#include "first/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace first
{

std::size_t TraceSet::points() const
{
    std::size_t n = 0;
    for (const auto& [id, fixes] : agents) {
        n += fixes.size();
    }
    return n;
}

namespace
{

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse_double(const std::string& s, std::size_t lineno, const char* what)
{
    try {
        std::size_t used = 0;
        const double v   = std::stod(s, &used);
        if (used == s.size()) {
            return v;
        }
    }
    catch (const std::exception&) {
    }
    throw ParseError(lineno, fmt::format("bad {} '{}'", what, s));
}

std::int64_t parse_int(const std::string& s, std::size_t lineno, const char* what)
{
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used == s.size()) {
            return v;
        }
    }
    catch (const std::exception&) {
    }
    throw ParseError(lineno, fmt::format("bad {} '{}'", what, s));
}

} // namespace

TraceSet ingest(std::istream& in, const SectorGrid& grid, std::string source)
{
    TraceSet set;
    set.source = std::move(source);

    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) {
        throw ParseError(0, "trace file is empty");
    }
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "agent_id,timestamp_unix_s,lat,lon") {
        throw ParseError(lineno, "expected header 'agent_id,timestamp_unix_s,lat,lon'");
    }

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 4) {
            throw ParseError(lineno, fmt::format("expected 4 fields, found {}", f.size()));
        }
        if (f[0].empty()) {
            throw ParseError(lineno, "empty agent_id");
        }
        GeoPoint p;
        p.timestamp = parse_int(f[1], lineno, "timestamp");
        p.lat       = parse_double(f[2], lineno, "latitude");
        p.lon       = parse_double(f[3], lineno, "longitude");
        if (p.lat < -90.0 || p.lat > 90.0) {
            throw ParseError(lineno, fmt::format("latitude {} outside [-90, 90]", p.lat));
        }
        if (p.lon < -180.0 || p.lon > 180.0) {
            throw ParseError(lineno, fmt::format("longitude {} outside [-180, 180]", p.lon));
        }
        if (!grid.contains(p)) {
            ++set.dropped_out_of_bounds;
            continue;
        }
        set.agents[f[0]].push_back(p);
    }

    if (set.agents.empty()) {
        throw EmptyTraceSet();
    }

    set.t_min = std::numeric_limits<std::int64_t>::max();
    set.t_max = std::numeric_limits<std::int64_t>::min();
    for (auto& [id, fixes] : set.agents) {
        std::stable_sort(fixes.begin(), fixes.end(), [](const GeoPoint& a, const GeoPoint& b) {
            return a.timestamp < b.timestamp;
        });
        const auto before = fixes.size();
        fixes.erase(std::unique(fixes.begin(), fixes.end(),
                                [](const GeoPoint& a, const GeoPoint& b) {
                                    return a.timestamp == b.timestamp;
                                }),
                    fixes.end());
        set.dropped_duplicates += before - fixes.size();
        set.t_min = std::min(set.t_min, fixes.front().timestamp);
        set.t_max = std::max(set.t_max, fixes.back().timestamp);
    }
    return set;
}

TraceSet ingest(const std::filesystem::path& path, const SectorGrid& grid)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(0, "cannot open " + path.string());
    }
    return ingest(in, grid, path.filename().string());
}

DiscretizedTraces discretize(const TraceSet& set, const SectorGrid& grid, std::int64_t window_minutes)
{
    if (window_minutes < 1) {
        throw InvalidArgument("window must be at least one minute");
    }
    DiscretizedTraces out;
    out.window_seconds = window_minutes * 60;
    out.windows        = static_cast<std::size_t>((set.t_max - set.t_min) / out.window_seconds) + 1;

    for (const auto& [id, fixes] : set.agents) {
        SectorSequence seq(out.windows);
        // last fix per window wins because fixes are time-ordered
        for (const auto& p : fixes) {
            const auto w = static_cast<std::size_t>((p.timestamp - set.t_min) / out.window_seconds);
            seq[w]       = grid.sector_of(p);
        }
        std::optional<SectorIndex> last;
        for (auto& s : seq) {
            if (s) {
                last = s;
            }
            else {
                s = last;
            }
        }
        out.agent_ids.push_back(id);
        out.sectors.push_back(std::move(seq));
    }
    return out;
}

void write_discretized_csv(std::ostream& out, const DiscretizedTraces& d)
{
    out << "agent_id,window,sector\n";
    for (std::size_t a = 0; a < d.agent_ids.size(); ++a) {
        for (std::size_t w = 0; w < d.windows; ++w) {
            const auto& s = d.sectors[a][w];
            if (s) {
                out << fmt::format("{},{},{}\n", d.agent_ids[a], w, *s);
            }
            else {
                out << fmt::format("{},{},\n", d.agent_ids[a], w);
            }
        }
    }
}

} // namespace first
