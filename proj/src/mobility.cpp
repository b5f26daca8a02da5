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
#include "first/mobility.hpp"
#include "first/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace first
{

MobilityDistribution::MobilityDistribution(std::vector<double> probs)
    : m_probs(std::move(probs))
{
    if (m_probs.empty()) {
        throw InvalidArgument("distribution over zero sectors");
    }
    m_cumulative.reserve(m_probs.size());
    double sum = 0.0;
    for (double p : m_probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw InvalidArgument("distribution entries must be finite and non-negative");
        }
        sum += p;
        m_cumulative.push_back(sum);
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InvalidArgument(fmt::format("distribution sums to {} instead of 1", sum));
    }
}

MobilityDistribution MobilityDistribution::uniform(std::size_t n)
{
    return MobilityDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SectorIndex MobilityDistribution::sample_sector(Rng& rng) const
{
    // scale by the stored total so rounding in the cumulative sum never leaves a gap at the top
    const double u  = rng.uniform01() * m_cumulative.back();
    const auto it   = std::upper_bound(m_cumulative.begin(), m_cumulative.end(), u);
    auto idx        = static_cast<std::size_t>(it - m_cumulative.begin());
    // upper_bound never lands on a zero-mass sector since its cumulative equals its predecessor's
    return std::min(idx, m_probs.size() - 1);
}

namespace
{

// Next whitespace-delimited header token, skipping '#' comments.
std::string pgm_token(std::istream& in)
{
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) {
                return tok;
            }
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

std::size_t pgm_number(std::istream& in, const char* what)
{
    const std::string tok = pgm_token(in);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char ch) {
            return std::isdigit(static_cast<unsigned char>(ch));
        })) {
        throw ParseError(0, fmt::format("graymap: bad {} '{}'", what, tok));
    }
    return std::stoul(tok);
}

} // namespace

MapRaster read_pgm(std::istream& in)
{
    const std::string magic = pgm_token(in);
    if (magic != "P2" && magic != "P5") {
        throw ParseError(0, fmt::format("graymap: unsupported magic '{}'", magic));
    }
    MapRaster r;
    r.width                = pgm_number(in, "width");
    r.height               = pgm_number(in, "height");
    const std::size_t maxv = pgm_number(in, "maxval");
    if (r.width == 0 || r.height == 0) {
        throw ParseError(0, "graymap: zero dimension");
    }
    if (maxv == 0 || maxv > 255) {
        throw ParseError(0, fmt::format("graymap: maxval {} not in 1..255", maxv));
    }
    const std::size_t count = r.width * r.height;
    r.pixels.resize(count);
    auto scale = [maxv](std::size_t v) {
        return static_cast<std::uint8_t>((v * 255 + maxv / 2) / maxv);
    };
    if (magic == "P5") {
        // pgm_token consumed exactly one whitespace byte after maxval
        std::vector<char> raw(count);
        in.read(raw.data(), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count) {
            throw ParseError(0, "graymap: truncated pixel data");
        }
        for (std::size_t i = 0; i < count; ++i) {
            const auto v = static_cast<std::size_t>(static_cast<unsigned char>(raw[i]));
            if (v > maxv) {
                throw ParseError(0, "graymap: pixel exceeds maxval");
            }
            r.pixels[i] = scale(v);
        }
    }
    else {
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t v = pgm_number(in, "pixel");
            if (v > maxv) {
                throw ParseError(0, "graymap: pixel exceeds maxval");
            }
            r.pixels[i] = scale(v);
        }
    }
    return r;
}

MapRaster read_pgm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(0, "cannot open " + path.string());
    }
    return read_pgm(in);
}

void write_pgm(std::ostream& out, const MapRaster& raster)
{
    out << "P5\n" << raster.width << ' ' << raster.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(raster.pixels.data()), static_cast<std::streamsize>(raster.pixels.size()));
}

MobilityDistribution lea(const MapRaster& raster, const SectorGrid& grid, int black_threshold)
{
    if (black_threshold < 0 || black_threshold > 255) {
        throw InvalidArgument("black threshold must be in [0, 255]");
    }
    if (raster.width < grid.cols() || raster.height < grid.rows()) {
        throw InvalidArgument(fmt::format("raster {}x{} smaller than grid {}x{}", raster.width, raster.height,
                                          grid.cols(), grid.rows()));
    }
    if (raster.pixels.size() != raster.width * raster.height) {
        throw InvalidArgument("raster pixel count does not match its dimensions");
    }

    std::vector<std::uint64_t> black(grid.size(), 0);
    std::uint64_t total = 0;
    for (std::size_t y = 0; y < raster.height; ++y) {
        for (std::size_t x = 0; x < raster.width; ++x) {
            if (raster.at(x, y) < black_threshold) {
                ++black[grid.sector_of_pixel(x, y, raster.width, raster.height)];
                ++total;
            }
        }
    }
    if (total == 0) {
        throw AllWhiteMap();
    }

    std::vector<double> probs(grid.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        probs[i] = static_cast<double>(black[i]) / static_cast<double>(total);
    }
    return MobilityDistribution(std::move(probs));
}

MobilityDistribution empirical_distribution(std::span<const std::vector<GeoPoint>> traces, const SectorGrid& grid)
{
    std::vector<SectorIndex> samples;
    for (const auto& trace : traces) {
        for (const auto& p : trace) {
            if (auto s = grid.sector_of(p)) {
                samples.push_back(*s);
            }
        }
    }
    return empirical_distribution(samples, grid.size());
}

MobilityDistribution empirical_distribution(std::span<const SectorIndex> samples, std::size_t n)
{
    if (samples.empty()) {
        throw EmptyTrace();
    }
    std::vector<std::uint64_t> counts(n, 0);
    for (SectorIndex s : samples) {
        if (s >= n) {
            throw InvalidArgument("sample sector out of range");
        }
        ++counts[s];
    }
    std::vector<double> probs(n);
    for (std::size_t i = 0; i < n; ++i) {
        probs[i] = static_cast<double>(counts[i]) / static_cast<double>(samples.size());
    }
    return MobilityDistribution(std::move(probs));
}

void write_distribution_csv(std::ostream& out, const MobilityDistribution& dist)
{
    out << "prob\n";
    for (double p : dist.probs()) {
        out << fmt::format("{}\n", p);
    }
}

MobilityDistribution read_distribution_csv(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) {
        throw ParseError(0, "distribution: empty file");
    }
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "prob") {
        throw ParseError(lineno, "distribution: expected header 'prob'");
    }
    std::vector<double> probs;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        try {
            std::size_t used = 0;
            probs.push_back(std::stod(line, &used));
            if (used != line.size()) {
                throw std::invalid_argument("trailing characters");
            }
        }
        catch (const std::exception&) {
            throw ParseError(lineno, fmt::format("distribution: bad probability '{}'", line));
        }
    }
    try {
        return MobilityDistribution(std::move(probs));
    }
    catch (const InvalidArgument& e) {
        throw ParseError(0, e.what());
    }
}

MobilityDistribution read_distribution_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(0, "cannot open " + path.string());
    }
    return read_distribution_csv(in);
}

} // namespace first
