// SPDX-License-Identifier: Apache-2.0
//
// rischan - stochastic channel simulator for RIS-assisted mmWave MIMO links
// Copyright (C) 2026 The rischan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISCHAN_EXPORT_HPP
#define RISCHAN_EXPORT_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rischan/channel.hpp"
#include "rischan/config_io.hpp"
#include "rischan/harness.hpp"

namespace rischan {

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, mode | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    return out;
}

inline void check_written(const std::ofstream& out, const std::filesystem::path& path)
{
    if (!out)
        throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

// Rows of a CSV file after the "# config_hash=" line and the header.
inline std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path, const std::string& header,
                                                           std::string& hash)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const std::string tag = "# config_hash=";
            if (line.rfind(tag, 0) == 0)
                hash = line.substr(tag.size());
            continue;
        }
        if (!saw_header) {
            if (line != header)
                throw Error(ErrorCode::ParseError, path.string() + ": unexpected header '" + line + "'");
            saw_header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ','))
            fields.push_back(f);
        rows.push_back(std::move(fields));
    }
    return rows;
}

} // namespace detail

inline constexpr const char* kStatisticsHeader = "sweep_value,mean_rate,std,p5,p95,n";
inline constexpr const char* kCoverageHeader = "x,y,mean_rate,ris_index";

inline void write_statistics_csv(const std::filesystem::path& path, const RateStatistics& stats, std::uint64_t hash)
{
    auto out = detail::open_out(path);
    out << "# config_hash=" << hash_hex(hash) << "\n" << kStatisticsHeader << "\n";
    for (const auto& p : stats.points)
        out << detail::fmt(p.sweep_value) << ',' << detail::fmt(p.mean) << ',' << detail::fmt(p.std) << ','
            << detail::fmt(p.p5) << ',' << detail::fmt(p.p95) << ',' << p.n << "\n";
    detail::check_written(out, path);
}

struct StatisticsFile {
    std::string config_hash;
    std::vector<SweepPointStats> points;
};

inline StatisticsFile read_statistics_csv(const std::filesystem::path& path)
{
    StatisticsFile f;
    for (const auto& row : detail::read_csv_rows(path, kStatisticsHeader, f.config_hash)) {
        if (row.size() != 6)
            throw Error(ErrorCode::ParseError, path.string() + ": expected 6 columns");
        SweepPointStats s;
        s.sweep_value = detail::parse_double(row[0], "sweep_value");
        s.mean = detail::parse_double(row[1], "mean_rate");
        s.std = detail::parse_double(row[2], "std");
        s.p5 = detail::parse_double(row[3], "p5");
        s.p95 = detail::parse_double(row[4], "p95");
        s.n = static_cast<int>(detail::parse_integer(row[5], "n"));
        f.points.push_back(s);
    }
    return f;
}

inline void write_coverage_csv(const std::filesystem::path& path, const CoverageGrid& grid, std::uint64_t hash)
{
    auto out = detail::open_out(path);
    out << "# config_hash=" << hash_hex(hash) << "\n" << kCoverageHeader << "\n";
    for (const auto& c : grid.cells)
        out << detail::fmt(c.x) << ',' << detail::fmt(c.y) << ',' << detail::fmt(c.mean_rate) << ',' << c.ris_index
            << "\n";
    detail::check_written(out, path);
}

struct CoverageFile {
    std::string config_hash;
    std::vector<CoverageCell> cells;
};

inline CoverageFile read_coverage_csv(const std::filesystem::path& path)
{
    CoverageFile f;
    for (const auto& row : detail::read_csv_rows(path, kCoverageHeader, f.config_hash)) {
        if (row.size() != 4)
            throw Error(ErrorCode::ParseError, path.string() + ": expected 4 columns");
        f.cells.push_back({detail::parse_double(row[0], "x"), detail::parse_double(row[1], "y"),
                           detail::parse_double(row[2], "mean_rate"),
                           static_cast<int>(detail::parse_integer(row[3], "ris_index"))});
    }
    return f;
}

// ---------------------------------------------------------------------------
// Channel dumps: one binary file per matrix, row-major, interleaved re/im,
// IEEE-754 float64 in little-endian order, plus manifest.json.
// ---------------------------------------------------------------------------

inline void write_matrix_bin(const std::filesystem::path& path, const CMatrix& m)
{
    auto out = detail::open_out(path, std::ios::out | std::ios::binary);
    std::vector<double> buf;
    buf.reserve(static_cast<std::size_t>(m.size()) * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            buf.push_back(m(r, c).real());
            buf.push_back(m(r, c).imag());
        }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(double)));
    detail::check_written(out, path);
}

inline CMatrix read_matrix_bin(const std::filesystem::path& path, Eigen::Index rows, Eigen::Index cols)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
    std::vector<double> buf(static_cast<std::size_t>(rows * cols * 2));
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(buf.size() * sizeof(double)))
        throw Error(ErrorCode::IoFailure, path.string() + ": truncated matrix file");
    CMatrix m(rows, cols);
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c, i += 2)
            m(r, c) = {buf[i], buf[i + 1]};
    return m;
}

/// Draws `count` realizations of the scene and writes H/G per contributing
/// surface and D per realization into `dir`. Returns the manifest.
inline nlohmann::json dump_channels(const Scene& scene, std::size_t count, const std::filesystem::path& dir,
                                    std::uint64_t hash, unsigned threads = 1)
{
    const SimConfig& c = scene.sim();
    std::optional<std::size_t> serving;
    if (!c.ris.empty())
        serving = select_ris(c.rx.position, c.ris);

    std::vector<ChannelRealization> draws(count);
    parallel_for(count, threads, [&](std::size_t r) { draws[r] = realize_channels(scene, r, serving); });

    std::filesystem::create_directories(dir);
    nlohmann::json manifest;
    manifest["format"] = "row-major, interleaved real/imag, float64, little-endian";
    manifest["config_hash"] = hash_hex(hash);
    manifest["seed"] = c.seed;
    manifest["wavelength_m"] = scene.config.wavelength;
    manifest["nt"] = c.tx.count();
    manifest["nr"] = c.rx.count();
    nlohmann::json surfaces = nlohmann::json::array();
    for (std::size_t k = 0; k < c.ris.size(); ++k)
        surfaces.push_back({{"index", k}, {"n", c.ris[k].elements}});
    manifest["surfaces"] = surfaces;

    nlohmann::json entries = nlohmann::json::array();
    for (const auto& ch : draws) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "r%06llu", static_cast<unsigned long long>(ch.realization));
        nlohmann::json e;
        e["realization"] = ch.realization;
        e["rx_yaw_rad"] = ch.rx_yaw;
        const std::string d_name = std::string(stem) + "_D.bin";
        write_matrix_bin(dir / d_name, ch.D);
        e["D"] = {{"file", d_name}, {"rows", ch.D.rows()}, {"cols", ch.D.cols()}, {"los", ch.d_link.los}};
        nlohmann::json links = nlohmann::json::array();
        for (const auto& s : ch.surfaces) {
            const std::string base = std::string(stem) + "_ris" + std::to_string(s.ris_index);
            write_matrix_bin(dir / (base + "_H.bin"), s.H);
            write_matrix_bin(dir / (base + "_G.bin"), s.G);
            links.push_back({{"ris_index", s.ris_index},
                             {"H", {{"file", base + "_H.bin"}, {"rows", s.H.rows()}, {"cols", s.H.cols()}, {"los", s.h_link.los}}},
                             {"G", {{"file", base + "_G.bin"}, {"rows", s.G.rows()}, {"cols", s.G.cols()}, {"los", s.g_link.los}}}});
        }
        e["surfaces"] = links;
        entries.push_back(e);
    }
    manifest["realizations"] = entries;

    auto out = detail::open_out(dir / "manifest.json");
    out << manifest.dump(2) << "\n";
    detail::check_written(out, dir / "manifest.json");
    return manifest;
}

} // namespace rischan

#endif
