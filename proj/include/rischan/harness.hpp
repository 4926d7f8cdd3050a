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

#ifndef RISCHAN_HARNESS_HPP
#define RISCHAN_HARNESS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rischan/channel.hpp"
#include "rischan/control.hpp"
#include "rischan/model.hpp"
#include "rischan/rng.hpp"

namespace rischan {

/// Runs fn(i) for i in [0, count) on `threads` workers. Work items write to
/// pre-assigned slots, so results never depend on scheduling. The exception of
/// the lowest failing index is rethrown after all workers join.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::size_t err_index = count;
    std::exception_ptr err;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (i < err_index) {
                    err_index = i;
                    err = std::current_exception();
                }
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (err)
        std::rethrow_exception(err);
}

enum class SweepAxis { Pt, N, NtNr, RxGrid };

inline std::string_view to_string(SweepAxis a)
{
    switch (a) {
    case SweepAxis::Pt: return "pt";
    case SweepAxis::N: return "n";
    case SweepAxis::NtNr: return "ntnr";
    case SweepAxis::RxGrid: return "grid";
    }
    return "?";
}

inline SweepAxis parse_sweep_axis(std::string_view s)
{
    if (s == "pt") return SweepAxis::Pt;
    if (s == "n") return SweepAxis::N;
    if (s == "ntnr") return SweepAxis::NtNr;
    if (s == "grid") return SweepAxis::RxGrid;
    throw Error(ErrorCode::InvalidValue, "unknown sweep axis '" + std::string(s) + "'");
}

// Rx positions on a horizontal plane. Cells are `cell` metres wide and evaluated
// at their centres; a zero-width range yields one cell at the range start.
struct GridSpec {
    double x_min = 0.0;
    double x_max = 60.0;
    double y_min = 0.0;
    double y_max = 50.0;
    double cell = 1.0;
    double z = 1.0;

    static int axis_cells(double lo, double hi, double cell)
    {
        if (!(hi > lo))
            return 1;
        return std::max(1, static_cast<int>(std::ceil((hi - lo) / cell - 1e-9)));
    }

    int nx() const { return axis_cells(x_min, x_max, cell); }
    int ny() const { return axis_cells(y_min, y_max, cell); }

    double x_at(int i) const { return x_max > x_min ? x_min + (i + 0.5) * cell : x_min; }
    double y_at(int j) const { return y_max > y_min ? y_min + (j + 0.5) * cell : y_min; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct Campaign {
    ValidatedConfig config;
    SweepAxis axis = SweepAxis::Pt;
    std::vector<double> values; // empty Pt sweep means the config's transmit powers
    PhaseDesign design;
    GridSpec grid;
    unsigned threads = 1;
};

struct SweepPointStats {
    double sweep_value = 0.0;
    double mean = 0.0;
    double std = 0.0;
    double p5 = 0.0;
    double p95 = 0.0;
    int n = 0;
};

struct RateStatistics {
    SweepAxis axis = SweepAxis::Pt;
    std::vector<SweepPointStats> points;
};

struct CoverageCell {
    double x = 0.0;
    double y = 0.0;
    double mean_rate = 0.0;
    int ris_index = -1;
};

struct CoverageGrid {
    GridSpec spec;
    int nx = 0;
    int ny = 0;
    std::vector<CoverageCell> cells; // row-major, y outer

    const CoverageCell& at(int ix, int iy) const { return cells.at(static_cast<std::size_t>(iy) * nx + ix); }
};

/// Linear-interpolation percentile (q in [0, 1]) of an unsorted sample.
inline double percentile(std::vector<double> v, double q)
{
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline SweepPointStats summarize(double sweep_value, const std::vector<double>& rates)
{
    SweepPointStats s;
    s.sweep_value = sweep_value;
    s.n = static_cast<int>(rates.size());
    if (rates.empty())
        return s;
    double sum = 0.0;
    for (double r : rates)
        sum += r;
    s.mean = sum / rates.size();
    double ss = 0.0;
    for (double r : rates)
        ss += (r - s.mean) * (r - s.mean);
    s.std = rates.size() > 1 ? std::sqrt(ss / (rates.size() - 1)) : 0.0;
    s.p5 = percentile(rates, 0.05);
    s.p95 = percentile(rates, 0.95);
    return s;
}

/// Composite channel of one realization with the serving surface configured by
/// `design`; other contributing surfaces keep random phases.
inline CMatrix evaluate_realization(const Scene& scene, std::uint64_t r, const PhaseDesign& design)
{
    const SimConfig& c = scene.sim();
    std::optional<std::size_t> serving;
    if (!c.ris.empty())
        serving = select_ris(c.rx.position, c.ris);
    const ChannelRealization ch = realize_channels(scene, r, serving);

    std::vector<PhaseVector> phases;
    phases.reserve(ch.surfaces.size());
    for (std::size_t k = 0; k < ch.surfaces.size(); ++k) {
        const SurfaceChannels& s = ch.surfaces[k];
        const std::uint64_t slot = k == 0 ? 0 : 1 + s.ris_index;
        RngStream rng = spawn_rng(c.seed, r, LinkTag::Phases, slot);
        if (k == 0)
            phases.push_back(design_phases(design, s.H, s.G, ch.D, rng));
        else
            phases.push_back(baseline_phases(PhaseAlgorithm::RandomBaseline, s.H.rows(), rng));
    }
    return composite_channel(ch, phases);
}

namespace detail {

[[noreturn]] inline void rethrow_annotated(const std::string& where)
{
    try {
        throw;
    } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " (" + where + ")");
    }
}

inline SimConfig apply_sweep_value(SimConfig cfg, SweepAxis axis, double value)
{
    const int count = static_cast<int>(std::lround(value));
    switch (axis) {
    case SweepAxis::Pt:
        cfg.pt_dbm = {value};
        break;
    case SweepAxis::N:
        for (auto& r : cfg.ris)
            r.reshape(count);
        break;
    case SweepAxis::NtNr:
        cfg.tx.reshape(count);
        cfg.rx.reshape(count);
        break;
    case SweepAxis::RxGrid:
        throw Error(ErrorCode::InvalidValue, "grid sweeps run through coverage_map");
    }
    return cfg;
}

inline void check_values(const std::vector<double>& values, SweepAxis axis)
{
    if (values.empty())
        throw Error(ErrorCode::EmptySweep, "sweep has no values");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw Error(ErrorCode::InvalidValue, "sweep values must be finite");
        if (i > 0 && !(values[i] > values[i - 1]))
            throw Error(ErrorCode::InvalidValue, "sweep values must be strictly ascending");
        if ((axis == SweepAxis::N || axis == SweepAxis::NtNr) &&
            (values[i] < 1.0 || values[i] != std::round(values[i])))
            throw Error(ErrorCode::NonPositiveCount, "count sweeps need positive integers");
    }
}

} // namespace detail

/// Monte Carlo rate statistics for every sweep value. Realization r always uses
/// the same substreams, whatever the sweep value or worker count.
inline RateStatistics run_campaign(const Campaign& campaign)
{
    const SimConfig& base = campaign.config.config;
    RateStatistics out;
    out.axis = campaign.axis;
    const std::size_t reals = static_cast<std::size_t>(base.realizations);

    if (campaign.axis == SweepAxis::RxGrid)
        throw Error(ErrorCode::InvalidValue, "grid sweeps run through coverage_map");

    if (campaign.axis == SweepAxis::Pt) {
        const std::vector<double> pts = campaign.values.empty() ? base.pt_dbm : campaign.values;
        detail::check_values(pts, SweepAxis::Pt);
        const Scene scene(campaign.config);
        const double noise = campaign.config.noise_watts;
        std::vector<std::vector<double>> rates(pts.size(), std::vector<double>(reals));
        parallel_for(reals, campaign.threads, [&](std::size_t r) {
            try {
                const CMatrix c = evaluate_realization(scene, r, campaign.design);
                for (std::size_t p = 0; p < pts.size(); ++p)
                    rates[p][r] = achievable_rate(c, dbm_to_watts(pts[p]), noise);
            } catch (...) {
                detail::rethrow_annotated("realization " + std::to_string(r));
            }
        });
        for (std::size_t p = 0; p < pts.size(); ++p)
            out.points.push_back(summarize(pts[p], rates[p]));
        return out;
    }

    detail::check_values(campaign.values, campaign.axis);
    for (double v : campaign.values) {
        const Scene scene(validate_config(detail::apply_sweep_value(base, campaign.axis, v)));
        const double pt = scene.config.pt_watts.front();
        const double noise = scene.config.noise_watts;
        std::vector<double> rates(reals);
        parallel_for(reals, campaign.threads, [&](std::size_t r) {
            try {
                rates[r] = achievable_rate(evaluate_realization(scene, r, campaign.design), pt, noise);
            } catch (...) {
                detail::rethrow_annotated("sweep value " + std::to_string(v) + ", realization " + std::to_string(r));
            }
        });
        out.points.push_back(summarize(v, rates));
    }
    return out;
}

/// Mean rate per grid cell with the Rx moved cell by cell at height grid.z,
/// serving surface chosen by select_ris. Uses the first configured transmit power.
inline CoverageGrid coverage_map(const Campaign& campaign, const GridSpec& grid)
{
    if (!(grid.cell > 0.0))
        throw Error(ErrorCode::InvalidValue, "grid cell size must be > 0");
    if (grid.x_max < grid.x_min || grid.y_max < grid.y_min)
        throw Error(ErrorCode::InvalidValue, "grid ranges must be ordered");

    CoverageGrid out;
    out.spec = grid;
    out.nx = grid.nx();
    out.ny = grid.ny();
    out.cells.resize(static_cast<std::size_t>(out.nx) * out.ny);

    const SimConfig& base = campaign.config.config;
    const std::size_t reals = static_cast<std::size_t>(base.realizations);

    parallel_for(out.cells.size(), campaign.threads, [&](std::size_t idx) {
        const int ix = static_cast<int>(idx % out.nx);
        const int iy = static_cast<int>(idx / out.nx);
        CoverageCell& cell = out.cells[idx];
        cell.x = grid.x_at(ix);
        cell.y = grid.y_at(iy);

        SimConfig cfg = base;
        cfg.rx.position = {cell.x, cell.y, grid.z};
        cfg.near_field = NearFieldPolicy::Warn;
        try {
            const Scene scene(validate_config(std::move(cfg)));
            cell.ris_index = scene.sim().ris.empty() ? -1 : static_cast<int>(select_ris(scene.sim().rx.position, scene.sim().ris));
            const double pt = scene.config.pt_watts.front();
            const double noise = scene.config.noise_watts;
            double sum = 0.0;
            for (std::size_t r = 0; r < reals; ++r)
                sum += achievable_rate(evaluate_realization(scene, r, campaign.design), pt, noise);
            cell.mean_rate = sum / static_cast<double>(reals);
        } catch (...) {
            detail::rethrow_annotated("cell (" + std::to_string(cell.x) + ", " + std::to_string(cell.y) + ")");
        }
    });
    return out;
}

} // namespace rischan

#endif
