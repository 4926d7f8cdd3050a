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

#ifndef RISCHAN_PROPAGATION_HPP
#define RISCHAN_PROPAGATION_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "rischan/diagnostics.hpp"
#include "rischan/model.hpp"
#include "rischan/rng.hpp"
#include "rischan/spatial.hpp"

namespace rischan {

struct LinkState {
    bool los = false;
    double attenuation = 0.0; // linear, (0, 1] when los
    double phase = 0.0;       // carrier phase of the LOS ray, [0, 2pi)
};

struct Scatterer {
    Point3 position;
    std::complex<double> gain;  // beta ~ CN(0, 1)
    double attenuation = 0.0;   // L, linear, includes shadowing
};

struct Cluster {
    Point3 center;
    std::vector<Scatterer> scatterers;
};

struct ClusterSet {
    std::vector<Cluster> clusters;

    bool empty() const { return clusters.empty(); }

    int path_count() const
    {
        int total = 0;
        for (const auto& c : clusters)
            total += static_cast<int>(c.scatterers.size());
        return total;
    }
};

inline double los_probability(double d, const Environment& env)
{
    if (!(d > 0.0))
        throw Error(ErrorCode::NonPositiveDistance, "los_probability needs d > 0");
    const LosProbabilityModel& m = env.los_model;
    if (env.kind == EnvironmentKind::InHIndoorOffice) {
        if (d <= m.near_distance)
            return 1.0;
        if (d < m.knee_distance)
            return std::exp(-(d - m.near_distance) / m.near_decay);
        return m.far_scale * std::exp(-(d - m.knee_distance) / m.far_decay);
    }
    const double near = std::min(m.umi_d1 / d, 1.0);
    return near + std::exp(-d / m.umi_d2) * (1.0 - near);
}

/// Deterministic part of the path loss in dB, distance clamped to the 1 m validity floor.
inline double path_loss_db(double d, double f_hz, const PathLossCoefficients& c)
{
    if (!(d > 0.0))
        throw Error(ErrorCode::NonPositiveDistance, "path_loss needs d > 0");
    if (d < 1.0) {
        warn_once("path_loss_floor", "path_loss: distances below 1 m are clamped to 1 m");
        d = 1.0;
    }
    return c.intercept_db + c.distance_exponent * std::log10(d) + c.frequency_coefficient * std::log10(f_hz / 1e9);
}

/// Linear attenuation L = 10^(-PL/10) with log-normal shadowing drawn from `rng`.
/// No draw is consumed when the shadowing sigma is zero. PL is floored at 0 dB.
inline double path_loss(double d, double f_hz, const Environment& env, bool los, RngStream& rng)
{
    const PathLossCoefficients& c = los ? env.los : env.nlos;
    double pl = path_loss_db(d, f_hz, c);
    if (c.shadow_sigma_db > 0.0)
        pl += rng.normal(0.0, c.shadow_sigma_db);
    return std::pow(10.0, -std::max(pl, 0.0) / 10.0);
}

inline LinkState draw_link_state(double d, double f_hz, const Environment& env, RngStream& rng,
                                 LinkMode mode = LinkMode::Auto)
{
    if (!(d > 0.0))
        throw Error(ErrorCode::NonPositiveDistance, "draw_link_state needs d > 0");
    bool los = false;
    switch (mode) {
    case LinkMode::Auto: los = rng.bernoulli(los_probability(d, env)); break;
    case LinkMode::ForcedPresent: los = true; break;
    case LinkMode::ForcedBlocked: los = false; break;
    }
    LinkState state;
    if (los) {
        state.los = true;
        state.attenuation = path_loss(d, f_hz, env, true, rng);
        state.phase = rng.uniform(0.0, 2.0 * kPi);
    }
    return state;
}

/// Cluster and scatterer positions only. Departure directions are drawn about the
/// broadside of `frame`; every scatterer of a cluster shares its radial distance.
inline ClusterSet place_clusters(const Point3& from, const Frame& frame, const Point3& far_end,
                                 const Environment& env, RngStream& rng)
{
    const ClusterPlacement& pl = env.placement;
    const double d_link = std::max(distance(from, far_end), 1.0);
    const int count = std::max(1, rng.poisson(env.cluster_intensity));
    const Eigen::Vector3d origin = to_vector(from);

    auto place = [&](double az, double el, double r) {
        Eigen::Vector3d v = frame.to_global(direction(az, el) * r);
        if (origin.z() + v.z() < 0.0)
            v.z() = -v.z(); // mirror below-ground draws, keeps the radius
        return to_point(origin + v);
    };

    ClusterSet set;
    set.clusters.reserve(count);
    for (int c = 0; c < count; ++c) {
        const double az = rng.uniform(-pl.azimuth_half_width, pl.azimuth_half_width);
        const double el = rng.uniform(-pl.elevation_half_width, pl.elevation_half_width);
        const double r = d_link > 1.0 ? rng.uniform(1.0, d_link) : 1.0;
        const int sc = rng.uniform_int(env.scatterers_min, env.scatterers_max);

        Cluster cluster;
        cluster.center = place(az, el, r);
        cluster.scatterers.reserve(sc);
        for (int s = 0; s < sc; ++s) {
            const double daz = pl.angular_spread > 0.0 ? rng.uniform(-pl.angular_spread, pl.angular_spread) : 0.0;
            const double del = pl.angular_spread > 0.0 ? rng.uniform(-pl.angular_spread, pl.angular_spread) : 0.0;
            cluster.scatterers.push_back({place(az + daz, el + del, r), {}, 0.0});
        }
        set.clusters.push_back(std::move(cluster));
    }
    return set;
}

/// Complex gains and NLOS attenuations at the unfolded path length from -> s -> far_end.
inline void draw_path_gains(ClusterSet& set, const Point3& from, const Point3& far_end, double f_hz,
                            const Environment& env, RngStream& rng)
{
    for (auto& cluster : set.clusters) {
        for (auto& s : cluster.scatterers) {
            const double length = distance(from, s.position) + distance(s.position, far_end);
            s.gain = rng.complex_normal();
            s.attenuation = path_loss(length, f_hz, env, false, rng);
        }
    }
}

inline ClusterSet draw_clusters(const Point3& from, const Frame& frame, const Point3& far_end, const Environment& env,
                                double f_hz, RngStream& rng)
{
    ClusterSet set = place_clusters(from, frame, far_end, env, rng);
    draw_path_gains(set, from, far_end, f_hz, env, rng);
    return set;
}

} // namespace rischan

#endif
