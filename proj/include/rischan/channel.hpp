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

#ifndef RISCHAN_CHANNEL_HPP
#define RISCHAN_CHANNEL_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rischan/model.hpp"
#include "rischan/propagation.hpp"
#include "rischan/rng.hpp"
#include "rischan/spatial.hpp"

namespace rischan {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline double wrap_phase(double theta)
{
    double w = std::fmod(theta, 2.0 * kPi);
    if (w < 0.0)
        w += 2.0 * kPi;
    if (w >= 2.0 * kPi) // fmod rounding at the upper edge
        w = 0.0;
    return w;
}

/// RIS phase configuration, every entry in [0, 2pi).
class PhaseVector {
public:
    PhaseVector() = default;
    explicit PhaseVector(Eigen::VectorXd theta)
        : theta_(std::move(theta))
    {
        for (auto& t : theta_)
            t = wrap_phase(t);
    }

    static PhaseVector zeros(Eigen::Index n) { return PhaseVector(Eigen::VectorXd::Zero(n)); }

    Eigen::Index size() const { return theta_.size(); }
    double operator[](Eigen::Index i) const { return theta_[i]; }
    const Eigen::VectorXd& values() const { return theta_; }

    /// Diagonal of Phi.
    CVector phasors() const
    {
        CVector p(theta_.size());
        for (Eigen::Index i = 0; i < theta_.size(); ++i)
            p[i] = std::polar(1.0, theta_[i]);
        return p;
    }

private:
    Eigen::VectorXd theta_;
};

inline CMatrix phase_matrix(const PhaseVector& phases)
{
    return phases.phasors().asDiagonal();
}

enum class LinkSide { TxToRis, RisToRx };

/// Radiation pattern of a surface element, evaluated off its broadside.
struct ElementGainModel {
    double q = 0.285;
    ElementPattern pattern = ElementPattern::CosinePower;

    double operator()(const AngleSet& at_surface) const
    {
        const double theta = off_broadside_angle(at_surface);
        if (pattern == ElementPattern::Unity)
            return theta < kPi / 2.0 ? 1.0 : 0.0;
        return element_gain(theta, q);
    }

    static ElementGainModel of(const RisSpec& ris) { return {ris.gain_exponent, ris.pattern}; }
};

namespace detail {

// Sum of gamma * beta * sqrt(w * L) a_to a_from^T over scatterers, plus the LOS ray.
// `weight(from_angles, to_angles)` supplies the element-gain factor of each ray.
template <typename Weight>
CMatrix accumulate_rays(const ClusterSet& clusters, const LinkState& link, const Aperture& from, const Aperture& to,
                        double wavelength, Weight&& weight)
{
    CMatrix m = CMatrix::Zero(to.size(), from.size());
    const int paths = clusters.path_count();
    if (paths > 0) {
        const double gamma = std::sqrt(1.0 / paths);
        for (const auto& cluster : clusters.clusters) {
            for (const auto& s : cluster.scatterers) {
                if (distance(s.position, from.position) == 0.0 || distance(s.position, to.position) == 0.0)
                    continue;
                const AngleSet at_from = from.angles_to(s.position);
                const AngleSet at_to = to.angles_to(s.position);
                const double w = weight(at_from, at_to);
                if (w <= 0.0)
                    continue;
                const std::complex<double> coeff = gamma * s.gain * std::sqrt(w * s.attenuation);
                m.noalias() += coeff * to.response(at_to, wavelength) * from.response(at_from, wavelength).transpose();
            }
        }
    }
    if (link.los) {
        const AngleSet at_from = from.angles_to(to.position);
        const AngleSet at_to = to.angles_to(from.position);
        const double w = weight(at_from, at_to);
        if (w > 0.0) {
            const std::complex<double> coeff = std::polar(std::sqrt(w * link.attenuation), link.phase);
            m.noalias() += coeff * to.response(at_to, wavelength) * from.response(at_from, wavelength).transpose();
        }
    }
    return m;
}

} // namespace detail

/// H (TxToRis, N x Nt; `from` = Tx, `to` = RIS) or G (RisToRx, Nr x N; `from` = RIS,
/// `to` = Rx). The element gain is applied on the RIS side of every ray; rays
/// arriving from behind the surface get zero gain.
inline CMatrix assemble_link_channel(LinkSide side, const ClusterSet& clusters, const LinkState& link,
                                     const Aperture& from, const Aperture& to, const ElementGainModel& gain,
                                     double wavelength)
{
    if (side == LinkSide::TxToRis)
        return detail::accumulate_rays(clusters, link, from, to, wavelength,
                                       [&](const AngleSet&, const AngleSet& at_ris) { return gain(at_ris); });
    return detail::accumulate_rays(clusters, link, from, to, wavelength,
                                   [&](const AngleSet& at_ris, const AngleSet&) { return gain(at_ris); });
}

/// D (Nr x Nt): same ray construction without element gain.
inline CMatrix assemble_direct_channel(const ClusterSet& clusters, const LinkState& link, const Aperture& tx,
                                       const Aperture& rx, double wavelength)
{
    return detail::accumulate_rays(clusters, link, tx, rx, wavelength,
                                   [](const AngleSet&, const AngleSet&) { return 1.0; });
}

struct LinkDiagnostics {
    bool los = false;
    int clusters = 0;
    int paths = 0;
};

/// Channel matrices through one surface plus the shared direct channel.
struct ChannelTriple {
    CMatrix H; // N x Nt
    CMatrix G; // Nr x N
    CMatrix D; // Nr x Nt
    std::uint64_t realization = 0;
    std::uint64_t seed = 0;
    LinkDiagnostics h_link, g_link, d_link;
};

/// G Phi H + D.
inline CMatrix composite_channel(const ChannelTriple& t, const PhaseVector& phases)
{
    if (t.H.rows() != phases.size() || t.G.cols() != phases.size() || t.G.rows() != t.D.rows() ||
        t.H.cols() != t.D.cols())
        throw Error(ErrorCode::DimensionMismatch,
                    "composite_channel: G " + std::to_string(t.G.rows()) + "x" + std::to_string(t.G.cols()) +
                        ", H " + std::to_string(t.H.rows()) + "x" + std::to_string(t.H.cols()) + ", D " +
                        std::to_string(t.D.rows()) + "x" + std::to_string(t.D.cols()) + ", N " +
                        std::to_string(phases.size()));
    CMatrix c = t.D;
    c.noalias() += t.G * (phases.phasors().asDiagonal() * t.H);
    return c;
}

// ---------------------------------------------------------------------------
// Per-realization channel draws for a whole scene
// ---------------------------------------------------------------------------

/// Geometry that does not change between realizations.
struct Scene {
    ValidatedConfig config;
    Aperture tx;
    Aperture rx; // frame replaced per realization when the Rx orientation is random
    std::vector<Aperture> ris;

    explicit Scene(ValidatedConfig vc)
        : config(std::move(vc))
    {
        const SimConfig& c = config.config;
        tx = make_aperture(c.tx, config.wavelength, c.tx.yaw);
        rx = make_aperture(c.rx, config.wavelength, c.rx.yaw);
        for (const auto& r : c.ris)
            ris.push_back(make_aperture(r, config.wavelength));
    }

    const SimConfig& sim() const { return config.config; }
};

struct SurfaceChannels {
    std::size_t ris_index = 0;
    CMatrix H;
    CMatrix G;
    LinkDiagnostics h_link, g_link;
};

struct ChannelRealization {
    std::uint64_t realization = 0;
    std::uint64_t seed = 0;
    double rx_yaw = 0.0;
    std::vector<SurfaceChannels> surfaces; // first entry is the serving surface
    CMatrix D;
    LinkDiagnostics d_link;

    ChannelTriple triple(std::size_t k = 0) const
    {
        const SurfaceChannels& s = surfaces.at(k);
        return {s.H, s.G, D, realization, seed, s.h_link, s.g_link, d_link};
    }
};

inline double draw_rx_yaw(const Scene& scene, std::uint64_t realization)
{
    const SimConfig& c = scene.sim();
    if (c.rx_orientation == RxOrientation::Fixed)
        return c.rx.yaw;
    RngStream rng = spawn_rng(c.seed, realization, LinkTag::RxOrientation);
    return rng.uniform(0.0, 2.0 * kPi);
}

/// Draws every link of realization `r`. Random streams are keyed by the role of
/// each link: the serving surface uses slot 0, other contributing surfaces use
/// slot 1 + their list index. Surfaces other than `serving` are drawn only when
/// the inactive-surface policy keeps them in the scene.
inline ChannelRealization realize_channels(const Scene& scene, std::uint64_t r, std::optional<std::size_t> serving)
{
    const SimConfig& c = scene.sim();
    const double lambda = scene.config.wavelength;
    const Environment& env = c.environment;

    ChannelRealization out;
    out.realization = r;
    out.seed = c.seed;
    out.rx_yaw = draw_rx_yaw(scene, r);
    Aperture rx = scene.rx;
    rx.frame = Frame::yawed(out.rx_yaw);

    auto draw_surface = [&](std::size_t k, std::uint64_t slot) {
        const Aperture& surf = scene.ris[k];
        const ElementGainModel gain = ElementGainModel::of(c.ris[k]);
        SurfaceChannels sc;
        sc.ris_index = k;

        RngStream h_rng = spawn_rng(c.seed, r, LinkTag::TxRis, slot);
        const LinkState h_state =
            draw_link_state(distance(scene.tx.position, surf.position), c.frequency_hz, env, h_rng, c.tx_ris_los);
        ClusterSet h_clusters;
        if (c.scattering)
            h_clusters = draw_clusters(scene.tx.position, scene.tx.frame, surf.position, env, c.frequency_hz, h_rng);
        sc.H = assemble_link_channel(LinkSide::TxToRis, h_clusters, h_state, scene.tx, surf, gain, lambda);
        sc.h_link = {h_state.los, static_cast<int>(h_clusters.clusters.size()), h_clusters.path_count()};

        RngStream g_rng = spawn_rng(c.seed, r, LinkTag::RisRx, slot);
        const LinkState g_state =
            draw_link_state(distance(surf.position, rx.position), c.frequency_hz, env, g_rng, c.ris_rx_los);
        ClusterSet g_clusters;
        if (c.scattering) {
            if (c.shared_clusters) {
                g_clusters = h_clusters;
                draw_path_gains(g_clusters, surf.position, rx.position, c.frequency_hz, env, g_rng);
            } else {
                g_clusters = draw_clusters(surf.position, surf.frame, rx.position, env, c.frequency_hz, g_rng);
            }
        }
        sc.G = assemble_link_channel(LinkSide::RisToRx, g_clusters, g_state, surf, rx, gain, lambda);
        sc.g_link = {g_state.los, static_cast<int>(g_clusters.clusters.size()), g_clusters.path_count()};
        return sc;
    };

    if (serving) {
        if (*serving >= scene.ris.size())
            throw Error(ErrorCode::DimensionMismatch, "serving surface index out of range");
        out.surfaces.push_back(draw_surface(*serving, 0));
    }
    if (c.inactive_ris == InactiveRisPolicy::RandomPhase) {
        for (std::size_t k = 0; k < scene.ris.size(); ++k)
            if (!serving || k != *serving)
                out.surfaces.push_back(draw_surface(k, 1 + k));
    }

    RngStream d_rng = spawn_rng(c.seed, r, LinkTag::TxRx);
    const LinkState d_state =
        draw_link_state(distance(scene.tx.position, rx.position), c.frequency_hz, env, d_rng, c.direct_path);
    ClusterSet d_clusters;
    const bool direct_scatter =
        c.scattering && (c.direct_path != LinkMode::ForcedBlocked || c.blocked_direct_keeps_scatter);
    if (direct_scatter)
        d_clusters = draw_clusters(scene.tx.position, scene.tx.frame, rx.position, env, c.frequency_hz, d_rng);
    out.D = assemble_direct_channel(d_clusters, d_state, scene.tx, rx, lambda);
    out.d_link = {d_state.los, static_cast<int>(d_clusters.clusters.size()), d_clusters.path_count()};
    return out;
}

/// Sum over surfaces of G_k Phi_k H_k, plus D. `phases[k]` pairs with `surfaces[k]`.
inline CMatrix composite_channel(const ChannelRealization& ch, std::span<const PhaseVector> phases)
{
    if (phases.size() != ch.surfaces.size())
        throw Error(ErrorCode::DimensionMismatch, "one phase vector per contributing surface required");
    CMatrix c = ch.D;
    for (std::size_t k = 0; k < ch.surfaces.size(); ++k) {
        const SurfaceChannels& s = ch.surfaces[k];
        if (s.H.rows() != phases[k].size() || s.G.cols() != phases[k].size())
            throw Error(ErrorCode::DimensionMismatch, "phase vector length does not match the surface");
        c.noalias() += s.G * (phases[k].phasors().asDiagonal() * s.H);
    }
    return c;
}

} // namespace rischan

#endif
