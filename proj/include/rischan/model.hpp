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

#ifndef RISCHAN_MODEL_HPP
#define RISCHAN_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rischan {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s
inline constexpr double kPi = std::numbers::pi;

enum class ErrorCode {
    NonPositiveCount,
    UnknownEnvironment,
    EmptySweep,
    NearFieldViolation,
    InvalidValue,
    CoincidentPoints,
    DimensionMismatch,
    NonPositiveDistance,
    NonFiniteEntries,
    EmptyList,
    SingularPinv,
    ParseError,
    IoFailure,
};

inline std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NonPositiveCount: return "NonPositiveCount";
    case ErrorCode::UnknownEnvironment: return "UnknownEnvironment";
    case ErrorCode::EmptySweep: return "EmptySweep";
    case ErrorCode::NearFieldViolation: return "NearFieldViolation";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveDistance: return "NonPositiveDistance";
    case ErrorCode::NonFiniteEntries: return "NonFiniteEntries";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::SingularPinv: return "SingularPinv";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

    /// Config-level problems map to CLI exit code 1, everything else to 2.
    bool is_config_error() const noexcept
    {
        switch (code_) {
        case ErrorCode::NonPositiveCount:
        case ErrorCode::UnknownEnvironment:
        case ErrorCode::EmptySweep:
        case ErrorCode::NearFieldViolation:
        case ErrorCode::InvalidValue:
        case ErrorCode::CoincidentPoints:
        case ErrorCode::ParseError:
        case ErrorCode::EmptyList:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorCode code_;
};

// Global frame: x/y span the floor plan, z is height above ground. Meters.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Point3&, const Point3&) = default;
};

inline double distance(const Point3& a, const Point3& b)
{
    return std::hypot(b.x - a.x, b.y - a.y, b.z - a.z);
}

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

// ---------------------------------------------------------------------------
// Environment presets
// ---------------------------------------------------------------------------

enum class EnvironmentKind { InHIndoorOffice, UMiStreetCanyon };

inline std::string_view to_string(EnvironmentKind kind)
{
    return kind == EnvironmentKind::InHIndoorOffice ? "InH-IndoorOffice" : "UMi-StreetCanyon";
}

inline EnvironmentKind parse_environment_kind(std::string_view text)
{
    if (text == "InH-IndoorOffice" || text == "InH" || text == "indoor")
        return EnvironmentKind::InHIndoorOffice;
    if (text == "UMi-StreetCanyon" || text == "UMi" || text == "outdoor")
        return EnvironmentKind::UMiStreetCanyon;
    throw Error(ErrorCode::UnknownEnvironment, "'" + std::string(text) + "'");
}

/// PL_dB = intercept + exponent * log10(d_m) + frequency_coefficient * log10(f_GHz) + X_sigma
struct PathLossCoefficients {
    double intercept_db = 0.0;
    double distance_exponent = 0.0;
    double frequency_coefficient = 0.0;
    double shadow_sigma_db = 0.0;

    friend bool operator==(const PathLossCoefficients&, const PathLossCoefficients&) = default;
};

// InH uses the three-segment law (full LOS up to `near_distance`, exponential
// decay with `near_decay` up to `knee_distance`, then `far_scale` * exp decay
// with `far_decay`). UMi uses min(d1/d,1) + exp(-d/d2) * (1 - min(d1/d,1)).
struct LosProbabilityModel {
    double near_distance = 1.2;
    double near_decay = 4.7;
    double knee_distance = 6.5;
    double far_scale = 0.32;
    double far_decay = 32.6;
    double umi_d1 = 18.0;
    double umi_d2 = 36.0;

    friend bool operator==(const LosProbabilityModel&, const LosProbabilityModel&) = default;
};

struct ClusterPlacement {
    double azimuth_half_width = kPi / 2.0;   // departure azimuth ~ U(-w, w) about broadside
    double elevation_half_width = kPi / 4.0; // departure elevation ~ U(-w, w)
    double angular_spread = 5.0 * kPi / 180.0;

    friend bool operator==(const ClusterPlacement&, const ClusterPlacement&) = default;
};

struct Environment {
    EnvironmentKind kind = EnvironmentKind::InHIndoorOffice;
    double cluster_intensity = 1.8; // Poisson mean of the cluster count
    int scatterers_min = 1;
    int scatterers_max = 30;
    PathLossCoefficients los;
    PathLossCoefficients nlos;
    LosProbabilityModel los_model;
    ClusterPlacement placement;

    friend bool operator==(const Environment&, const Environment&) = default;
};

/// Shipped presets, following the public 5G mmWave model tables.
inline Environment environment_preset(EnvironmentKind kind)
{
    Environment env;
    env.kind = kind;
    if (kind == EnvironmentKind::InHIndoorOffice) {
        env.cluster_intensity = 1.8;
        env.los = {32.4, 17.3, 20.0, 3.0};
        env.nlos = {17.3, 38.3, 24.9, 8.03};
    } else {
        env.cluster_intensity = 1.9;
        env.los = {32.4, 21.0, 20.0, 4.0};
        env.nlos = {22.4, 35.3, 21.3, 7.82};
    }
    return env;
}

// ---------------------------------------------------------------------------
// Arrays and surfaces
// ---------------------------------------------------------------------------

enum class ArrayLayout { ULA, UPA };

/// Factor `count` into rows x cols with rows the largest divisor <= sqrt(count).
inline std::pair<int, int> near_square_grid(int count)
{
    int rows = 1;
    for (int r = 1; r * r <= count; ++r)
        if (count % r == 0)
            rows = r;
    return {rows, count / rows};
}

// Tx/Rx terminal array. Elements lie in the local y-z plane with broadside
// along local +x; a ULA runs along local y. The local frame is the global
// frame rotated by `yaw` about z.
struct ArraySpec {
    ArrayLayout layout = ArrayLayout::UPA;
    int rows = 1; // along local z
    int cols = 1; // along local y
    double spacing_wavelengths = 0.5;
    Point3 position;
    double yaw = 0.0; // radians

    int count() const { return rows * cols; }

    static ArraySpec make(ArrayLayout layout, int count, Point3 position, double yaw = 0.0)
    {
        ArraySpec spec;
        spec.layout = layout;
        spec.position = position;
        spec.yaw = yaw;
        spec.reshape(count);
        return spec;
    }

    void reshape(int count)
    {
        if (layout == ArrayLayout::ULA) {
            rows = 1;
            cols = count;
        } else {
            auto [r, c] = near_square_grid(count);
            rows = r;
            cols = c;
        }
    }

    friend bool operator==(const ArraySpec&, const ArraySpec&) = default;
};

enum class MountingPlane { XZ, YZ };
enum class Facing { Auto, Positive, Negative };
enum class ElementPattern { CosinePower, Unity }; // Unity: gain 1 over the front half-space

struct RisSpec {
    int elements = 64;
    int rows = 8;
    int cols = 8;
    Point3 position;
    MountingPlane plane = MountingPlane::XZ;
    Facing facing = Facing::Auto;
    double gain_exponent = 0.285; // q in the cos^(2q) element pattern
    ElementPattern pattern = ElementPattern::CosinePower;
    double spacing_wavelengths = 0.5;

    static RisSpec make(int elements, Point3 position, MountingPlane plane = MountingPlane::XZ)
    {
        RisSpec spec;
        spec.position = position;
        spec.plane = plane;
        spec.reshape(elements);
        return spec;
    }

    void reshape(int n)
    {
        elements = n;
        auto [r, c] = near_square_grid(n);
        rows = r;
        cols = c;
    }

    friend bool operator==(const RisSpec&, const RisSpec&) = default;
};

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

enum class LinkMode { Auto, ForcedBlocked, ForcedPresent };
enum class RxOrientation { Random, Fixed };
enum class NearFieldPolicy { Warn, Error };
enum class InactiveRisPolicy { Absent, RandomPhase };

struct SimConfig {
    Environment environment = environment_preset(EnvironmentKind::InHIndoorOffice);
    double frequency_hz = 28e9;
    ArraySpec tx;
    ArraySpec rx;
    std::vector<RisSpec> ris;
    std::vector<double> pt_dbm{40.0};
    double noise_dbm = -100.0;
    int realizations = 500;
    std::uint64_t seed = 42;

    LinkMode direct_path = LinkMode::Auto;
    bool blocked_direct_keeps_scatter = false;
    LinkMode tx_ris_los = LinkMode::Auto;
    LinkMode ris_rx_los = LinkMode::Auto;
    bool scattering = true;
    bool shared_clusters = false;
    RxOrientation rx_orientation = RxOrientation::Random;
    NearFieldPolicy near_field = NearFieldPolicy::Warn;
    InactiveRisPolicy inactive_ris = InactiveRisPolicy::Absent;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct ValidatedConfig {
    SimConfig config;
    double wavelength = 0.0;
    std::vector<double> pt_watts;
    double noise_watts = 0.0;
    std::vector<std::string> warnings;

    const Environment& environment() const { return config.environment; }
};

/// Fraunhofer distance 2 D^2 / lambda with D the diagonal of the RIS aperture.
inline double fraunhofer_distance(const RisSpec& ris, double wavelength)
{
    const double side_y = ris.cols * ris.spacing_wavelengths * wavelength;
    const double side_z = ris.rows * ris.spacing_wavelengths * wavelength;
    const double diag_sq = side_y * side_y + side_z * side_z;
    return 2.0 * diag_sq / wavelength;
}

namespace detail {

inline void require(bool ok, ErrorCode code, const std::string& what)
{
    if (!ok)
        throw Error(code, what);
}

inline void check_point(const Point3& p, const std::string& name)
{
    require(std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z), ErrorCode::InvalidValue,
            name + " position must be finite");
    require(p.z >= 0.0, ErrorCode::InvalidValue, name + " must lie above the ground plane (z >= 0)");
}

inline void check_array(const ArraySpec& a, const std::string& name)
{
    require(a.rows >= 1 && a.cols >= 1, ErrorCode::NonPositiveCount, name + " antenna count must be >= 1");
    require(a.layout == ArrayLayout::UPA || a.rows == 1 || a.cols == 1, ErrorCode::DimensionMismatch,
            name + " ULA must have a single row or column");
    require(a.spacing_wavelengths > 0.0, ErrorCode::InvalidValue, name + " element spacing must be > 0");
    require(std::isfinite(a.yaw), ErrorCode::InvalidValue, name + " yaw must be finite");
    check_point(a.position, name);
}

inline double plane_normal_component(MountingPlane plane, const Point3& from, const Point3& to)
{
    return plane == MountingPlane::XZ ? to.y - from.y : to.x - from.x;
}

} // namespace detail

/// Checks every scenario invariant and derives wavelength and linear powers.
/// Surfaces with `Facing::Auto` are resolved to the side containing the Tx
/// (the Rx when the Tx lies in the mounting plane).
inline ValidatedConfig validate_config(SimConfig cfg)
{
    using detail::require;
    const Environment& env = cfg.environment;
    require(env.cluster_intensity > 0.0, ErrorCode::InvalidValue, "cluster intensity must be > 0");
    require(env.scatterers_min >= 1, ErrorCode::NonPositiveCount, "scatterers_min must be >= 1");
    require(env.scatterers_max >= env.scatterers_min, ErrorCode::InvalidValue, "scatterers_max < scatterers_min");
    for (const auto* pl : {&env.los, &env.nlos}) {
        require(pl->shadow_sigma_db >= 0.0, ErrorCode::InvalidValue, "shadow fading sigma must be >= 0");
        require(pl->distance_exponent > 0.0, ErrorCode::InvalidValue, "path-loss distance exponent must be > 0");
        require(pl->frequency_coefficient > 0.0, ErrorCode::InvalidValue, "path-loss frequency coefficient must be > 0");
    }
    require(env.placement.angular_spread >= 0.0, ErrorCode::InvalidValue, "angular spread must be >= 0");

    require(std::isfinite(cfg.frequency_hz) && cfg.frequency_hz > 0.0, ErrorCode::InvalidValue,
            "carrier frequency must be > 0");
    require(cfg.realizations >= 1, ErrorCode::NonPositiveCount, "realization count must be >= 1");
    require(!cfg.pt_dbm.empty(), ErrorCode::EmptySweep, "transmit power list is empty");
    for (double p : cfg.pt_dbm)
        require(std::isfinite(p), ErrorCode::InvalidValue, "transmit power must be finite");
    require(std::isfinite(cfg.noise_dbm), ErrorCode::InvalidValue, "noise power must be finite");
    require(!cfg.ris.empty() || cfg.direct_path != LinkMode::ForcedBlocked, ErrorCode::InvalidValue,
            "no RIS and a blocked direct path leave no propagation path");

    detail::check_array(cfg.tx, "tx");
    detail::check_array(cfg.rx, "rx");
    require(!(cfg.tx.position == cfg.rx.position), ErrorCode::CoincidentPoints, "tx and rx coincide");

    ValidatedConfig out;
    out.wavelength = kSpeedOfLight / cfg.frequency_hz;

    for (std::size_t k = 0; k < cfg.ris.size(); ++k) {
        RisSpec& ris = cfg.ris[k];
        const std::string name = "ris[" + std::to_string(k) + "]";
        require(ris.elements >= 1, ErrorCode::NonPositiveCount, name + " element count must be >= 1");
        require(ris.rows >= 1 && ris.cols >= 1 && ris.rows * ris.cols == ris.elements,
                ErrorCode::DimensionMismatch, name + " grid shape does not match the element count");
        require(ris.gain_exponent >= 0.0, ErrorCode::InvalidValue, name + " gain exponent must be >= 0");
        require(ris.spacing_wavelengths > 0.0, ErrorCode::InvalidValue, name + " element spacing must be > 0");
        detail::check_point(ris.position, name);
        require(!(ris.position == cfg.tx.position) && !(ris.position == cfg.rx.position),
                ErrorCode::CoincidentPoints, name + " coincides with a terminal");

        if (ris.facing == Facing::Auto) {
            double side = detail::plane_normal_component(ris.plane, ris.position, cfg.tx.position);
            if (side == 0.0)
                side = detail::plane_normal_component(ris.plane, ris.position, cfg.rx.position);
            ris.facing = side < 0.0 ? Facing::Negative : Facing::Positive;
        }

        const double limit = fraunhofer_distance(ris, out.wavelength);
        for (const auto& [label, p] : {std::pair{"tx", cfg.tx.position}, std::pair{"rx", cfg.rx.position}}) {
            const double d = distance(ris.position, p);
            if (d < limit) {
                const std::string msg = name + "-" + label + " distance " + std::to_string(d) +
                                        " m is inside the Fraunhofer distance " + std::to_string(limit) +
                                        " m; the model is far-field only";
                if (cfg.near_field == NearFieldPolicy::Error)
                    throw Error(ErrorCode::NearFieldViolation, msg);
                out.warnings.push_back(msg);
            }
        }
    }

    for (double p : cfg.pt_dbm)
        out.pt_watts.push_back(dbm_to_watts(p));
    out.noise_watts = dbm_to_watts(cfg.noise_dbm);
    out.config = std::move(cfg);
    return out;
}

} // namespace rischan

#endif
