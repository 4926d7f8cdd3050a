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

#ifndef RISCHAN_SPATIAL_HPP
#define RISCHAN_SPATIAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "rischan/model.hpp"

namespace rischan {

// Angle convention shared by every module:
//   azimuth   = atan2(local y, local x), measured in the local horizontal plane
//   elevation = atan2(local z, hypot(local x, local y)), from the local horizontal
// Local +x is the device broadside.
struct AngleSet {
    double azimuth = 0.0;
    double elevation = 0.0;
    double distance = 0.0;
};

/// Orthonormal device frame; columns are the local x/y/z axes in global coordinates.
struct Frame {
    Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();

    Eigen::Vector3d to_local(const Eigen::Vector3d& global) const { return axes.transpose() * global; }
    Eigen::Vector3d to_global(const Eigen::Vector3d& local) const { return axes * local; }

    /// Global frame rotated about z by `yaw` radians.
    static Frame yawed(double yaw)
    {
        const double c = std::cos(yaw), s = std::sin(yaw);
        Frame f;
        f.axes << c, -s, 0.0,
                  s,  c, 0.0,
                  0.0, 0.0, 1.0;
        return f;
    }

    /// Mounting-plane frame of a surface. The in-plane axes are local y (horizontal)
    /// and local z (vertical); local x is the plane normal on the facing side.
    static Frame mounted(MountingPlane plane, Facing facing)
    {
        const double sign = facing == Facing::Negative ? -1.0 : 1.0;
        Frame f;
        if (plane == MountingPlane::XZ) {
            // broadside +/-y
            f.axes << 0.0, -sign, 0.0,
                      sign,  0.0, 0.0,
                      0.0,   0.0, 1.0;
        } else {
            // broadside +/-x
            f.axes << sign, 0.0, 0.0,
                      0.0, sign, 0.0,
                      0.0, 0.0, 1.0;
        }
        return f;
    }
};

inline Eigen::Vector3d to_vector(const Point3& p) { return {p.x, p.y, p.z}; }
inline Point3 to_point(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

/// Direction and range of `to` as seen from `from` in `frame`.
inline AngleSet geometry_relation(const Point3& from, const Point3& to, const Frame& frame = {})
{
    const Eigen::Vector3d delta = to_vector(to) - to_vector(from);
    const double d = delta.norm();
    if (!(d > 0.0))
        throw Error(ErrorCode::CoincidentPoints, "geometry_relation between coincident points");
    const Eigen::Vector3d local = frame.to_local(delta);
    return {std::atan2(local.y(), local.x()), std::atan2(local.z(), std::hypot(local.x(), local.y())), d};
}

/// Unit direction u(phi, theta) in the local frame.
inline Eigen::Vector3d direction(double azimuth, double elevation)
{
    const double ce = std::cos(elevation);
    return {ce * std::cos(azimuth), ce * std::sin(azimuth), std::sin(elevation)};
}

/// Angle between a direction and the local broadside (+x).
inline double off_broadside_angle(const AngleSet& a)
{
    const double c = std::cos(a.elevation) * std::cos(a.azimuth);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

/// Row-major grid in the local y-z plane, centred on the origin. Element n sits at
/// row n / cols (local z) and column n % cols (local y).
inline Eigen::Matrix3Xd grid_coordinates(int rows, int cols, double spacing_m)
{
    Eigen::Matrix3Xd coords(3, rows * cols);
    const double y0 = 0.5 * (cols - 1);
    const double z0 = 0.5 * (rows - 1);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            coords.col(r * cols + c) = Eigen::Vector3d(0.0, (c - y0) * spacing_m, (r - z0) * spacing_m);
    return coords;
}

inline Eigen::Matrix3Xd element_coordinates(const ArraySpec& spec, double wavelength)
{
    return grid_coordinates(spec.rows, spec.cols, spec.spacing_wavelengths * wavelength);
}

inline Eigen::Matrix3Xd element_coordinates(const RisSpec& spec, double wavelength)
{
    return grid_coordinates(spec.rows, spec.cols, spec.spacing_wavelengths * wavelength);
}

/// Plane-wave array response, phases referenced to element 0:
///   a_n = exp(j 2pi/lambda <u(phi, theta), r_n - r_0>)
inline Eigen::VectorXcd steering_vector(const Eigen::Matrix3Xd& coords, const AngleSet& angles, double wavelength)
{
    if (!(wavelength > 0.0))
        throw Error(ErrorCode::InvalidValue, "wavelength must be > 0");
    const Eigen::Index n = coords.cols();
    Eigen::VectorXcd a(n);
    if (n == 0)
        return a;
    const Eigen::Vector3d u = direction(angles.azimuth, angles.elevation) * (2.0 * kPi / wavelength);
    const double ref = u.dot(coords.col(0));
    for (Eigen::Index i = 0; i < n; ++i)
        a[i] = std::polar(1.0, u.dot(coords.col(i)) - ref);
    return a;
}

template <typename Spec>
Eigen::VectorXcd steering_vector(const Spec& spec, const AngleSet& angles, double wavelength)
{
    return steering_vector(element_coordinates(spec, wavelength), angles, wavelength);
}

/// Unit-cell radiation pattern 2(2q+1) cos^(2q)(theta), zero behind the surface.
/// Integrates to 4pi over the front hemisphere for every q >= 0.
inline double element_gain(double theta, double q)
{
    if (!(std::abs(theta) < kPi / 2.0))
        return 0.0;
    return 2.0 * (2.0 * q + 1.0) * std::pow(std::cos(theta), 2.0 * q);
}

/// A positioned, oriented set of elements with precomputed local coordinates.
struct Aperture {
    Point3 position;
    Frame frame;
    Eigen::Matrix3Xd coords;

    Eigen::Index size() const { return coords.cols(); }

    AngleSet angles_to(const Point3& target) const { return geometry_relation(position, target, frame); }

    Eigen::VectorXcd response(const AngleSet& angles, double wavelength) const
    {
        return steering_vector(coords, angles, wavelength);
    }
};

inline Aperture make_aperture(const ArraySpec& spec, double wavelength, double yaw)
{
    return {spec.position, Frame::yawed(yaw), element_coordinates(spec, wavelength)};
}

inline Aperture make_aperture(const RisSpec& spec, double wavelength)
{
    return {spec.position, Frame::mounted(spec.plane, spec.facing), element_coordinates(spec, wavelength)};
}

} // namespace rischan

#endif
