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

#ifndef RISCHAN_CONTROL_HPP
#define RISCHAN_CONTROL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "rischan/channel.hpp"
#include "rischan/diagnostics.hpp"
#include "rischan/model.hpp"
#include "rischan/rng.hpp"

namespace rischan {

enum class PhaseAlgorithm { PinvAlign, SisoOptimal, RandomBaseline, ZeroBaseline };

/// Target effective matrix M for the pseudo-inverse sandwich pinv(G) M pinv(H).
enum class PinvTarget {
    SingularAligned, // identity in the singular bases of G and H, weighted by mode strength
    Identity,        // ||G|| ||H|| times the Nr x Nt identity
};

inline std::string_view to_string(PhaseAlgorithm a)
{
    switch (a) {
    case PhaseAlgorithm::PinvAlign: return "pinv";
    case PhaseAlgorithm::SisoOptimal: return "siso";
    case PhaseAlgorithm::RandomBaseline: return "random";
    case PhaseAlgorithm::ZeroBaseline: return "zero";
    }
    return "?";
}

inline PhaseAlgorithm parse_phase_algorithm(std::string_view s)
{
    if (s == "pinv") return PhaseAlgorithm::PinvAlign;
    if (s == "siso") return PhaseAlgorithm::SisoOptimal;
    if (s == "random") return PhaseAlgorithm::RandomBaseline;
    if (s == "zero") return PhaseAlgorithm::ZeroBaseline;
    throw Error(ErrorCode::InvalidValue, "unknown phase algorithm '" + std::string(s) + "'");
}

inline std::string_view to_string(PinvTarget t)
{
    return t == PinvTarget::SingularAligned ? "singular-aligned" : "identity";
}

inline PinvTarget parse_pinv_target(std::string_view s)
{
    if (s == "singular-aligned") return PinvTarget::SingularAligned;
    if (s == "identity") return PinvTarget::Identity;
    throw Error(ErrorCode::InvalidValue, "unknown pinv target '" + std::string(s) + "'");
}

/// Rounds each phase to the nearest of 2^bits uniform levels; bits <= 0 is a no-op.
inline PhaseVector quantize_phases(const PhaseVector& phases, int bits)
{
    if (bits <= 0)
        return phases;
    const double levels = std::ldexp(1.0, bits);
    const double step = 2.0 * kPi / levels;
    Eigen::VectorXd q(phases.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        q[i] = std::fmod(std::round(phases[i] / step), levels) * step;
    return PhaseVector(std::move(q));
}

/// Co-phases every reflected ray: theta_n = arg(d) - arg(h_n) - arg(g_n).
/// With d = 0 this is -(arg h_n + arg g_n), which makes |sum g_n e^{j theta_n} h_n| = sum |g_n||h_n|.
inline PhaseVector siso_optimal_phases(const CVector& h, const CVector& g, std::complex<double> direct = 0.0)
{
    if (h.size() != g.size())
        throw Error(ErrorCode::DimensionMismatch, "siso_optimal_phases: h and g lengths differ");
    const double ref = direct == 0.0 ? 0.0 : std::arg(direct);
    Eigen::VectorXd theta(h.size());
    for (Eigen::Index n = 0; n < h.size(); ++n)
        theta[n] = ref - std::arg(h[n]) - std::arg(g[n]);
    return PhaseVector(std::move(theta));
}

/// Matrix form: H is N x 1 and G is 1 x N.
inline PhaseVector siso_optimal_phases(const CMatrix& H, const CMatrix& G, const CMatrix& D)
{
    if (H.cols() != 1 || G.rows() != 1)
        throw Error(ErrorCode::DimensionMismatch, "siso_optimal_phases requires Nt = Nr = 1");
    const std::complex<double> d = D.size() == 1 ? D(0, 0) : std::complex<double>(0.0);
    return siso_optimal_phases(CVector(H.col(0)), CVector(G.row(0).transpose()), d);
}

inline PhaseVector baseline_phases(PhaseAlgorithm kind, Eigen::Index n, RngStream& rng)
{
    if (n < 1)
        throw Error(ErrorCode::NonPositiveCount, "baseline_phases needs N >= 1");
    if (kind == PhaseAlgorithm::ZeroBaseline)
        return PhaseVector::zeros(n);
    if (kind != PhaseAlgorithm::RandomBaseline)
        throw Error(ErrorCode::InvalidValue, "baseline_phases: not a baseline algorithm");
    Eigen::VectorXd theta(n);
    for (Eigen::Index i = 0; i < n; ++i)
        theta[i] = rng.uniform(0.0, 2.0 * kPi);
    return PhaseVector(std::move(theta));
}

struct PseudoInverse {
    CMatrix pinv;
    Eigen::MatrixXcd U; // thin left singular vectors
    Eigen::MatrixXcd V; // thin right singular vectors
    Eigen::VectorXd sigma;
    Eigen::Index rank = 0;
};

/// Moore-Penrose inverse with the usual max(m, n) * eps * sigma_max cut-off.
inline PseudoInverse pseudo_inverse(const CMatrix& a)
{
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    PseudoInverse out;
    out.U = svd.matrixU();
    out.V = svd.matrixV();
    out.sigma = svd.singularValues();
    const double smax = out.sigma.size() > 0 ? out.sigma[0] : 0.0;
    const double tol = static_cast<double>(std::max(a.rows(), a.cols())) * std::numeric_limits<double>::epsilon() * smax;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(out.sigma.size());
    for (Eigen::Index i = 0; i < out.sigma.size(); ++i)
        if (out.sigma[i] > tol && out.sigma[i] > 0.0) {
            inv[i] = 1.0 / out.sigma[i];
            ++out.rank;
        }
    out.pinv = out.V * inv.asDiagonal() * out.U.adjoint();
    return out;
}

/// One-shot pseudo-inverse phase design:
///   X = pinv(G) M pinv(H),  theta_n = arg X_nn,
/// then unit-modulus projection and optional b-bit quantization. SISO links
/// delegate to the closed-form alignment. A zero G or H has no usable inverse;
/// the result then falls back to random phases drawn from `fallback`.
inline PhaseVector pinv_phases(const CMatrix& H, const CMatrix& G, const CMatrix& D, RngStream& fallback,
                               PinvTarget target = PinvTarget::SingularAligned, int bits = 0)
{
    const Eigen::Index n = H.rows();
    if (G.cols() != n || G.rows() != D.rows() || H.cols() != D.cols())
        throw Error(ErrorCode::DimensionMismatch, "pinv_phases: inconsistent H, G, D dimensions");
    if (H.cols() == 1 && G.rows() == 1)
        return quantize_phases(siso_optimal_phases(H, G, D), bits);

    if (n < std::max(G.rows(), H.cols()))
        warn_once("pinv_small_n", "pinv_phases: N is smaller than max(Nt, Nr); the surface cannot shape every stream");

    const PseudoInverse pg = pseudo_inverse(G);
    const PseudoInverse ph = pseudo_inverse(H);
    if (pg.rank == 0 || ph.rank == 0) {
        warn_once("pinv_singular", std::string(to_string(ErrorCode::SingularPinv)) +
                                       ": zero H or G, falling back to random phases");
        return quantize_phases(baseline_phases(PhaseAlgorithm::RandomBaseline, n, fallback), bits);
    }

    CVector x_diag;
    if (target == PinvTarget::Identity) {
        const CMatrix m = CMatrix::Identity(G.rows(), H.cols()) * (G.norm() * H.norm());
        const CMatrix left = pg.pinv * m; // N x Nt
        // diag(left * pinv(H)) without forming the N x N product
        x_diag = (left.array() * ph.pinv.transpose().array()).rowwise().sum();
    } else {
        // M = U_G diag(s_G^2 s_H^2) V_H^H over the modes both inverses keep, so
        // pinv(G) M pinv(H) = V_G diag(s_G s_H) U_H^H. Evaluated in that reduced
        // form; going through the inverses lets near-null modes leak roundoff
        // that swamps the dominant one.
        const Eigen::Index k = std::min(pg.rank, ph.rank);
        const double scale = pg.sigma[0] * ph.sigma[0];
        Eigen::VectorXd w(k);
        for (Eigen::Index i = 0; i < k; ++i)
            w[i] = pg.sigma[i] * ph.sigma[i] / scale;
        x_diag = ((pg.V.leftCols(k) * w.asDiagonal()).array() * ph.U.leftCols(k).conjugate().array())
                     .rowwise()
                     .sum();
    }
    Eigen::VectorXd theta(n);
    for (Eigen::Index i = 0; i < n; ++i)
        theta[i] = std::abs(x_diag[i]) > 0.0 ? std::arg(x_diag[i]) : 0.0;
    return quantize_phases(PhaseVector(std::move(theta)), bits);
}

struct PhaseDesign {
    PhaseAlgorithm algorithm = PhaseAlgorithm::PinvAlign;
    int quant_bits = 0;
    PinvTarget target = PinvTarget::SingularAligned;
};

inline PhaseVector design_phases(const PhaseDesign& design, const CMatrix& H, const CMatrix& G, const CMatrix& D,
                                 RngStream& rng)
{
    switch (design.algorithm) {
    case PhaseAlgorithm::PinvAlign:
        return pinv_phases(H, G, D, rng, design.target, design.quant_bits);
    case PhaseAlgorithm::SisoOptimal:
        return quantize_phases(siso_optimal_phases(H, G, D), design.quant_bits);
    case PhaseAlgorithm::RandomBaseline:
    case PhaseAlgorithm::ZeroBaseline:
        return quantize_phases(baseline_phases(design.algorithm, H.rows(), rng), design.quant_bits);
    }
    throw Error(ErrorCode::InvalidValue, "unknown phase algorithm");
}

/// Index of the surface nearest to `rx`; ties go to the lowest index.
inline std::size_t select_ris(const Point3& rx, std::span<const RisSpec> ris)
{
    if (ris.empty())
        throw Error(ErrorCode::EmptyList, "select_ris: no surfaces");
    std::size_t best = 0;
    double best_d = distance(rx, ris[0].position);
    for (std::size_t k = 1; k < ris.size(); ++k) {
        const double d = distance(rx, ris[k].position);
        if (d < best_d) {
            best = k;
            best_d = d;
        }
    }
    return best;
}

/// R = log2 det(I + (Pt / sigma^2) C C^H), evaluated as sum_i log2(1 + rho s_i^2).
inline double achievable_rate(const CMatrix& c, double pt_watts, double noise_watts)
{
    if (!(noise_watts > 0.0))
        throw Error(ErrorCode::InvalidValue, "noise power must be > 0");
    if (!c.allFinite())
        throw Error(ErrorCode::NonFiniteEntries, "composite channel has non-finite entries");
    if (c.size() == 0)
        return 0.0;
    const double rho = pt_watts / noise_watts;
    const Eigen::VectorXd s = Eigen::JacobiSVD<CMatrix>(c).singularValues();
    double rate = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        rate += std::log2(1.0 + rho * s[i] * s[i]);
    return std::max(rate, 0.0);
}

/// Far-field received power with every antenna and element gain set to one:
///   P_r = Pt N^2 lambda^4 / ((4 pi)^2 d1^2 d2^2)
inline double far_field_power(double pt_watts, double n, double wavelength, double d1, double d2)
{
    const double l2 = wavelength * wavelength;
    const double four_pi = 4.0 * kPi;
    return pt_watts * n * n * l2 * l2 / (four_pi * four_pi * d1 * d1 * d2 * d2);
}

} // namespace rischan

#endif
