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

#ifndef RISCHAN_RNG_HPP
#define RISCHAN_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace rischan {

// Role of the random draws inside one realization. Streams are keyed by role,
// never by the order in which workers pick up realizations.
enum class LinkTag : std::uint64_t {
    TxRis = 1,
    RisRx = 2,
    TxRx = 3,
    RxOrientation = 4,
    Phases = 5,
    Calibration = 6,
};

// splitmix64 finalizer
inline constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class RngStream {
public:
    explicit RngStream(std::uint64_t seed)
        : engine_(seed)
    {
    }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    double normal(double mean = 0.0, double sigma = 1.0)
    {
        return std::normal_distribution<double>(mean, sigma)(engine_);
    }
    int poisson(double mean) { return std::poisson_distribution<int>(mean)(engine_); }
    bool bernoulli(double p) { return uniform() < p; }

    /// Circularly-symmetric CN(0, 1).
    std::complex<double> complex_normal()
    {
        constexpr double s = 0.70710678118654752440;
        const double re = normal(0.0, s);
        const double im = normal(0.0, s);
        return {re, im};
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Substream for (master seed, realization, link role, RIS slot).
inline RngStream spawn_rng(std::uint64_t master_seed, std::uint64_t realization, LinkTag tag,
                           std::uint64_t slot = 0)
{
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ realization);
    h = mix64(h ^ static_cast<std::uint64_t>(tag));
    h = mix64(h ^ slot);
    return RngStream(h);
}

} // namespace rischan

#endif
