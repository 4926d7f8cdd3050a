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

#ifndef RISCHAN_PRESETS_HPP
#define RISCHAN_PRESETS_HPP

#include "rischan/config_io.hpp"
#include "rischan/model.hpp"

namespace rischan::presets {

// Reference scenes at 28 GHz, -100 dBm noise. The surface is placed with line
// of sight to both terminals while the direct Tx-Rx path is blocked.

inline Scenario indoor()
{
    Scenario sc;
    SimConfig& c = sc.sim;
    c.environment = environment_preset(EnvironmentKind::InHIndoorOffice);
    c.frequency_hz = 28e9;
    c.tx = ArraySpec::make(ArrayLayout::UPA, 4, {0.0, 25.0, 2.0});
    c.rx = ArraySpec::make(ArrayLayout::UPA, 4, {45.0, 45.0, 1.0});
    c.ris = {RisSpec::make(64, {40.0, 50.0, 2.0}, MountingPlane::XZ)};
    c.pt_dbm = {40.0};
    c.noise_dbm = -100.0;
    c.realizations = 500;
    c.seed = 42;
    c.direct_path = LinkMode::ForcedBlocked;
    c.tx_ris_los = LinkMode::ForcedPresent;
    c.ris_rx_los = LinkMode::ForcedPresent;
    sc.campaign.grid = {0.0, 60.0, 0.0, 50.0, 1.0, 1.0};
    return sc;
}

inline Scenario outdoor()
{
    Scenario sc = indoor();
    SimConfig& c = sc.sim;
    c.environment = environment_preset(EnvironmentKind::UMiStreetCanyon);
    c.tx = ArraySpec::make(ArrayLayout::ULA, 4, {0.0, 25.0, 20.0});
    c.rx = ArraySpec::make(ArrayLayout::ULA, 4, {50.0, 50.0, 1.0});
    c.ris = {RisSpec::make(64, {40.0, 60.0, 10.0}, MountingPlane::XZ)};
    sc.campaign.grid = {0.0, 80.0, 0.0, 60.0, 1.0, 1.0};
    return sc;
}

/// Indoor scene with a second surface on the yz wall at (60, 30, 2).
inline Scenario indoor_two_ris()
{
    Scenario sc = indoor();
    sc.sim.ris.push_back(RisSpec::make(64, {60.0, 30.0, 2.0}, MountingPlane::YZ));
    return sc;
}

} // namespace rischan::presets

#endif
