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

#ifndef RISCHAN_RISCHAN_HPP
#define RISCHAN_RISCHAN_HPP

#include "rischan/channel.hpp"
#include "rischan/config_io.hpp"
#include "rischan/control.hpp"
#include "rischan/diagnostics.hpp"
#include "rischan/export.hpp"
#include "rischan/harness.hpp"
#include "rischan/model.hpp"
#include "rischan/presets.hpp"
#include "rischan/propagation.hpp"
#include "rischan/rng.hpp"
#include "rischan/spatial.hpp"

#endif
