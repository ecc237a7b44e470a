// SPDX-License-Identifier: Apache-2.0
//
// cfisac: cell-free ISAC simulator with a proactive monitor
// Copyright (C) 2026 The cfisac authors
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

#pragma once

#include <cstdint>

#include "cfisac/channel.hpp"
#include "cfisac/config.hpp"
#include "cfisac/estimation.hpp"
#include "cfisac/geometry.hpp"
#include "cfisac/precoding.hpp"

namespace cfisac
{

enum class MonitorMode
{
    active, // jamming and pilot spoofing as configured
    absent  // rho_pm = 0 and no spoofing pilot
};

// Everything that is fixed for one topology draw.
struct Scenario
{
    SystemConfig cfg;
    Topology topo;
    LargeScale ls;
    EstimationModel est;
    PowerAllocation pa;
    LosChannels los;
};

// Topology and shadowing come from stream (seed, topology, index), so every scenario built
// with the same seed and index sees the same geometry regardless of antenna counts, powers
// or power split.
Scenario make_scenario(const SystemConfig &cfg, std::uint64_t seed, std::uint64_t topology_index,
                       MonitorMode mode = MonitorMode::active);

// Rebuilds estimation, power and LoS state after cfg or ls fields were edited by hand.
void refresh(Scenario &sc, MonitorMode mode = MonitorMode::active);

} // namespace cfisac
