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

#include "cfisac/scenario.hpp"

#include "cfisac/rng.hpp"

namespace cfisac
{

Scenario make_scenario(const SystemConfig &cfg, std::uint64_t seed, std::uint64_t topology_index, MonitorMode mode)
{
    Scenario sc;
    sc.cfg = cfg;
    Rng rng = make_stream(seed, StreamPurpose::topology, topology_index);
    sc.topo = draw_topology(cfg, rng);
    sc.ls = large_scale(cfg, sc.topo, rng);
    refresh(sc, mode);
    return sc;
}

void refresh(Scenario &sc, MonitorMode mode)
{
    const bool active = mode == MonitorMode::active;
    sc.est = estimate_qualities(sc.cfg, sc.ls, active);
    sc.pa = full_power_coefficients(sc.ls, sc.est, sc.cfg);
    if (!active)
        sc.pa.rho_pm = 0.0;
    sc.los = los_channels(sc.cfg, sc.topo, sc.ls);
}

} // namespace cfisac
