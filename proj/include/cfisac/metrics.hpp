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
#include <string>
#include <vector>

#include "cfisac/closed_form.hpp"
#include "cfisac/config.hpp"
#include "cfisac/exec.hpp"
#include "cfisac/scenario.hpp"

namespace cfisac
{

// Closed-form SINRs of one topology draw.
struct DrawOutcome
{
    double sinr_pm = 0.0;
    double sinr_1 = 0.0;
    double sinr_cpu = 0.0;
    bool monitored() const { return sinr_pm >= sinr_1; }
};

// Draws 0..n_topologies-1 of stream (seed, topology, i). Each draw is independent of the others
// and of antenna counts, powers and the power split, so grid points of one sweep share draws.
std::vector<DrawOutcome> evaluate_draws(const SystemConfig &cfg, int n_topologies, std::uint64_t seed,
                                        MonitorMode mode = MonitorMode::active,
                                        FormVariant variant = FormVariant::corrected,
                                        ExecPolicy policy = ExecPolicy::parallel);

struct Proportion
{
    double p = 0.0;
    double std_err = 0.0; // sqrt(p (1 - p) / n)
    int n = 0;
};

Proportion proportion(int successes, int n);

Proportion msp(const SystemConfig &cfg, int n_topologies, std::uint64_t seed,
               FormVariant variant = FormVariant::corrected, ExecPolicy policy = ExecPolicy::parallel);
Proportion sdp(const SystemConfig &cfg, int n_topologies, std::uint64_t seed,
               MonitorMode mode = MonitorMode::active, FormVariant variant = FormVariant::corrected,
               ExecPolicy policy = ExecPolicy::parallel);

// Fractions over an already evaluated set of draws.
Proportion msp_of(const std::vector<DrawOutcome> &draws);
Proportion sdp_of(const std::vector<DrawOutcome> &draws, double kappa_db);

struct MetricPoint
{
    std::string sweep_name;
    std::string sweep_var;
    double sweep_value = 0.0;
    std::string series;
    double msp = 0.0;
    double msp_stderr = 0.0;
    double sdp = 0.0;
    double sdp_stderr = 0.0;
    int n_draws = 0;
    std::uint64_t seed = 0;
};

std::vector<double> default_theta_grid();           // 0, 0.1, ..., 1
std::vector<double> default_radius_values();        // 10, 50, 100 m
std::vector<int> default_npm_grid();                // 8, 16, 32, 64
std::vector<double> default_p_pm_values();          // 1, 3 W

// theta_pm,1 = 1 - theta_pm,t along the sweep. Rows are ordered by r, then theta.
std::vector<MetricPoint> sweep_theta(const SystemConfig &cfg, const std::vector<double> &theta_grid,
                                     const std::vector<double> &r_values, int n_topologies, std::uint64_t seed,
                                     FormVariant variant = FormVariant::corrected,
                                     ExecPolicy policy = ExecPolicy::parallel);

// Monitor power split fixed at 1/2 and 1/2. Rows: for every N_pm, one row per P_pm then the
// monitor-absent "baseline" row.
std::vector<MetricPoint> sweep_npm(const SystemConfig &cfg, const std::vector<int> &npm_grid,
                                   const std::vector<double> &p_pm_values, int n_topologies, std::uint64_t seed,
                                   FormVariant variant = FormVariant::corrected,
                                   ExecPolicy policy = ExecPolicy::parallel);

inline constexpr const char *kSweepCsvHeader =
    "sweep_name,sweep_var,sweep_value,series,msp,msp_stderr,sdp,sdp_stderr,n_draws,seed";

std::string sweep_csv(const std::vector<MetricPoint> &rows);

// Shortest text that parses back to the same double.
std::string format_double(double v);

} // namespace cfisac
