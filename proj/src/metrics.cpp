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

#include "cfisac/metrics.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace cfisac
{

std::vector<DrawOutcome> evaluate_draws(const SystemConfig &cfg, int n_topologies, std::uint64_t seed,
                                        MonitorMode mode, FormVariant variant, ExecPolicy policy)
{
    if (n_topologies < 1)
        throw std::invalid_argument("evaluate_draws: n_topologies must be >= 1");
    std::vector<DrawOutcome> out(static_cast<std::size_t>(n_topologies));
    const auto one = [&](int i) {
        const Scenario sc = make_scenario(cfg, seed, static_cast<std::uint64_t>(i), mode);
        DrawOutcome d;
        d.sinr_pm = sinr_monitor(sc.ls, sc.est, sc.pa, sc.cfg, variant).sinr;
        d.sinr_1 = sinr_ue(0, sc.ls, sc.est, sc.pa, sc.cfg, variant).sinr;
        d.sinr_cpu = sinr_cpu(sc.ls, sc.est, sc.pa, sc.cfg, variant).sinr;
        out[static_cast<std::size_t>(i)] = d;
    };
    if (policy == ExecPolicy::parallel)
    {
#pragma omp parallel for schedule(dynamic, 4)
        for (int i = 0; i < n_topologies; ++i)
            one(i);
    }
    else
    {
        for (int i = 0; i < n_topologies; ++i)
            one(i);
    }
    return out;
}

Proportion proportion(int successes, int n)
{
    if (n < 1)
        throw std::invalid_argument("proportion: n must be >= 1");
    if (successes < 0 || successes > n)
        throw std::invalid_argument("proportion: successes must lie in [0, n]");
    Proportion p;
    p.n = n;
    p.p = static_cast<double>(successes) / n;
    p.std_err = std::sqrt(p.p * (1.0 - p.p) / n);
    return p;
}

Proportion msp_of(const std::vector<DrawOutcome> &draws)
{
    int hits = 0;
    for (const auto &d : draws)
        hits += d.monitored() ? 1 : 0;
    return proportion(hits, static_cast<int>(draws.size()));
}

Proportion sdp_of(const std::vector<DrawOutcome> &draws, double kappa_db)
{
    const double kappa = db_to_linear(kappa_db);
    int hits = 0;
    for (const auto &d : draws)
        hits += d.sinr_cpu >= kappa ? 1 : 0;
    return proportion(hits, static_cast<int>(draws.size()));
}

Proportion msp(const SystemConfig &cfg, int n_topologies, std::uint64_t seed, FormVariant variant,
               ExecPolicy policy)
{
    return msp_of(evaluate_draws(cfg, n_topologies, seed, MonitorMode::active, variant, policy));
}

Proportion sdp(const SystemConfig &cfg, int n_topologies, std::uint64_t seed, MonitorMode mode, FormVariant variant,
               ExecPolicy policy)
{
    return sdp_of(evaluate_draws(cfg, n_topologies, seed, mode, variant, policy), cfg.kappa_db);
}

std::vector<double> default_theta_grid()
{
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i)
        g.push_back(i / 10.0);
    return g;
}

std::vector<double> default_radius_values() { return {10.0, 50.0, 100.0}; }
std::vector<int> default_npm_grid() { return {8, 16, 32, 64}; }
std::vector<double> default_p_pm_values() { return {1.0, 3.0}; }

namespace
{

MetricPoint point(std::string name, std::string var, double value, std::string series,
                  const std::vector<DrawOutcome> &draws, double kappa_db, std::uint64_t seed)
{
    const Proportion m = msp_of(draws);
    const Proportion s = sdp_of(draws, kappa_db);
    return {std::move(name), std::move(var), value, std::move(series), m.p, m.std_err, s.p, s.std_err, m.n, seed};
}

} // namespace

std::vector<MetricPoint> sweep_theta(const SystemConfig &cfg, const std::vector<double> &theta_grid,
                                     const std::vector<double> &r_values, int n_topologies, std::uint64_t seed,
                                     FormVariant variant, ExecPolicy policy)
{
    std::vector<MetricPoint> rows;
    for (double r : r_values)
        for (double theta : theta_grid)
        {
            if (theta < 0.0 || theta > 1.0)
                throw std::invalid_argument("sweep_theta: grid must lie in [0, 1]");
            SystemConfig c = cfg;
            c.monitor_radius_m = r;
            c.theta_pm_t = theta;
            c.theta_pm_1 = 1.0 - theta;
            const auto draws = evaluate_draws(c, n_topologies, seed, MonitorMode::active, variant, policy);
            rows.push_back(point("theta", "theta_pm_t", theta, "r=" + format_double(r), draws, c.kappa_db, seed));
        }
    return rows;
}

std::vector<MetricPoint> sweep_npm(const SystemConfig &cfg, const std::vector<int> &npm_grid,
                                   const std::vector<double> &p_pm_values, int n_topologies, std::uint64_t seed,
                                   FormVariant variant, ExecPolicy policy)
{
    std::vector<MetricPoint> rows;
    for (int npm : npm_grid)
    {
        SystemConfig c = cfg;
        c.n_ant_pm = npm;
        c.theta_pm_t = 0.5;
        c.theta_pm_1 = 0.5;
        for (double p : p_pm_values)
        {
            c.p_pm = p;
            const auto draws = evaluate_draws(c, n_topologies, seed, MonitorMode::active, variant, policy);
            rows.push_back(point("npm", "n_ant_pm", npm, "p_pm=" + format_double(p), draws, c.kappa_db, seed));
        }
        const auto base = evaluate_draws(c, n_topologies, seed, MonitorMode::absent, variant, policy);
        rows.push_back(point("npm", "n_ant_pm", npm, "baseline", base, c.kappa_db, seed));
    }
    return rows;
}

std::string format_double(double v)
{
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        return "nan";
    return std::string(buf, p);
}

std::string sweep_csv(const std::vector<MetricPoint> &rows)
{
    std::ostringstream os;
    os << kSweepCsvHeader << '\n';
    for (const auto &r : rows)
        os << r.sweep_name << ',' << r.sweep_var << ',' << format_double(r.sweep_value) << ',' << r.series << ','
           << format_double(r.msp) << ',' << format_double(r.msp_stderr) << ',' << format_double(r.sdp) << ','
           << format_double(r.sdp_stderr) << ',' << r.n_draws << ',' << r.seed << '\n';
    return os.str();
}

} // namespace cfisac
