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

#include <numbers>

#include "doctest.h"

#include "cfisac/channel.hpp"
#include "cfisac/estimation.hpp"
#include "cfisac/rng.hpp"
#include "cfisac/scenario.hpp"

using namespace cfisac;

TEST_CASE("three-slope path loss")
{
    CHECK(three_slope_pathloss_db(1000.0) == doctest::Approx(-245.7));
    CHECK(three_slope_pathloss_db(1000.0, 1000.0) == doctest::Approx(-140.7));
    // Continuity at both breakpoints.
    CHECK(three_slope_pathloss_db(50.0) == doctest::Approx(three_slope_pathloss_db(50.0 + 1e-9)).epsilon(1e-9));
    CHECK(three_slope_pathloss_db(10.0) == doctest::Approx(three_slope_pathloss_db(10.0 + 1e-9)).epsilon(1e-9));
    CHECK(three_slope_pathloss_db(1.0) == three_slope_pathloss_db(10.0));
    CHECK(three_slope_pathloss_db(20.0) > three_slope_pathloss_db(40.0));
    CHECK(three_slope_pathloss_db(200.0) > three_slope_pathloss_db(400.0));
    CHECK_THROWS_AS(three_slope_pathloss_db(0.0), std::domain_error);
    CHECK_THROWS_AS(three_slope_pathloss_db(-3.0), std::domain_error);
}

TEST_CASE("LoS gain and reflection gain")
{
    const double lambda = kSpeedOfLight / 1.9e9;
    CHECK(los_gain(lambda / (4.0 * std::numbers::pi), lambda, 2.0) == doctest::Approx(1.0));
    CHECK(los_gain(200.0, lambda, 2.0) == doctest::Approx(los_gain(100.0, lambda, 2.0) / 4.0));

    SystemConfig cfg;
    const Scenario sc = make_scenario(cfg, 1, 0);
    CHECK(sc.ls.wavelength_m == doctest::Approx(0.157785).epsilon(1e-5));
    CHECK(sc.ls.alpha_refl == doctest::Approx(50.476).epsilon(1e-4));
}

TEST_CASE("zero shadowing leaves pure path loss")
{
    SystemConfig cfg;
    cfg.sigma_sh_db = 0.0;
    const Scenario sc = make_scenario(cfg, 3, 1);
    const double side = sc.topo.side_m;
    for (int m = 0; m < cfg.n_cap; ++m)
        for (int k = 0; k < cfg.n_ue; ++k)
        {
            const double d = torus_distance_2d(sc.topo.cap_pos[m], sc.topo.ue_pos[k], side);
            CHECK(sc.ls.beta_cap_ue(m, k) == doctest::Approx(db_to_linear(three_slope_pathloss_db(d))));
        }
    CHECK(sc.ls.beta_pm_pm == doctest::Approx(db_to_linear(cfg.sigma_si_db)));
}

TEST_CASE("large-scale gains are positive and reproducible")
{
    SystemConfig cfg;
    const Scenario a = make_scenario(cfg, 9, 2), b = make_scenario(cfg, 9, 2);
    CHECK(a.ls.beta_cap_ue == b.ls.beta_cap_ue);
    CHECK(a.ls.zeta_stx_t == b.ls.zeta_stx_t);
    CHECK((a.ls.beta_cap_ue.array() > 0).all());
    CHECK((a.ls.beta_cap_srx.array() > 0).all());
    CHECK((a.ls.zeta_t_srx.array() > 0).all());
    CHECK(a.ls.zeta_pm_t > 0);
    // Geometry and shadowing do not depend on antenna counts or powers.
    SystemConfig c2 = cfg;
    c2.n_ant_pm = 8;
    c2.p_pm = 3.0;
    c2.theta_pm_t = 1.0;
    c2.theta_pm_1 = 0.0;
    const Scenario c = make_scenario(c2, 9, 2);
    CHECK(c.topo == a.topo);
    CHECK(c.ls.beta_cap_ue == a.ls.beta_cap_ue);
    CHECK(c.ls.beta_pm_srx == a.ls.beta_pm_srx);
}

TEST_CASE("LoS channels")
{
    SystemConfig cfg;
    const Scenario sc = make_scenario(cfg, 1, 0);
    for (int m = 0; m < cfg.n_sap_tx; ++m)
        CHECK(sc.los.stx_t.col(m).squaredNorm() == doctest::Approx(cfg.n_ant_ap * sc.ls.zeta_stx_t(m)));
    CHECK(sc.los.pm_t.squaredNorm() == doctest::Approx(cfg.n_ant_pm * sc.ls.zeta_pm_t));
    for (int k = 0; k < cfg.n_ue; ++k)
    {
        const double d = distance_3d_to_target(sc.topo.ue_pos[k], sc.topo.target_pos, sc.topo.side_m);
        const std::complex<double> expect =
            std::sqrt(sc.ls.zeta_t_ue(k)) * std::polar(1.0, -2.0 * std::numbers::pi * d / sc.ls.wavelength_m);
        CHECK(std::abs(sc.los.t_ue(k) - expect) < 1e-12 * std::abs(expect));
    }
}

TEST_CASE("small-scale statistics")
{
    SystemConfig cfg;
    cfg.n_ant_pm = 16;
    const Scenario sc = make_scenario(cfg, 1, 0);
    Rng rng = make_stream(1, StreamPurpose::auxiliary, 10);
    const int n = 400; // 400 * 16 * 16 = 102400 entries of G_pm_pm
    double si = 0.0;
    std::complex<double> g_sum = 0.0;
    double g_pow = 0.0;
    std::complex<double> cross = 0.0;
    long count_g = 0;
    for (int t = 0; t < n; ++t)
    {
        const ChannelRealization ch = draw_small_scale(sc.cfg, sc.ls, sc.est.gamma, sc.los, rng);
        CHECK(ch.g.rows() == cfg.n_ant_ap);
        CHECK(ch.g.cols() == cfg.n_cap * cfg.n_ue);
        CHECK(ch.G_cap_srx.cols() == cfg.n_cap * cfg.n_sap_rx * cfg.n_ant_ap);
        si += ch.G_pm_pm.squaredNorm();
        for (int i = 0; i < cfg.n_ant_ap; ++i)
        {
            const std::complex<double> x = ch.g(i, 0) / std::sqrt(sc.ls.beta_cap_ue(0, 0));
            const std::complex<double> y = ch.g_pm_ue(0, 0) / std::sqrt(sc.ls.beta_pm_ue(0));
            g_sum += x;
            g_pow += std::norm(x);
            cross += x * std::conj(y);
            ++count_g;
        }
        CHECK(ch.los.stx_t == sc.los.stx_t);
    }
    const double si_var = si / (double(n) * cfg.n_ant_pm * cfg.n_ant_pm);
    CHECK(si_var == doctest::Approx(sc.ls.beta_pm_pm).epsilon(0.02));
    const double se = std::sqrt(0.5 / double(count_g));
    CHECK(std::abs(g_sum.real() / double(count_g)) < 4 * se);
    CHECK(std::abs(g_sum.imag() / double(count_g)) < 4 * se);
    CHECK(g_pow / double(count_g) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::abs(cross) / double(count_g) < 4 * std::sqrt(1.0 / double(count_g)));
}
