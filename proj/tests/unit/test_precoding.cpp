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

#include "doctest.h"

#include "cfisac/precoding.hpp"
#include "cfisac/rng.hpp"
#include "cfisac/scenario.hpp"

using namespace cfisac;

namespace
{

Scenario tiny()
{
    SystemConfig cfg;
    cfg.n_cap = 1;
    cfg.n_sap_tx = 1;
    cfg.n_sap_rx = 1;
    cfg.n_ue = 4;
    cfg.tau_p = 4;
    cfg.n_ant_ap = 5;
    Scenario sc = make_scenario(cfg, 1, 0);
    return sc;
}

} // namespace

TEST_CASE("full-power coefficients by hand")
{
    Scenario sc = tiny();
    sc.est.gamma << 0.005, 0.005, 0.005, 0.005;
    sc.ls.zeta_stx_t(0) = 0.001;
    const PowerAllocation pa = full_power_coefficients(sc.ls, sc.est, sc.cfg);
    for (int k = 0; k < 4; ++k)
        CHECK(pa.eta_c(0, k) == doctest::Approx(10.0));
    CHECK(pa.eta_s(0) == doctest::Approx(200.0));
    CHECK(pa.rho_c == doctest::Approx(normalized_snr(sc.cfg.p_c, sc.cfg)));
    CHECK(pa.rho_pm == doctest::Approx(normalized_snr(sc.cfg.p_pm, sc.cfg)));

    sc.cfg.theta_pm_t = 0.0;
    CHECK(full_power_coefficients(sc.ls, sc.est, sc.cfg).eta_pm_t == 0.0);

    sc.est.gamma.setZero();
    CHECK_THROWS_AS(full_power_coefficients(sc.ls, sc.est, sc.cfg), DegenerateConfigError);
}

TEST_CASE("monitor split constraints")
{
    SystemConfig cfg;
    cfg.theta_pm_t = 0.3;
    cfg.theta_pm_1 = 0.6;
    const Scenario sc = make_scenario(cfg, 4, 0);
    const auto &pa = sc.pa;
    const int Np = cfg.n_ant_pm;
    CHECK(Np * pa.eta_pm_t * sc.ls.zeta_pm_t == doctest::Approx(0.3));
    CHECK(Np * pa.eta_pm_1 * sc.ls.beta_pm_ue(0) == doctest::Approx(0.6));
    for (int m = 0; m < cfg.n_cap; ++m)
        CHECK(cfg.n_ant_ap * (pa.eta_c.row(m).array() * sc.est.gamma.row(m).array()).sum() == doctest::Approx(1.0));
}

TEST_CASE("per-AP transmit power")
{
    SystemConfig cfg;
    const Scenario sc = make_scenario(cfg, 2, 0);
    Rng rng = make_stream(2, StreamPurpose::auxiliary, 0);
    const int n = 10000, K = cfg.n_ue;
    std::vector<double> p_cap(cfg.n_cap, 0.0);
    double p_pm = 0.0;
    for (int t = 0; t < n; ++t)
    {
        const ChannelRealization ch = draw_small_scale(sc.cfg, sc.ls, sc.est.gamma, sc.los, rng);
        const PrecoderSet w = precoders(ch);
        CHECK(w.cap == ch.g_hat.conjugate());
        CHECK(w.pm_1 == ch.g_pm_ue.col(0).conjugate());
        for (int m = 0; m < cfg.n_cap; ++m)
            for (int k = 0; k < K; ++k)
                p_cap[m] += sc.pa.rho_c * sc.pa.eta_c(m, k) * w.cap.col(m * K + k).squaredNorm();
        p_pm += sc.pa.rho_pm * (sc.pa.eta_pm_t * w.pm_t.squaredNorm() + sc.pa.eta_pm_1 * w.pm_1.squaredNorm());
        for (int m = 0; m < cfg.n_sap_tx; ++m)
            CHECK(sc.pa.rho_s * sc.pa.eta_s(m) * w.sap.col(m).squaredNorm() == doctest::Approx(sc.pa.rho_s));
    }
    for (int m = 0; m < cfg.n_cap; ++m)
        CHECK(p_cap[m] / n == doctest::Approx(sc.pa.rho_c).epsilon(0.02));
    CHECK(p_pm / n == doctest::Approx(sc.pa.rho_pm).epsilon(0.02));
}
