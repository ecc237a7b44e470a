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

#include <cmath>

#include "doctest.h"

#include "cfisac/closed_form.hpp"
#include "cfisac/scenario.hpp"

using namespace cfisac;

namespace
{

std::vector<SinrBreakdown> all_receivers(const Scenario &sc, FormVariant v = FormVariant::corrected)
{
    std::vector<SinrBreakdown> out;
    out.push_back(sinr_monitor(sc.ls, sc.est, sc.pa, sc.cfg, v));
    for (int k = 0; k < sc.cfg.n_ue; ++k)
        out.push_back(sinr_ue(k, sc.ls, sc.est, sc.pa, sc.cfg, v));
    out.push_back(sinr_cpu(sc.ls, sc.est, sc.pa, sc.cfg, v));
    return out;
}

} // namespace

TEST_CASE("term sets")
{
    CHECK(term_names(ReceiverKind::monitor) == std::vector<std::string>{"BU", "IC", "IS", "SI_s", "SI_c", "n"});
    CHECK(term_names(ReceiverKind::ue) == std::vector<std::string>{"BU", "IUI", "IS", "JS_s", "JS_c", "n"});
    CHECK(term_names(ReceiverKind::cpu) == std::vector<std::string>{"BU", "IC", "JS_s", "JS_c", "n"});
    const Scenario sc = make_scenario(SystemConfig{}, 1, 0);
    for (const auto &b : all_receivers(sc))
    {
        const auto kind = b.label == "monitor" ? ReceiverKind::monitor
                          : b.label == "cpu"   ? ReceiverKind::cpu
                                               : ReceiverKind::ue;
        REQUIRE(b.terms.size() == term_names(kind).size());
        for (std::size_t i = 0; i < b.terms.size(); ++i)
            CHECK(b.terms[i].name == term_names(kind)[i]);
        CHECK(b.term("DS") == b.desired_mean);
        CHECK_THROWS_AS(b.term("XX"), std::out_of_range);
    }
}

TEST_CASE("receiver labels")
{
    CHECK(ReceiverId::monitor().label() == "monitor");
    CHECK(ReceiverId::user(1).label() == "ue2");
    CHECK(ReceiverId::cpu().label() == "cpu");
    CHECK(parse_receiver("ue3", 5).ue == 2);
    CHECK(parse_receiver("cpu", 5).kind == ReceiverKind::cpu);
    CHECK_THROWS_AS(parse_receiver("ue6", 5), std::invalid_argument);
    CHECK_THROWS_AS(parse_receiver("ue0", 5), std::invalid_argument);
    CHECK_THROWS_AS(parse_receiver("sat", 5), std::invalid_argument);
}

TEST_CASE("terms are nonnegative and sinr is consistent")
{
    for (std::uint64_t i = 0; i < 100; ++i)
    {
        SystemConfig cfg;
        cfg.theta_pm_t = 0.1 * double(i % 11);
        cfg.theta_pm_1 = 1.0 - cfg.theta_pm_t;
        cfg.n_ant_pm = 8 << (i % 4);
        cfg.p_pm = (i % 2) ? 3.0 : 1.0;
        const Scenario sc = make_scenario(cfg, 17, i);
        for (auto v : {FormVariant::corrected, FormVariant::as_printed})
            for (const auto &b : all_receivers(sc, v))
            {
                for (const auto &t : b.terms)
                {
                    CHECK(std::isfinite(t.value));
                    CHECK(t.value >= 0.0);
                }
                CHECK(std::isfinite(b.sinr));
                CHECK(b.sinr >= 0.0);
                CHECK(b.sinr == doctest::Approx(b.numerator / b.denominator()));
            }
    }
}

TEST_CASE("CPU beamforming uncertainty is exactly zero")
{
    for (std::uint64_t i = 0; i < 20; ++i)
    {
        const Scenario sc = make_scenario(SystemConfig{}, 1, i);
        CHECK(sinr_cpu(sc.ls, sc.est, sc.pa, sc.cfg).term("BU") == 0.0);
    }
}

TEST_CASE("sensing and monitor power off")
{
    Scenario sc = make_scenario(SystemConfig{}, 1, 0);
    sc.pa.rho_s = 0.0;
    sc.pa.rho_pm = 0.0;
    const SinrBreakdown b = sinr_monitor(sc.ls, sc.est, sc.pa, sc.cfg);
    CHECK(b.term("IS") == 0.0);
    CHECK(b.term("SI_s") == 0.0);
    CHECK(b.term("SI_c") == 0.0);
}

TEST_CASE("single C-AP and single UE")
{
    SystemConfig cfg;
    cfg.n_cap = 1;
    cfg.n_ue = 1;
    cfg.tau_p = 1;
    const Scenario sc = make_scenario(cfg, 1, 0);
    CHECK(sinr_monitor(sc.ls, sc.est, sc.pa, sc.cfg).term("IC") == 0.0);
    CHECK(sinr_ue(0, sc.ls, sc.est, sc.pa, sc.cfg).term("IUI") == 0.0);
}

TEST_CASE("no jamming removes the jamming terms")
{
    SystemConfig cfg;
    cfg.theta_pm_t = 0.0;
    cfg.theta_pm_1 = 0.0;
    const Scenario sc = make_scenario(cfg, 2, 3);
    for (int k = 0; k < cfg.n_ue; ++k)
    {
        const SinrBreakdown b = sinr_ue(k, sc.ls, sc.est, sc.pa, sc.cfg);
        CHECK(b.term("JS_s") == 0.0);
        CHECK(b.term("JS_c") == 0.0);
    }
    const SinrBreakdown cpu = sinr_cpu(sc.ls, sc.est, sc.pa, sc.cfg);
    CHECK(cpu.term("JS_s") == 0.0);
    CHECK(cpu.term("JS_c") == 0.0);
    const Scenario base = make_scenario(cfg, 2, 3, MonitorMode::absent);
    CHECK(cpu.sinr == sinr_cpu(base.ls, base.est, base.pa, base.cfg).sinr);
}

TEST_CASE("silent monitor matches the monitor-absent model exactly")
{
    for (std::uint64_t i = 0; i < 20; ++i)
    {
        Scenario sc = make_scenario(SystemConfig{}, 5, i);
        sc.pa.rho_pm = 0.0;
        const Scenario base = make_scenario(SystemConfig{}, 5, i, MonitorMode::absent);
        const SinrBreakdown a = sinr_cpu(sc.ls, sc.est, sc.pa, sc.cfg);
        const SinrBreakdown b = sinr_cpu(base.ls, base.est, base.pa, base.cfg);
        CHECK(a.sinr == b.sinr);
        CHECK(a.term("JS_s") == 0.0);
        CHECK(a.term("JS_c") == 0.0);
        const SinrBreakdown m = sinr_monitor(sc.ls, sc.est, sc.pa, sc.cfg);
        CHECK(m.term("SI_s") == 0.0);
        CHECK(m.term("SI_c") == 0.0);
    }
}

TEST_CASE("monotone in the jamming share")
{
    // More power on the target beam lowers the CPU SINR.
    double prev = std::numeric_limits<double>::infinity();
    for (double th : {0.0, 0.25, 0.5, 0.75, 1.0})
    {
        SystemConfig cfg;
        cfg.theta_pm_t = th;
        cfg.theta_pm_1 = 1.0 - th;
        const Scenario sc = make_scenario(cfg, 1, 0);
        const double s = sinr_cpu(sc.ls, sc.est, sc.pa, sc.cfg).sinr;
        CHECK(s < prev);
        prev = s;
    }
}

TEST_CASE("printed and corrected variants")
{
    const Scenario sc = make_scenario(SystemConfig{}, 1, 0);
    const auto c = sinr_monitor(sc.ls, sc.est, sc.pa, sc.cfg, FormVariant::corrected);
    const auto p = sinr_monitor(sc.ls, sc.est, sc.pa, sc.cfg, FormVariant::as_printed);
    CHECK(c.term("n") == p.term("n"));
    CHECK(c.term("SI_c") == p.term("SI_c"));
    CHECK(c.term("BU") != p.term("BU"));
    CHECK(correction_note(ReceiverKind::monitor, "n").empty());
    CHECK_FALSE(correction_note(ReceiverKind::monitor, "SI_s").empty());
    CHECK_FALSE(correction_note(ReceiverKind::cpu, "JS_c").empty());
    CHECK_FALSE(correction_note(ReceiverKind::ue, "JS_c").empty());
    CHECK(correction_note(ReceiverKind::ue, "IUI").empty());
}

TEST_CASE("shape and index errors")
{
    Scenario sc = make_scenario(SystemConfig{}, 1, 0);
    CHECK_THROWS_AS(sinr_ue(5, sc.ls, sc.est, sc.pa, sc.cfg), std::out_of_range);
    sc.est.gamma.resize(3, 3);
    CHECK_THROWS(sinr_monitor(sc.ls, sc.est, sc.pa, sc.cfg));
}
