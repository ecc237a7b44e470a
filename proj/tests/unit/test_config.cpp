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

#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "cfisac/config.hpp"

using namespace cfisac;

TEST_CASE("defaults")
{
    const SystemConfig c = default_config();
    CHECK(c.n_cap == 20);
    CHECK(c.n_sap_tx == 3);
    CHECK(c.n_sap_rx == 3);
    CHECK(c.n_ue == 5);
    CHECK(c.kappa_db == 3.0);
    CHECK(c.sigma_rcs_m2 == 0.1);
    CHECK(c.p_p == 0.2);
    CHECK(validate(c).empty());
}

TEST_CASE("validation names the violated field")
{
    SystemConfig c;
    c.theta_pm_t = 0.7;
    c.theta_pm_1 = 0.4;
    auto v = validate(c);
    REQUIRE(v.size() == 1);
    CHECK(v[0].message.find("power-split") != std::string::npos);

    c = SystemConfig{};
    c.n_ue = 0;
    v = validate(c);
    REQUIRE(v.size() == 1);
    CHECK(v[0].field == "n_ue");

    c = SystemConfig{};
    c.n_ue = 6;
    v = validate(c);
    REQUIRE(v.size() == 1);
    CHECK(v[0].field == "tau_p");

    c = SystemConfig{};
    c.target_height_m = 0.0;
    c.bandwidth_hz = -1.0;
    CHECK(validate(c).size() == 2);
}

TEST_CASE("thermal noise power")
{
    SystemConfig c;
    c.bandwidth_hz = 20e6;
    c.noise_figure_db = 8.0;
    CHECK(noise_power_w(c) == doctest::Approx(5.0525e-13).epsilon(1e-4));
    c.bandwidth_hz = 1.0;
    c.noise_figure_db = 0.0;
    CHECK(noise_power_w(c) == doctest::Approx(4.0039e-21).epsilon(1e-4));
    CHECK(normalized_snr(2.0 * noise_power_w(c), c) == doctest::Approx(2.0));
    c.bandwidth_hz = 0.0;
    CHECK_THROWS_AS(noise_power_w(c), ConfigError);
}

TEST_CASE("json round trip and strictness")
{
    SystemConfig c;
    c.n_ant_pm = 64;
    c.theta_pm_t = 0.25;
    c.seed = 1234567890123ULL;
    CHECK(config_from_json(to_json(c)) == c);

    const SystemConfig partial = config_from_json(R"({"n_cap": 7})");
    CHECK(partial.n_cap == 7);
    CHECK(partial.n_ue == 5);

    CHECK_THROWS_AS(config_from_json(R"({"n_caps": 7})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"n_cap": 7.5})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"p_c": "high"})"), ConfigError);
    CHECK_THROWS_AS(config_from_json("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), ConfigError);
}

TEST_CASE("load from file")
{
    const auto path = std::filesystem::temp_directory_path() / "cfisac_test_config.json";
    {
        std::ofstream out(path);
        out << R"({"n_ant_pm": 16, "p_pm": 3})";
    }
    const SystemConfig c = load_config(path);
    CHECK(c.n_ant_pm == 16);
    CHECK(c.p_pm == 3.0);
    std::filesystem::remove(path);
}

TEST_CASE("overrides are typed after the field")
{
    SystemConfig c;
    apply_override(c, "n_ant_pm=8");
    apply_override(c, "p_pm=3");
    apply_override(c, "sigma_si_db=-90.5");
    apply_override(c, "seed=42");
    CHECK(c.n_ant_pm == 8);
    CHECK(c.p_pm == 3.0);
    CHECK(c.sigma_si_db == -90.5);
    CHECK(c.seed == 42);
    CHECK_THROWS_AS(apply_override(c, "n_ant_pm=8.5"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "p_pm=abc"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "nope=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "p_pm"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "seed=-1"), ConfigError);
}

TEST_CASE("config keys cover every field once")
{
    const auto keys = config_keys();
    CHECK(keys.size() == 29);
    CHECK(keys.front() == "n_cap");
    CHECK(std::find(keys.begin(), keys.end(), "pathloss_distance_unit_m") != keys.end());
}
