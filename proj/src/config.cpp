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

#include "cfisac/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cfisac
{

namespace
{

using nlohmann::ordered_json;

// Visits every field in declaration order.
template <class Config, class F>
void for_each_field(Config &c, F &&f)
{
    f("n_cap", c.n_cap);
    f("n_sap_tx", c.n_sap_tx);
    f("n_sap_rx", c.n_sap_rx);
    f("n_ue", c.n_ue);
    f("n_ant_ap", c.n_ant_ap);
    f("n_ant_pm", c.n_ant_pm);
    f("p_c", c.p_c);
    f("p_s", c.p_s);
    f("p_p", c.p_p);
    f("p_pm", c.p_pm);
    f("noise_figure_db", c.noise_figure_db);
    f("bandwidth_hz", c.bandwidth_hz);
    f("carrier_hz", c.carrier_hz);
    f("tau_p", c.tau_p);
    f("rho_p_pm_scale", c.rho_p_pm_scale);
    f("sigma_sh_db", c.sigma_sh_db);
    f("sigma_si_db", c.sigma_si_db);
    f("sigma_rcs_m2", c.sigma_rcs_m2);
    f("pathloss_exponent", c.pathloss_exponent);
    f("pathloss_distance_unit_m", c.pathloss_distance_unit_m);
    f("target_height_m", c.target_height_m);
    f("monitor_radius_m", c.monitor_radius_m);
    f("area_km", c.area_km);
    f("kappa_db", c.kappa_db);
    f("theta_pm_t", c.theta_pm_t);
    f("theta_pm_1", c.theta_pm_1);
    f("seed", c.seed);
    f("mc_trials", c.mc_trials);
    f("topo_draws", c.topo_draws);
}

void assign(const ordered_json &v, const std::string &key, int &out)
{
    if (!v.is_number_integer())
        throw ConfigError("config key '" + key + "' expects an integer");
    const auto x = v.get<std::int64_t>();
    if (x < INT32_MIN || x > INT32_MAX)
        throw ConfigError("config key '" + key + "' out of range");
    out = static_cast<int>(x);
}

void assign(const ordered_json &v, const std::string &key, double &out)
{
    if (!v.is_number())
        throw ConfigError("config key '" + key + "' expects a number");
    out = v.get<double>();
}

void assign(const ordered_json &v, const std::string &key, std::uint64_t &out)
{
    if (!v.is_number_unsigned())
        throw ConfigError("config key '" + key + "' expects a non-negative integer");
    out = v.get<std::uint64_t>();
}

// Typed parse of one override value.
ordered_json parse_scalar(std::string_view text, const ordered_json &like, const std::string &key)
{
    const char *first = text.data();
    const char *last = text.data() + text.size();
    if (like.is_number_unsigned() || like.is_number_integer())
    {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || p != last)
            throw ConfigError("override '" + key + "' expects an integer, got '" + std::string(text) + "'");
        if (like.is_number_unsigned() && v >= 0)
            return ordered_json(static_cast<std::uint64_t>(v));
        return ordered_json(v);
    }
    // from_chars for double is missing in some libstdc++ builds; strtod with a full-consumption check.
    std::string s(text);
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw ConfigError("override '" + key + "' expects a number, got '" + s + "'");
    return ordered_json(v);
}

ordered_json to_ordered_json(const SystemConfig &cfg)
{
    ordered_json j = ordered_json::object();
    for_each_field(cfg, [&](const char *name, const auto &value) { j[name] = value; });
    return j;
}

SystemConfig from_ordered_json(const ordered_json &j)
{
    if (!j.is_object())
        throw ConfigError("config must be a flat JSON object");
    SystemConfig cfg = default_config();
    const auto keys = config_keys();
    for (const auto &item : j.items())
        if (std::find(keys.begin(), keys.end(), item.key()) == keys.end())
            throw ConfigError("unknown config key '" + item.key() + "'");
    for_each_field(cfg, [&](const char *name, auto &field) {
        auto it = j.find(name);
        if (it != j.end())
            assign(*it, name, field);
    });
    return cfg;
}

} // namespace

SystemConfig default_config() { return SystemConfig{}; }

std::vector<std::string> config_keys()
{
    std::vector<std::string> keys;
    SystemConfig c;
    for_each_field(c, [&](const char *name, auto &) { keys.emplace_back(name); });
    return keys;
}

std::vector<Violation> validate(const SystemConfig &cfg)
{
    std::vector<Violation> out;
    auto need = [&](bool ok, const char *field, std::string msg) {
        if (!ok)
            out.push_back({field, std::move(msg)});
    };
    need(cfg.n_cap >= 1, "n_cap", "count must be >= 1");
    need(cfg.n_sap_tx >= 1, "n_sap_tx", "count must be >= 1");
    need(cfg.n_sap_rx >= 1, "n_sap_rx", "count must be >= 1");
    need(cfg.n_ue >= 1, "n_ue", "count must be >= 1");
    need(cfg.n_ant_ap >= 1, "n_ant_ap", "count must be >= 1");
    need(cfg.n_ant_pm >= 1, "n_ant_pm", "count must be >= 1");

    need(cfg.p_c > 0.0, "p_c", "power must be > 0");
    need(cfg.p_s > 0.0, "p_s", "power must be > 0");
    need(cfg.p_p > 0.0, "p_p", "power must be > 0");
    need(cfg.p_pm > 0.0, "p_pm", "power must be > 0");
    need(std::isfinite(cfg.noise_figure_db), "noise_figure_db", "must be finite");
    need(cfg.bandwidth_hz > 0.0, "bandwidth_hz", "must be > 0");
    need(cfg.carrier_hz > 0.0, "carrier_hz", "must be > 0");

    need(cfg.tau_p > 0, "tau_p", "pilot length must be > 0");
    need(cfg.tau_p >= cfg.n_ue, "tau_p", "orthogonal pilots need tau_p >= n_ue");
    need(cfg.rho_p_pm_scale >= 0.0 && std::isfinite(cfg.rho_p_pm_scale), "rho_p_pm_scale",
         "must be finite and >= 0");

    need(cfg.sigma_sh_db >= 0.0 && std::isfinite(cfg.sigma_sh_db), "sigma_sh_db", "must be finite and >= 0");
    need(std::isfinite(cfg.sigma_si_db), "sigma_si_db", "must be finite");
    need(cfg.sigma_rcs_m2 > 0.0, "sigma_rcs_m2", "must be > 0");
    need(cfg.pathloss_exponent > 0.0, "pathloss_exponent", "must be > 0");
    need(cfg.pathloss_distance_unit_m > 0.0, "pathloss_distance_unit_m", "must be > 0");
    need(cfg.target_height_m > 0.0, "target_height_m", "target must be airborne (h > 0)");
    need(cfg.monitor_radius_m >= 0.0 && std::isfinite(cfg.monitor_radius_m), "monitor_radius_m",
         "must be finite and >= 0");
    need(cfg.area_km > 0.0, "area_km", "must be > 0");

    need(std::isfinite(cfg.kappa_db), "kappa_db", "must be finite");
    need(cfg.theta_pm_t >= 0.0 && cfg.theta_pm_1 >= 0.0, "theta_pm_t",
         "power-split fractions must be >= 0");
    need(cfg.theta_pm_t + cfg.theta_pm_1 <= 1.0 + 1e-12, "theta_pm_t+theta_pm_1",
         "monitor power-split constraint theta_pm_t + theta_pm_1 <= 1 violated");

    need(cfg.mc_trials >= 1, "mc_trials", "must be >= 1");
    need(cfg.topo_draws >= 1, "topo_draws", "must be >= 1");
    return out;
}

double noise_power_w(const SystemConfig &cfg)
{
    if (!(cfg.bandwidth_hz > 0.0))
        throw ConfigError("bandwidth_hz must be > 0");
    return kBoltzmann * kNoiseTemperature * cfg.bandwidth_hz * db_to_linear(cfg.noise_figure_db);
}

double normalized_snr(double power_w, const SystemConfig &cfg) { return power_w / noise_power_w(cfg); }

std::string to_json(const SystemConfig &cfg, int indent) { return to_ordered_json(cfg).dump(indent); }

SystemConfig config_from_json(std::string_view text)
{
    ordered_json j;
    try
    {
        j = ordered_json::parse(text.begin(), text.end());
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return from_ordered_json(j);
}

SystemConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

void apply_override(SystemConfig &cfg, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ConfigError("override must look like key=value, got '" + std::string(assignment) + "'");
    const std::string key(assignment.substr(0, eq));
    const auto value = assignment.substr(eq + 1);
    ordered_json j = to_ordered_json(cfg);
    auto it = j.find(key);
    if (it == j.end())
        throw ConfigError("unknown config key '" + key + "'");
    *it = parse_scalar(value, *it, key);
    cfg = from_ordered_json(j);
}

} // namespace cfisac
