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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cfisac
{

inline constexpr double kBoltzmann = 1.380649e-23;   // J/K
inline constexpr double kSpeedOfLight = 299792458.0; // m/s
inline constexpr double kNoiseTemperature = 290.0;   // K

// All scalar parameters of one simulation. Field names double as the config-file keys.
struct SystemConfig
{
    int n_cap = 20;
    int n_sap_tx = 3;
    int n_sap_rx = 3;
    int n_ue = 5;
    int n_ant_ap = 5;
    int n_ant_pm = 32;

    double p_c = 1.0; // W
    double p_s = 1.0;
    double p_p = 0.2;
    double p_pm = 1.0;

    double noise_figure_db = 8.0;
    double bandwidth_hz = 1.0e6;
    double carrier_hz = 1.9e9;

    int tau_p = 5;
    double rho_p_pm_scale = 1.0;

    double sigma_sh_db = 9.0;
    double sigma_si_db = -110.0;
    double sigma_rcs_m2 = 0.1;
    double pathloss_exponent = 2.0;
    double pathloss_distance_unit_m = 1.0; // 1: metres, 1000: kilometres
    double target_height_m = 100.0;
    double monitor_radius_m = 10.0;
    double area_km = 1.0;

    double kappa_db = 3.0;
    double theta_pm_t = 0.5;
    double theta_pm_1 = 0.5;

    std::uint64_t seed = 1;
    int mc_trials = 100000;
    int topo_draws = 500;

    double wavelength_m() const { return kSpeedOfLight / carrier_hz; }
    double area_side_m() const { return area_km * 1000.0; }

    friend bool operator==(const SystemConfig &, const SystemConfig &) = default;
};

struct Violation
{
    std::string field;
    std::string message;
};

class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

SystemConfig default_config();

// Every violated invariant; empty iff the config is admissible.
std::vector<Violation> validate(const SystemConfig &cfg);

// k_B * T0 * B * 10^(NF/10). Throws ConfigError for non-positive bandwidth.
double noise_power_w(const SystemConfig &cfg);

// P / noise power.
double normalized_snr(double power_w, const SystemConfig &cfg);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Flat JSON object with exactly the SystemConfig field names. Missing keys keep their
// defaults, unknown keys and type mismatches throw ConfigError.
std::string to_json(const SystemConfig &cfg, int indent = 2);
SystemConfig config_from_json(std::string_view text);
SystemConfig load_config(const std::filesystem::path &path);

// "key=value" override, typed after the field.
void apply_override(SystemConfig &cfg, std::string_view assignment);

std::vector<std::string> config_keys();

} // namespace cfisac
