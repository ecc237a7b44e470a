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

#include "cfisac/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace cfisac
{

namespace
{

constexpr double kPathLossOffsetDb = 140.7;
constexpr double kBreak0M = 10.0;
constexpr double kBreak1M = 50.0;

double shadowed(double pl_db, double sigma_sh_db, Gaussian &gauss)
{
    return db_to_linear(pl_db + sigma_sh_db * gauss.real());
}

double ground_beta(Point2 a, Point2 b, const SystemConfig &cfg, double side, Gaussian &gauss)
{
    const double d = std::max(torus_distance_2d(a, b, side), 1e-9);
    return shadowed(three_slope_pathloss_db(d, cfg.pathloss_distance_unit_m), cfg.sigma_sh_db, gauss);
}

template <class Derived>
void fill_cn(Eigen::MatrixBase<Derived> &&block, double variance, Gaussian &gauss)
{
    for (Eigen::Index c = 0; c < block.cols(); ++c)
        for (Eigen::Index r = 0; r < block.rows(); ++r)
            block(r, c) = gauss.complex(variance);
}

} // namespace

double three_slope_pathloss_db(double distance_m, double distance_unit_m)
{
    if (!(distance_m > 0.0))
        throw std::domain_error("three_slope_pathloss_db: distance must be > 0");
    const double d = distance_m / distance_unit_m;
    const double d0 = kBreak0M / distance_unit_m;
    const double d1 = kBreak1M / distance_unit_m;
    if (d > d1)
        return -kPathLossOffsetDb - 35.0 * std::log10(d);
    if (d > d0)
        return -kPathLossOffsetDb - 15.0 * std::log10(d1) - 20.0 * std::log10(d);
    return -kPathLossOffsetDb - 15.0 * std::log10(d1) - 20.0 * std::log10(d0);
}

double los_gain(double distance_m, double wavelength_m, double exponent)
{
    return std::pow(wavelength_m / (4.0 * std::numbers::pi * distance_m), exponent);
}

LargeScale large_scale(const SystemConfig &cfg, const Topology &topo, Rng &rng)
{
    const int Mc = cfg.n_cap, Mt = cfg.n_sap_tx, Mr = cfg.n_sap_rx, K = cfg.n_ue;
    const double side = topo.side_m;
    Gaussian gauss(rng);
    LargeScale ls;

    ls.beta_cap_ue.resize(Mc, K);
    for (int m = 0; m < Mc; ++m)
        for (int k = 0; k < K; ++k)
            ls.beta_cap_ue(m, k) = ground_beta(topo.cap_pos[m], topo.ue_pos[k], cfg, side, gauss);
    ls.beta_stx_ue.resize(Mt, K);
    for (int m = 0; m < Mt; ++m)
        for (int k = 0; k < K; ++k)
            ls.beta_stx_ue(m, k) = ground_beta(topo.sap_tx_pos[m], topo.ue_pos[k], cfg, side, gauss);
    ls.beta_cap_pm.resize(Mc);
    for (int m = 0; m < Mc; ++m)
        ls.beta_cap_pm(m) = ground_beta(topo.cap_pos[m], topo.monitor_pos, cfg, side, gauss);
    ls.beta_stx_pm.resize(Mt);
    for (int m = 0; m < Mt; ++m)
        ls.beta_stx_pm(m) = ground_beta(topo.sap_tx_pos[m], topo.monitor_pos, cfg, side, gauss);
    ls.beta_pm_ue.resize(K);
    for (int k = 0; k < K; ++k)
        ls.beta_pm_ue(k) = ground_beta(topo.monitor_pos, topo.ue_pos[k], cfg, side, gauss);
    ls.beta_cap_srx.resize(Mc, Mr);
    for (int m = 0; m < Mc; ++m)
        for (int r = 0; r < Mr; ++r)
            ls.beta_cap_srx(m, r) = ground_beta(topo.cap_pos[m], topo.sap_rx_pos[r], cfg, side, gauss);
    ls.beta_pm_srx.resize(Mr);
    for (int r = 0; r < Mr; ++r)
        ls.beta_pm_srx(r) = ground_beta(topo.monitor_pos, topo.sap_rx_pos[r], cfg, side, gauss);
    // Drawn last so the links above keep their values when these are added or removed.
    ls.beta_srx_ue.resize(Mr, K);
    for (int r = 0; r < Mr; ++r)
        for (int k = 0; k < K; ++k)
            ls.beta_srx_ue(r, k) = ground_beta(topo.sap_rx_pos[r], topo.ue_pos[k], cfg, side, gauss);
    ls.beta_srx_pm.resize(Mr);
    for (int r = 0; r < Mr; ++r)
        ls.beta_srx_pm(r) = ground_beta(topo.sap_rx_pos[r], topo.monitor_pos, cfg, side, gauss);

    ls.beta_pm_pm = db_to_linear(cfg.sigma_si_db);

    ls.wavelength_m = cfg.wavelength_m();
    const auto zeta = [&](Point2 p) {
        return los_gain(distance_3d_to_target(p, topo.target_pos, side), ls.wavelength_m, cfg.pathloss_exponent);
    };
    ls.zeta_stx_t.resize(Mt);
    for (int m = 0; m < Mt; ++m)
        ls.zeta_stx_t(m) = zeta(topo.sap_tx_pos[m]);
    ls.zeta_t_srx.resize(Mr);
    for (int r = 0; r < Mr; ++r)
        ls.zeta_t_srx(r) = zeta(topo.sap_rx_pos[r]);
    ls.zeta_t_ue.resize(K);
    for (int k = 0; k < K; ++k)
        ls.zeta_t_ue(k) = zeta(topo.ue_pos[k]);
    ls.zeta_pm_t = zeta(topo.monitor_pos);

    ls.alpha_refl = 4.0 * std::numbers::pi * cfg.sigma_rcs_m2 / (ls.wavelength_m * ls.wavelength_m);
    return ls;
}

LosChannels los_channels(const SystemConfig &cfg, const Topology &topo, const LargeScale &ls)
{
    const int N = cfg.n_ant_ap;
    const double side = topo.side_m;
    const auto array_channel = [&](Point2 p, double zeta, int n_ant) -> Eigen::VectorXcd {
        const Angles a = departure_angles(p, topo.target_pos, side);
        return std::sqrt(zeta) * steering_vector(a.azimuth, a.elevation, n_ant);
    };
    LosChannels los;
    los.stx_t.resize(N, cfg.n_sap_tx);
    for (int m = 0; m < cfg.n_sap_tx; ++m)
        los.stx_t.col(m) = array_channel(topo.sap_tx_pos[m], ls.zeta_stx_t(m), N);
    los.t_srx.resize(N, cfg.n_sap_rx);
    for (int r = 0; r < cfg.n_sap_rx; ++r)
        los.t_srx.col(r) = array_channel(topo.sap_rx_pos[r], ls.zeta_t_srx(r), N);
    los.pm_t = array_channel(topo.monitor_pos, ls.zeta_pm_t, cfg.n_ant_pm);
    los.t_ue.resize(cfg.n_ue);
    for (int k = 0; k < cfg.n_ue; ++k)
    {
        const double d = distance_3d_to_target(topo.ue_pos[k], topo.target_pos, side);
        los.t_ue(k) = std::polar(std::sqrt(ls.zeta_t_ue(k)), -2.0 * std::numbers::pi * d / ls.wavelength_m);
    }
    return los;
}

ChannelRealization draw_small_scale(const SystemConfig &cfg, const LargeScale &ls,
                                    const Eigen::MatrixXd &gamma_cap_ue, const LosChannels &los, Rng &rng)
{
    const int Mc = cfg.n_cap, Mt = cfg.n_sap_tx, Mr = cfg.n_sap_rx, K = cfg.n_ue;
    const int N = cfg.n_ant_ap, Np = cfg.n_ant_pm;
    if (gamma_cap_ue.rows() != Mc || gamma_cap_ue.cols() != K)
        throw std::invalid_argument("draw_small_scale: gamma shape does not match the config");
    Gaussian gauss(rng);
    ChannelRealization ch;

    ch.g_hat.resize(N, Mc * K);
    ch.g.resize(N, Mc * K);
    for (int m = 0; m < Mc; ++m)
        for (int k = 0; k < K; ++k)
        {
            const int c = m * K + k;
            const double gamma = gamma_cap_ue(m, k);
            const double err = ls.beta_cap_ue(m, k) - gamma;
            for (int n = 0; n < N; ++n)
            {
                const auto hat = gauss.complex(gamma);
                ch.g_hat(n, c) = hat;
                ch.g(n, c) = hat + gauss.complex(err);
            }
        }

    ch.g_stx_ue.resize(N, Mt * K);
    for (int m = 0; m < Mt; ++m)
        for (int k = 0; k < K; ++k)
            fill_cn(ch.g_stx_ue.col(m * K + k), ls.beta_stx_ue(m, k), gauss);
    ch.g_pm_ue.resize(Np, K);
    for (int k = 0; k < K; ++k)
        fill_cn(ch.g_pm_ue.col(k), ls.beta_pm_ue(k), gauss);
    ch.G_cap_pm.resize(N, Mc * Np);
    for (int m = 0; m < Mc; ++m)
        fill_cn(ch.G_cap_pm.middleCols(m * Np, Np), ls.beta_cap_pm(m), gauss);
    ch.G_stx_pm.resize(N, Mt * Np);
    for (int m = 0; m < Mt; ++m)
        fill_cn(ch.G_stx_pm.middleCols(m * Np, Np), ls.beta_stx_pm(m), gauss);
    ch.G_pm_pm.resize(Np, Np);
    fill_cn(ch.G_pm_pm.leftCols(Np), ls.beta_pm_pm, gauss);
    ch.G_cap_srx.resize(N, Mc * Mr * N);
    for (int m = 0; m < Mc; ++m)
        for (int r = 0; r < Mr; ++r)
            fill_cn(ch.G_cap_srx.middleCols((m * Mr + r) * N, N), ls.beta_cap_srx(m, r), gauss);
    ch.G_pm_srx.resize(Np, Mr * N);
    for (int r = 0; r < Mr; ++r)
        fill_cn(ch.G_pm_srx.middleCols(r * N, N), ls.beta_pm_srx(r), gauss);

    ch.los = los;
    return ch;
}

namespace
{

nlohmann::ordered_json mat_json(const Eigen::MatrixXd &m)
{
    auto rows = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
    {
        auto row = nlohmann::ordered_json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

nlohmann::ordered_json vec_json(const Eigen::VectorXd &v)
{
    return nlohmann::ordered_json(std::vector<double>(v.data(), v.data() + v.size()));
}

} // namespace

std::string to_json(const LargeScale &ls, int indent)
{
    nlohmann::ordered_json j;
    j["beta_cap_ue"] = mat_json(ls.beta_cap_ue);
    j["beta_stx_ue"] = mat_json(ls.beta_stx_ue);
    j["beta_srx_ue"] = mat_json(ls.beta_srx_ue);
    j["beta_cap_pm"] = vec_json(ls.beta_cap_pm);
    j["beta_stx_pm"] = vec_json(ls.beta_stx_pm);
    j["beta_srx_pm"] = vec_json(ls.beta_srx_pm);
    j["beta_pm_ue"] = vec_json(ls.beta_pm_ue);
    j["beta_cap_srx"] = mat_json(ls.beta_cap_srx);
    j["beta_pm_srx"] = vec_json(ls.beta_pm_srx);
    j["beta_pm_pm"] = ls.beta_pm_pm;
    j["zeta_stx_t"] = vec_json(ls.zeta_stx_t);
    j["zeta_t_srx"] = vec_json(ls.zeta_t_srx);
    j["zeta_t_ue"] = vec_json(ls.zeta_t_ue);
    j["zeta_pm_t"] = ls.zeta_pm_t;
    j["alpha_refl"] = ls.alpha_refl;
    j["wavelength_m"] = ls.wavelength_m;
    return j.dump(indent);
}

} // namespace cfisac
