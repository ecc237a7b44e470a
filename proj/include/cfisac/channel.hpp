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

#include <string>

#include <Eigen/Dense>

#include "cfisac/config.hpp"
#include "cfisac/geometry.hpp"
#include "cfisac/rng.hpp"

namespace cfisac
{

// Path loss in dB for a ground link. Breakpoints d0 = 10 m and d1 = 50 m; the formula is
// evaluated with every distance expressed in multiples of distance_unit_m.
double three_slope_pathloss_db(double distance_m, double distance_unit_m = 1.0);

// Free-space LoS gain (lambda / (4 pi d))^L.
double los_gain(double distance_m, double wavelength_m, double exponent);

// Large-scale state of one topology and shadowing draw.
//   cap = C-AP, stx = S-AP transmitter, srx = S-AP receiver, pm = monitor, t = target.
struct LargeScale
{
    Eigen::MatrixXd beta_cap_ue;  // n_cap x K
    Eigen::MatrixXd beta_stx_ue;  // n_sap_tx x K
    Eigen::MatrixXd beta_srx_ue;  // n_sap_rx x K, only used by the literal SI_s variant
    Eigen::VectorXd beta_cap_pm;  // n_cap
    Eigen::VectorXd beta_stx_pm;  // n_sap_tx
    Eigen::VectorXd beta_srx_pm;  // n_sap_rx, only used by the literal SI_s variant
    Eigen::VectorXd beta_pm_ue;   // K
    Eigen::MatrixXd beta_cap_srx; // n_cap x n_sap_rx
    Eigen::VectorXd beta_pm_srx;  // n_sap_rx
    double beta_pm_pm = 0.0;      // residual self-interference variance

    Eigen::VectorXd zeta_stx_t; // n_sap_tx
    Eigen::VectorXd zeta_t_srx; // n_sap_rx
    Eigen::VectorXd zeta_t_ue;  // K
    double zeta_pm_t = 0.0;

    double alpha_refl = 0.0;
    double wavelength_m = 0.0;
};

LargeScale large_scale(const SystemConfig &cfg, const Topology &topo, Rng &rng);

std::string to_json(const LargeScale &ls, int indent = 2);

// Deterministic air-link channels of one topology.
struct LosChannels
{
    Eigen::MatrixXcd stx_t; // N x n_sap_tx, column m' = h_{m',t}
    Eigen::MatrixXcd t_srx; // N x n_sap_rx, column m'' = h_{t,m''}
    Eigen::VectorXcd pm_t;  // N_pm, also used for target -> monitor
    Eigen::VectorXcd t_ue;  // K scalars h_{t,k}
};

LosChannels los_channels(const SystemConfig &cfg, const Topology &topo, const LargeScale &ls);

// One draw of every small-scale channel. Block layouts:
//   g_hat, g            N x (n_cap*K), column m*K + k
//   g_stx_ue            N x (n_sap_tx*K), column m'*K + k
//   g_pm_ue             N_pm x K
//   G_cap_pm            N x (n_cap*N_pm), block m holds G_{m,pm}
//   G_stx_pm            N x (n_sap_tx*N_pm)
//   G_pm_pm             N_pm x N_pm
//   G_cap_srx           N x (n_cap*n_sap_rx*N), block m*n_sap_rx + m'' holds G_{m,m''}
//   G_pm_srx            N_pm x (n_sap_rx*N), block m'' holds G_{pm,m''}
struct ChannelRealization
{
    Eigen::MatrixXcd g_hat;
    Eigen::MatrixXcd g;
    Eigen::MatrixXcd g_stx_ue;
    Eigen::MatrixXcd g_pm_ue;
    Eigen::MatrixXcd G_cap_pm;
    Eigen::MatrixXcd G_stx_pm;
    Eigen::MatrixXcd G_pm_pm;
    Eigen::MatrixXcd G_cap_srx;
    Eigen::MatrixXcd G_pm_srx;
    LosChannels los;
};

// gamma_cap_ue (n_cap x K) sets the estimate/error split of the C-AP channels: the
// estimate ~ CN(0, gamma I) and the error ~ CN(0, (beta - gamma) I) are drawn
// independently and g = g_hat + error.
ChannelRealization draw_small_scale(const SystemConfig &cfg, const LargeScale &ls,
                                    const Eigen::MatrixXd &gamma_cap_ue, const LosChannels &los, Rng &rng);

} // namespace cfisac
