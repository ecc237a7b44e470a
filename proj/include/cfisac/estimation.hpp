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

#include <Eigen/Dense>

#include "cfisac/channel.hpp"
#include "cfisac/config.hpp"
#include "cfisac/rng.hpp"

namespace cfisac
{

struct EstimationModel
{
    Eigen::MatrixXd gamma;     // n_cap x K
    Eigen::MatrixXd gamma_sap; // (n_sap_tx + n_sap_rx) x K, pseudo qualities for the literal SI_s variant
    double tau_rho_p = 0.0;
    double tau_rho_p_pm = 0.0;
};

// MMSE estimation quality. UE index 0 is the suspicious UE whose pilot the monitor spoofs.
double gamma_mk(double beta_mk, double beta_m_pm, double tau_rho_p, double tau_rho_p_pm, bool is_suspicious);

// spoofing = false models an absent monitor (no spoofing pilot).
EstimationModel estimate_qualities(const SystemConfig &cfg, const LargeScale &ls, bool spoofing = true);

struct EstimateSplit
{
    Eigen::VectorXcd hat;
    Eigen::VectorXcd err;
};

// Splits a drawn channel g ~ CN(0, beta I) into independent estimate and error parts:
// hat = (gamma / beta) g + w with w ~ CN(0, gamma (beta - gamma) / beta I), err = g - hat.
EstimateSplit split_estimate(const Eigen::VectorXcd &g, double beta, double gamma, Rng &rng);

// Joint draw used by the oracle: hat ~ CN(0, gamma I), err ~ CN(0, (beta - gamma) I).
EstimateSplit draw_estimate_pair(int n, double beta, double gamma, Rng &rng);

} // namespace cfisac
