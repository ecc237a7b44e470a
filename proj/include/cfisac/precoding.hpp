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

#include <stdexcept>

#include <Eigen/Dense>

#include "cfisac/channel.hpp"
#include "cfisac/config.hpp"
#include "cfisac/estimation.hpp"

namespace cfisac
{

struct PowerAllocation
{
    Eigen::MatrixXd eta_c; // n_cap x K
    Eigen::VectorXd eta_s; // n_sap_tx
    double eta_pm_t = 0.0;
    double eta_pm_1 = 0.0;
    double rho_c = 0.0;
    double rho_s = 0.0;
    double rho_p = 0.0;
    double rho_pm = 0.0;
};

class DegenerateConfigError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Full-power coefficients: eta_c = 1/(N sum_k gamma_mk), eta_s = 1/(N zeta_m't), and the
// monitor coefficients from N_pm eta_pm_t zeta_pm_t = theta_pm_t, N_pm eta_pm_1 beta_pm_1 = theta_pm_1.
PowerAllocation full_power_coefficients(const LargeScale &ls, const EstimationModel &est, const SystemConfig &cfg);

// Conjugate precoders for one realization.
struct PrecoderSet
{
    Eigen::MatrixXcd cap; // N x (n_cap*K), conj(g_hat)
    Eigen::MatrixXcd sap; // N x n_sap_tx, conj(h_{m',t})
    Eigen::VectorXcd pm_t; // conj(h_{pm,t})
    Eigen::VectorXcd pm_1; // conj(g_{pm,1}), the monitor knows its channel to UE 1
};

PrecoderSet precoders(const ChannelRealization &ch);

} // namespace cfisac
