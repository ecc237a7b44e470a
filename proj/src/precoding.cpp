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

#include "cfisac/precoding.hpp"

namespace cfisac
{

PowerAllocation full_power_coefficients(const LargeScale &ls, const EstimationModel &est, const SystemConfig &cfg)
{
    const int N = cfg.n_ant_ap;
    PowerAllocation pa;
    pa.eta_c.resize(est.gamma.rows(), est.gamma.cols());
    for (Eigen::Index m = 0; m < est.gamma.rows(); ++m)
    {
        const double sum = est.gamma.row(m).sum();
        if (!(sum > 0.0))
            throw DegenerateConfigError("full_power_coefficients: zero estimation-quality sum at C-AP " +
                                        std::to_string(m));
        pa.eta_c.row(m).setConstant(1.0 / (N * sum));
    }
    pa.eta_s = (1.0 / (N * ls.zeta_stx_t.array())).matrix();
    pa.eta_pm_t = cfg.theta_pm_t / (cfg.n_ant_pm * ls.zeta_pm_t);
    pa.eta_pm_1 = cfg.theta_pm_1 / (cfg.n_ant_pm * ls.beta_pm_ue(0));

    pa.rho_c = normalized_snr(cfg.p_c, cfg);
    pa.rho_s = normalized_snr(cfg.p_s, cfg);
    pa.rho_p = normalized_snr(cfg.p_p, cfg);
    pa.rho_pm = normalized_snr(cfg.p_pm, cfg);
    return pa;
}

PrecoderSet precoders(const ChannelRealization &ch)
{
    PrecoderSet w;
    w.cap = ch.g_hat.conjugate();
    w.sap = ch.los.stx_t.conjugate();
    w.pm_t = ch.los.pm_t.conjugate();
    w.pm_1 = ch.g_pm_ue.col(0).conjugate();
    return w;
}

} // namespace cfisac
