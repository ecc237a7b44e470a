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

#include "cfisac/estimation.hpp"

#include <stdexcept>

namespace cfisac
{

namespace
{

void check_split(double beta, double gamma)
{
    if (!(gamma > 0.0) || !(gamma < beta))
        throw std::domain_error("estimate split needs 0 < gamma < beta");
}

} // namespace

double gamma_mk(double beta_mk, double beta_m_pm, double tau_rho_p, double tau_rho_p_pm, bool is_suspicious)
{
    double denom = tau_rho_p * beta_mk + 1.0;
    if (is_suspicious)
        denom += tau_rho_p_pm * beta_m_pm;
    return tau_rho_p * beta_mk * beta_mk / denom;
}

EstimationModel estimate_qualities(const SystemConfig &cfg, const LargeScale &ls, bool spoofing)
{
    EstimationModel est;
    const double rho_p = normalized_snr(cfg.p_p, cfg);
    est.tau_rho_p = cfg.tau_p * rho_p;
    est.tau_rho_p_pm = spoofing ? cfg.tau_p * cfg.rho_p_pm_scale * rho_p : 0.0;

    const int K = cfg.n_ue;
    est.gamma.resize(cfg.n_cap, K);
    for (int m = 0; m < cfg.n_cap; ++m)
        for (int k = 0; k < K; ++k)
            est.gamma(m, k) =
                gamma_mk(ls.beta_cap_ue(m, k), ls.beta_cap_pm(m), est.tau_rho_p, est.tau_rho_p_pm, k == 0);

    est.gamma_sap.resize(cfg.n_sap_tx + cfg.n_sap_rx, K);
    for (int s = 0; s < cfg.n_sap_tx; ++s)
        for (int k = 0; k < K; ++k)
            est.gamma_sap(s, k) =
                gamma_mk(ls.beta_stx_ue(s, k), ls.beta_stx_pm(s), est.tau_rho_p, est.tau_rho_p_pm, k == 0);
    for (int r = 0; r < cfg.n_sap_rx; ++r)
        for (int k = 0; k < K; ++k)
            est.gamma_sap(cfg.n_sap_tx + r, k) =
                gamma_mk(ls.beta_srx_ue(r, k), ls.beta_srx_pm(r), est.tau_rho_p, est.tau_rho_p_pm, k == 0);
    return est;
}

EstimateSplit split_estimate(const Eigen::VectorXcd &g, double beta, double gamma, Rng &rng)
{
    check_split(beta, gamma);
    Gaussian gauss(rng);
    const double w_var = gamma * (beta - gamma) / beta;
    EstimateSplit out;
    out.hat.resize(g.size());
    for (Eigen::Index n = 0; n < g.size(); ++n)
        out.hat(n) = (gamma / beta) * g(n) + gauss.complex(w_var);
    out.err = g - out.hat;
    return out;
}

EstimateSplit draw_estimate_pair(int n, double beta, double gamma, Rng &rng)
{
    check_split(beta, gamma);
    Gaussian gauss(rng);
    EstimateSplit out;
    out.hat.resize(n);
    out.err.resize(n);
    for (int i = 0; i < n; ++i)
    {
        out.hat(i) = gauss.complex(gamma);
        out.err(i) = gauss.complex(beta - gamma);
    }
    return out;
}

} // namespace cfisac
