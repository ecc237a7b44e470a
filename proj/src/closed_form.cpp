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

#include "cfisac/closed_form.hpp"

#include <cmath>
#include <stdexcept>

#include "cfisac/numeric.hpp"

namespace cfisac
{

std::string ReceiverId::label() const
{
    switch (kind)
    {
    case ReceiverKind::monitor:
        return "monitor";
    case ReceiverKind::ue:
        return "ue" + std::to_string(ue + 1);
    case ReceiverKind::cpu:
        return "cpu";
    }
    return "?";
}

ReceiverId parse_receiver(std::string_view label, int n_ue)
{
    if (label == "monitor")
        return ReceiverId::monitor();
    if (label == "cpu")
        return ReceiverId::cpu();
    if (label.size() > 2 && label.substr(0, 2) == "ue")
    {
        int k = 0;
        for (char c : label.substr(2))
        {
            if (c < '0' || c > '9')
                throw std::invalid_argument("unknown receiver label '" + std::string(label) + "'");
            k = 10 * k + (c - '0');
        }
        if (k >= 1 && k <= n_ue)
            return ReceiverId::user(k - 1);
    }
    throw std::invalid_argument("unknown receiver label '" + std::string(label) + "'");
}

double SinrBreakdown::term(std::string_view name) const
{
    if (name == "DS")
        return desired_mean;
    for (const auto &t : terms)
        if (t.name == name)
            return t.value;
    throw std::out_of_range("no term '" + std::string(name) + "' in breakdown " + label);
}

double SinrBreakdown::denominator() const
{
    std::vector<double> v;
    for (const auto &t : terms)
        v.push_back(t.value);
    return stable_sum(std::move(v));
}

const std::vector<std::string> &term_names(ReceiverKind kind)
{
    static const std::vector<std::string> monitor{"BU", "IC", "IS", "SI_s", "SI_c", "n"};
    static const std::vector<std::string> ue{"BU", "IUI", "IS", "JS_s", "JS_c", "n"};
    static const std::vector<std::string> cpu{"BU", "IC", "JS_s", "JS_c", "n"};
    switch (kind)
    {
    case ReceiverKind::monitor:
        return monitor;
    case ReceiverKind::ue:
        return ue;
    case ReceiverKind::cpu:
        return cpu;
    }
    return monitor;
}

namespace
{

void check_shapes(const LargeScale &ls, const EstimationModel &est, const PowerAllocation &pa,
                  const SystemConfig &cfg)
{
    const bool ok = ls.beta_cap_ue.rows() == cfg.n_cap && ls.beta_cap_ue.cols() == cfg.n_ue &&
                    est.gamma.rows() == cfg.n_cap && est.gamma.cols() == cfg.n_ue &&
                    pa.eta_c.rows() == cfg.n_cap && pa.eta_c.cols() == cfg.n_ue &&
                    pa.eta_s.size() == cfg.n_sap_tx && ls.zeta_stx_t.size() == cfg.n_sap_tx &&
                    ls.zeta_t_srx.size() == cfg.n_sap_rx && ls.beta_pm_ue.size() == cfg.n_ue &&
                    ls.beta_cap_srx.rows() == cfg.n_cap && ls.beta_cap_srx.cols() == cfg.n_sap_rx;
    if (!ok)
        throw std::invalid_argument("closed form: inputs do not match the config dimensions");
}

SinrBreakdown finish(std::string label, double ds, std::vector<Term> terms)
{
    SinrBreakdown b;
    b.label = std::move(label);
    b.desired_mean = ds;
    b.numerator = ds * ds;
    b.terms = std::move(terms);
    const double den = b.denominator();
    if (den > 0.0)
        b.sinr = b.numerator / den;
    else if (b.numerator == 0.0)
        b.sinr = 0.0;
    else
        throw std::domain_error("closed form: zero denominator with nonzero desired signal (" + b.label + ")");
    return b;
}

// Quantities shared by the sensing-related terms.
struct SensingSums
{
    double S = 0.0;  // sum_m' sqrt(eta_m') zeta_m',t
    double D = 0.0;  // sum_m' eta_m' zeta_m',t^2 (diagonal part, literal forms only)
    double Zr = 0.0; // sum_m'' zeta_t,m''
};

SensingSums sensing_sums(const LargeScale &ls, const PowerAllocation &pa)
{
    CompensatedSum s, d, z;
    for (Eigen::Index m = 0; m < pa.eta_s.size(); ++m)
    {
        s.add(std::sqrt(pa.eta_s(m)) * ls.zeta_stx_t(m));
        d.add(pa.eta_s(m) * ls.zeta_stx_t(m) * ls.zeta_stx_t(m));
    }
    for (Eigen::Index r = 0; r < ls.zeta_t_srx.size(); ++r)
        z.add(ls.zeta_t_srx(r));
    return {s.value(), d.value(), z.value()};
}

} // namespace

SinrBreakdown sinr_monitor(const LargeScale &ls, const EstimationModel &est, const PowerAllocation &pa,
                           const SystemConfig &cfg, FormVariant variant)
{
    check_shapes(ls, est, pa, cfg);
    const bool printed = variant == FormVariant::as_printed;
    const double N = cfg.n_ant_ap, Np = cfg.n_ant_pm;
    const int Mc = cfg.n_cap, K = cfg.n_ue;
    const double rc = pa.rho_c, rs = pa.rho_s, rpm = pa.rho_pm;
    const double alpha = ls.alpha_refl, zp = ls.zeta_pm_t, si = ls.beta_pm_pm, bp1 = ls.beta_pm_ue(0);

    // q_m = eta_m1 beta_m,pm gamma_m1
    Eigen::VectorXd q(Mc);
    CompensatedSum qs, q2s;
    for (int m = 0; m < Mc; ++m)
    {
        q(m) = pa.eta_c(m, 0) * ls.beta_cap_pm(m) * est.gamma(m, 0);
        qs.add(q(m));
        q2s.add(q(m) * q(m));
    }
    const double Q = qs.value(), Q2 = q2s.value();

    const double ds = rc * N * Np * Q;

    double bu;
    if (printed)
        bu = rc * rc * N * N * Np * (1.0 + Np) * (Q2 + Q * Q) - ds * ds;
    else
        bu = rc * rc * (Np * N * N * Q * Q + Np * (Np + 1.0) * N * Q2);

    CompensatedSum ic;
    for (int kk = 1; kk < K; ++kk)
        for (int m = 0; m < Mc; ++m)
        {
            const double cross = printed ? N * Q : N * (Q - q(m));
            ic.add(pa.eta_c(m, kk) * rc * rc * Np * N * est.gamma(m, kk) * ls.beta_cap_pm(m) *
                   (pa.eta_c(m, 0) * (Np + N) * ls.beta_cap_pm(m) * est.gamma(m, 0) + cross));
        }

    const SensingSums ss = sensing_sums(ls, pa);
    CompensatedSum direct;
    for (int s = 0; s < cfg.n_sap_tx; ++s)
        direct.add(pa.eta_s(s) * ls.zeta_stx_t(s) * ls.beta_stx_pm(s));
    const double coherent = printed ? ss.D + ss.S * ss.S : ss.S * ss.S;
    const double is = rs * rc * Np * N * N * Q * (direct.value() + alpha * N * zp * coherent);

    double q_si = Q;
    if (printed)
    {
        // Sum over the sensing APs with pseudo qualities and full-power coefficients.
        CompensatedSum qsap;
        const int Ms = cfg.n_sap_tx + cfg.n_sap_rx;
        for (int s = 0; s < Ms; ++s)
        {
            const double gsum = est.gamma_sap.row(s).sum();
            const double eta1 = gsum > 0.0 ? 1.0 / (N * gsum) : 0.0;
            const double beta_pm = s < cfg.n_sap_tx ? ls.beta_stx_pm(s) : ls.beta_srx_pm(s - cfg.n_sap_tx);
            qsap.add(eta1 * beta_pm * est.gamma_sap(s, 0));
        }
        q_si = qsap.value();
    }
    const double si_s = pa.eta_pm_t * rpm * rc * zp * Np * Np * N * q_si * (si + alpha * Np * zp * zp);
    const double si_c = pa.eta_pm_1 * rc * rpm * N * Np * Np * bp1 * Q * (si + alpha * zp * zp);
    const double noise = rc * N * Np * Q;

    return finish("monitor", ds,
                  {{"BU", bu}, {"IC", ic.value()}, {"IS", is}, {"SI_s", si_s}, {"SI_c", si_c}, {"n", noise}});
}

SinrBreakdown sinr_ue(int k, const LargeScale &ls, const EstimationModel &est, const PowerAllocation &pa,
                      const SystemConfig &cfg, FormVariant variant)
{
    check_shapes(ls, est, pa, cfg);
    if (k < 0 || k >= cfg.n_ue)
        throw std::out_of_range("sinr_ue: UE index " + std::to_string(k) + " out of range");
    const bool printed = variant == FormVariant::as_printed;
    const double N = cfg.n_ant_ap, Np = cfg.n_ant_pm;
    const int Mc = cfg.n_cap, K = cfg.n_ue;
    const double rc = pa.rho_c, rs = pa.rho_s, rpm = pa.rho_pm;
    const double alpha = ls.alpha_refl, zp = ls.zeta_pm_t, ztk = ls.zeta_t_ue(k);
    const double bp1 = ls.beta_pm_ue(0), bpk = ls.beta_pm_ue(k);

    CompensatedSum ds, bu, iui;
    for (int m = 0; m < Mc; ++m)
    {
        ds.add(std::sqrt(pa.eta_c(m, k) * rc) * N * est.gamma(m, k));
        bu.add(rc * N * pa.eta_c(m, k) * est.gamma(m, k) * ls.beta_cap_ue(m, k));
        for (int kk = 0; kk < K; ++kk)
            if (kk != k)
                iui.add(pa.eta_c(m, kk) * rc * N * est.gamma(m, kk) * ls.beta_cap_ue(m, k));
    }

    const SensingSums ss = sensing_sums(ls, pa);
    CompensatedSum is;
    if (printed)
    {
        for (int s = 0; s < cfg.n_sap_tx; ++s)
        {
            const double zs = ls.zeta_stx_t(s);
            is.add(std::sqrt(pa.eta_s(s)) * rs * zs * N *
                   (ls.beta_stx_ue(s, k) + alpha * zs * ztk * N + ss.S * ztk * alpha * N));
        }
    }
    else
    {
        for (int s = 0; s < cfg.n_sap_tx; ++s)
            is.add(rs * N * pa.eta_s(s) * ls.beta_stx_ue(s, k) * ls.zeta_stx_t(s));
        is.add(rs * alpha * ztk * N * N * ss.S * ss.S);
    }

    const double js_s = pa.eta_pm_t * rpm * (bpk * zp * Np + alpha * ztk * Np * Np * zp * zp);
    double js_c;
    if (printed)
        js_c = pa.eta_pm_1 * rpm * Np * bp1 * (Np * bp1 + bp1 + alpha * ztk * zp);
    else
        js_c = pa.eta_pm_1 * rpm * Np * bp1 * ((k == 0 ? (Np + 1.0) * bp1 : bpk) + alpha * ztk * zp);

    return finish("ue" + std::to_string(k + 1), ds.value(),
                  {{"BU", bu.value()},
                   {"IUI", iui.value()},
                   {"IS", is.value()},
                   {"JS_s", js_s},
                   {"JS_c", js_c},
                   {"n", 1.0}});
}

SinrBreakdown sinr_cpu(const LargeScale &ls, const EstimationModel &est, const PowerAllocation &pa,
                       const SystemConfig &cfg, FormVariant variant)
{
    check_shapes(ls, est, pa, cfg);
    const bool printed = variant == FormVariant::as_printed;
    const double N = cfg.n_ant_ap, Np = cfg.n_ant_pm;
    const double N3 = N * N * N;
    const double rc = pa.rho_c, rs = pa.rho_s, rpm = pa.rho_pm;
    const double alpha = ls.alpha_refl, zp = ls.zeta_pm_t, bp1 = ls.beta_pm_ue(0);

    const SensingSums ss = sensing_sums(ls, pa);
    const double coherent = printed ? ss.D + ss.S * ss.S : ss.S * ss.S;

    const double ds = rs * alpha * N3 * ss.Zr * coherent;

    // sum_m (sum_k eta_mk gamma_mk) sum_m'' beta_m,m'' zeta_t,m''
    CompensatedSum w;
    for (int m = 0; m < cfg.n_cap; ++m)
    {
        CompensatedSum eg, bz;
        for (int k = 0; k < cfg.n_ue; ++k)
            eg.add(pa.eta_c(m, k) * est.gamma(m, k));
        for (int r = 0; r < cfg.n_sap_rx; ++r)
            bz.add(ls.beta_cap_srx(m, r) * ls.zeta_t_srx(r));
        w.add(eg.value() * bz.value());
    }
    const double ic = rc * rs * N3 * N * coherent * w.value() * (printed ? 1.0 : alpha);

    double js_s, js_c;
    if (printed)
    {
        CompensatedSum a, b;
        for (int r = 0; r < cfg.n_sap_rx; ++r)
        {
            const double zr = ls.zeta_t_srx(r);
            a.add(zr * (ls.beta_pm_srx(r) + alpha * zp * zr * N * Np));
            b.add(zr * (ls.beta_pm_srx(r) + alpha * N * zp * zr));
        }
        js_s = pa.eta_pm_t * rs * rpm * alpha * N3 * Np * zp * coherent * a.value();
        js_c = pa.eta_pm_1 * rpm * rs * alpha * Np * N3 * bp1 * coherent * b.value();
    }
    else
    {
        CompensatedSum direct;
        for (int r = 0; r < cfg.n_sap_rx; ++r)
            direct.add(ls.zeta_t_srx(r) * ls.beta_pm_srx(r));
        js_s = pa.eta_pm_t * rpm * rs * alpha * N3 * Np * zp * coherent *
               (direct.value() + alpha * N * Np * zp * ss.Zr * ss.Zr);
        js_c = pa.eta_pm_1 * rpm * rs * alpha * N3 * Np * bp1 * coherent *
               (direct.value() + alpha * N * zp * ss.Zr * ss.Zr);
    }
    const double noise = rs * alpha * N3 * ss.Zr * coherent;

    return finish("cpu", ds, {{"BU", 0.0}, {"IC", ic}, {"JS_s", js_s}, {"JS_c", js_c}, {"n", noise}});
}

SinrBreakdown sinr_for(ReceiverId rx, const LargeScale &ls, const EstimationModel &est, const PowerAllocation &pa,
                       const SystemConfig &cfg, FormVariant variant)
{
    switch (rx.kind)
    {
    case ReceiverKind::monitor:
        return sinr_monitor(ls, est, pa, cfg, variant);
    case ReceiverKind::ue:
        return sinr_ue(rx.ue, ls, est, pa, cfg, variant);
    case ReceiverKind::cpu:
        return sinr_cpu(ls, est, pa, cfg, variant);
    }
    throw std::invalid_argument("unknown receiver");
}

std::string_view correction_note(ReceiverKind kind, std::string_view term)
{
    struct Note
    {
        ReceiverKind kind;
        std::string_view term;
        std::string_view text;
    };
    static constexpr Note notes[] = {
        {ReceiverKind::monitor, "BU",
         "diagonal term uses N (E||g_hat||^4 = N(N+1) gamma^2), printed N^2"},
        {ReceiverKind::monitor, "IC", "cross-AP sum must exclude m~ = m; printed includes it"},
        {ReceiverKind::monitor, "IS",
         "coherent probing factor is S^2 with S = sum sqrt(eta) zeta; printed adds the diagonal again"},
        {ReceiverKind::monitor, "SI_s", "sum over the C-APs (as derived); printed sums over the S-APs"},
        {ReceiverKind::ue, "IS",
         "rho_s (N sum eta beta zeta + alpha zeta_t,k N^2 S^2); printed misses one sqrt(eta) and adds the "
         "diagonal again"},
        {ReceiverKind::ue, "JS_c", "uses beta_pm,k for k != 1 and (N_pm + 1) beta_pm,1 for k = 1; printed always "
                                   "uses beta_pm,1"},
        {ReceiverKind::cpu, "DS", "coherent probing factor S^2; printed adds the diagonal again"},
        {ReceiverKind::cpu, "IC", "carries the reflection gain alpha of the combiner and the factor S^2"},
        {ReceiverKind::cpu, "JS_s",
         "reflected jamming adds coherently over receivers: (sum zeta_t,m'')^2; factor S^2"},
        {ReceiverKind::cpu, "JS_c",
         "reflected jamming adds coherently over receivers: (sum zeta_t,m'')^2; factor S^2"},
        {ReceiverKind::cpu, "n", "coherent probing factor S^2; printed adds the diagonal again"},
    };
    for (const auto &n : notes)
        if (n.kind == kind && n.term == term)
            return n.text;
    return {};
}

} // namespace cfisac
