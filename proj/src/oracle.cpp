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

#include "cfisac/oracle.hpp"

#include <cmath>

#include <omp.h>

#include "cfisac/numeric.hpp"
#include "cfisac/precoding.hpp"

namespace cfisac
{

using cd = std::complex<double>;

void set_thread_count(int n)
{
    if (n > 0)
        omp_set_num_threads(n);
}

int thread_count() { return omp_get_max_threads(); }

const TermEstimate &find_term(const TermMap &map, std::string_view name)
{
    for (const auto &[k, v] : map)
        if (k == name)
            return v;
    throw std::out_of_range("no term '" + std::string(name) + "'");
}

namespace
{

// Effective monitor channel of every user symbol: column j = sum_m sqrt(eta_mj rho_c) G_m,pm^T conj(g_hat_mj).
Eigen::MatrixXcd monitor_user_channels(const Scenario &sc, const ChannelRealization &ch)
{
    const auto &cfg = sc.cfg;
    const int K = cfg.n_ue, Np = cfg.n_ant_pm;
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(Np, K);
    Eigen::VectorXd amp(K);
    for (int m = 0; m < cfg.n_cap; ++m)
    {
        for (int j = 0; j < K; ++j)
            amp(j) = std::sqrt(sc.pa.eta_c(m, j) * sc.pa.rho_c);
        E.noalias() += ch.G_cap_pm.middleCols(m * Np, Np).transpose() *
                       (ch.g_hat.middleCols(m * K, K).conjugate() * amp.asDiagonal());
    }
    return E;
}

// sum_m' sqrt(eta_m' rho_s) ||h_m',t||^2, the probing amplitude reflected by the target.
double probing_amplitude(const Scenario &sc, const ChannelRealization &ch)
{
    CompensatedSum s;
    for (int m = 0; m < sc.cfg.n_sap_tx; ++m)
        s.add(std::sqrt(sc.pa.eta_s(m) * sc.pa.rho_s) * ch.los.stx_t.col(m).squaredNorm());
    return s.value();
}

} // namespace

Combiners combiners(const Scenario &sc, const ChannelRealization &ch)
{
    Combiners w;
    w.a = monitor_user_channels(sc, ch).col(0);
    w.b = std::sqrt(sc.ls.alpha_refl) * probing_amplitude(sc, ch) * ch.los.t_srx;
    return w;
}

TrialCoefficients extract_coefficients(const Scenario &sc, const ChannelRealization &ch)
{
    const auto &cfg = sc.cfg;
    const auto &pa = sc.pa;
    const int K = cfg.n_ue, N = cfg.n_ant_ap, Np = cfg.n_ant_pm;
    const int Mc = cfg.n_cap, Mt = cfg.n_sap_tx, Mr = cfg.n_sap_rx;
    const double sa = std::sqrt(sc.ls.alpha_refl);
    const auto &h_pm = ch.los.pm_t;
    const Eigen::VectorXcd g_pm1 = ch.g_pm_ue.col(0);
    const double amp_pt = std::sqrt(pa.eta_pm_t * pa.rho_pm);
    const double amp_p1 = std::sqrt(pa.eta_pm_1 * pa.rho_pm);
    const double probe = probing_amplitude(sc, ch);
    const double h_pm_sq = h_pm.squaredNorm();
    const cd h_pm_g1 = h_pm.transpose() * g_pm1.conjugate();

    TrialCoefficients c;

    // Monitor.
    const Eigen::MatrixXcd E = monitor_user_channels(sc, ch);
    const Eigen::VectorXcd a = E.col(0);
    c.mon_user = (a.adjoint() * E).transpose();
    Eigen::VectorXcd d_t = sa * probe * h_pm;
    for (int m = 0; m < Mt; ++m)
        d_t.noalias() += std::sqrt(pa.eta_s(m) * pa.rho_s) *
                         (ch.G_stx_pm.middleCols(m * Np, Np).transpose() * ch.los.stx_t.col(m).conjugate());
    c.mon_sens = a.dot(d_t);
    const Eigen::VectorXcd e_pt = amp_pt * (ch.G_pm_pm.transpose() * h_pm.conjugate() + sa * h_pm_sq * h_pm);
    const Eigen::VectorXcd e_p1 = amp_p1 * (ch.G_pm_pm.transpose() * g_pm1.conjugate() + sa * h_pm_g1 * h_pm);
    c.mon_jam_t = a.dot(e_pt);
    c.mon_jam_1 = a.dot(e_p1);
    c.mon_noise = a.squaredNorm();

    // UEs.
    c.ue_user = Eigen::MatrixXcd::Zero(K, K);
    Eigen::VectorXd amp(K);
    for (int m = 0; m < Mc; ++m)
    {
        for (int j = 0; j < K; ++j)
            amp(j) = std::sqrt(pa.eta_c(m, j) * pa.rho_c);
        c.ue_user.noalias() += ch.g.middleCols(m * K, K).transpose() *
                               (ch.g_hat.middleCols(m * K, K).conjugate() * amp.asDiagonal());
    }
    c.ue_sens.resize(K);
    c.ue_jam_t.resize(K);
    c.ue_jam_1.resize(K);
    for (int k = 0; k < K; ++k)
    {
        const cd htk = ch.los.t_ue(k);
        cd s = sa * htk * probe;
        for (int m = 0; m < Mt; ++m)
            s += std::sqrt(pa.eta_s(m) * pa.rho_s) *
                 cd(ch.g_stx_ue.col(m * K + k).transpose() * ch.los.stx_t.col(m).conjugate());
        c.ue_sens(k) = s;
        const auto gk = ch.g_pm_ue.col(k);
        c.ue_jam_t(k) = amp_pt * (cd(gk.transpose() * h_pm.conjugate()) + sa * htk * h_pm_sq);
        c.ue_jam_1(k) = amp_p1 * (cd(gk.transpose() * g_pm1.conjugate()) + sa * htk * h_pm_g1);
    }

    // CPU.
    const Eigen::MatrixXcd b = sa * probe * ch.los.t_srx;
    c.cpu_user = Eigen::VectorXcd::Zero(K);
    for (int m = 0; m < Mc; ++m)
    {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N);
        for (int r = 0; r < Mr; ++r)
            v.noalias() += ch.G_cap_srx.middleCols((m * Mr + r) * N, N) * b.col(r).conjugate();
        for (int j = 0; j < K; ++j)
            c.cpu_user(j) += std::sqrt(pa.eta_c(m, j) * pa.rho_c) *
                             cd(v.transpose() * ch.g_hat.col(m * K + j).conjugate());
    }
    cd bh = 0.0, jt = 0.0, j1 = 0.0;
    for (int r = 0; r < Mr; ++r)
    {
        const auto br = b.col(r);
        const cd b_h = br.dot(ch.los.t_srx.col(r));
        bh += b_h;
        const auto Gpr = ch.G_pm_srx.middleCols(r * N, N);
        jt += br.dot(Gpr.transpose() * h_pm.conjugate());
        j1 += br.dot(Gpr.transpose() * g_pm1.conjugate());
    }
    c.cpu_sens = sa * probe * bh;
    c.cpu_jam_t = amp_pt * (jt + sa * h_pm_sq * bh);
    c.cpu_jam_1 = amp_p1 * (j1 + sa * h_pm_g1 * bh);
    c.cpu_noise = b.squaredNorm();
    return c;
}

RawSignals simulate_trial(const Scenario &sc, Rng &rng)
{
    const auto &cfg = sc.cfg;
    const auto &pa = sc.pa;
    const int K = cfg.n_ue, N = cfg.n_ant_ap, Np = cfg.n_ant_pm;
    const int Mc = cfg.n_cap, Mt = cfg.n_sap_tx, Mr = cfg.n_sap_rx;
    const double sa = std::sqrt(sc.ls.alpha_refl);

    RawSignals raw;
    raw.ch = draw_small_scale(cfg, sc.ls, sc.est.gamma, sc.los, rng);
    const auto &ch = raw.ch;
    const PrecoderSet w = precoders(ch);

    Gaussian gauss(rng);
    raw.s_user.resize(K);
    for (int k = 0; k < K; ++k)
        raw.s_user(k) = gauss.complex(1.0);
    raw.s_t = gauss.complex(1.0);
    raw.s_pm_t = gauss.complex(1.0);
    raw.s_pm_1 = gauss.complex(1.0);

    // Transmit signals.
    raw.x_cap = Eigen::MatrixXcd::Zero(N, Mc);
    for (int m = 0; m < Mc; ++m)
        for (int k = 0; k < K; ++k)
            raw.x_cap.col(m) += std::sqrt(pa.eta_c(m, k) * pa.rho_c) * w.cap.col(m * K + k) * raw.s_user(k);
    raw.x_stx.resize(N, Mt);
    for (int m = 0; m < Mt; ++m)
        raw.x_stx.col(m) = std::sqrt(pa.eta_s(m) * pa.rho_s) * w.sap.col(m) * raw.s_t;
    raw.x_pm = std::sqrt(pa.eta_pm_t * pa.rho_pm) * w.pm_t * raw.s_pm_t +
               std::sqrt(pa.eta_pm_1 * pa.rho_pm) * w.pm_1 * raw.s_pm_1;

    raw.n_ue.resize(K);
    for (int k = 0; k < K; ++k)
        raw.n_ue(k) = gauss.complex(1.0);
    raw.n_pm.resize(Np);
    for (int p = 0; p < Np; ++p)
        raw.n_pm(p) = gauss.complex(1.0);
    raw.n_srx.resize(N, Mr);
    for (int r = 0; r < Mr; ++r)
        for (int n = 0; n < N; ++n)
            raw.n_srx(n, r) = gauss.complex(1.0);

    // Target echo amplitude: sum_m' h_m',t^T x_m',t, re-radiated with gain sqrt(alpha).
    cd echo = 0.0;
    for (int m = 0; m < Mt; ++m)
        echo += ch.los.stx_t.col(m).cwiseProduct(raw.x_stx.col(m)).sum();
    const cd pm_echo = ch.los.pm_t.cwiseProduct(raw.x_pm).sum();

    // UEs.
    raw.y_ue.resize(K);
    for (int k = 0; k < K; ++k)
    {
        cd y = raw.n_ue(k);
        for (int m = 0; m < Mc; ++m)
            y += ch.g.col(m * K + k).cwiseProduct(raw.x_cap.col(m)).sum();
        for (int m = 0; m < Mt; ++m)
            y += ch.g_stx_ue.col(m * K + k).cwiseProduct(raw.x_stx.col(m)).sum();
        y += sa * ch.los.t_ue(k) * echo;
        y += ch.g_pm_ue.col(k).cwiseProduct(raw.x_pm).sum();
        y += sa * ch.los.t_ue(k) * pm_echo;
        raw.y_ue(k) = y;
    }

    // Monitor (full duplex: own jamming leaks through the self-interference channel).
    raw.y_pm = raw.n_pm;
    for (int m = 0; m < Mc; ++m)
        raw.y_pm += ch.G_cap_pm.middleCols(m * Np, Np).transpose() * raw.x_cap.col(m);
    for (int m = 0; m < Mt; ++m)
        raw.y_pm += ch.G_stx_pm.middleCols(m * Np, Np).transpose() * raw.x_stx.col(m);
    raw.y_pm += sa * ch.los.pm_t * echo;
    raw.y_pm += ch.G_pm_pm.transpose() * raw.x_pm;
    raw.y_pm += sa * ch.los.pm_t * pm_echo;

    // S-AP receivers after the cooperating S-APs cancel their mutual direct links.
    raw.y_srx = raw.n_srx;
    for (int r = 0; r < Mr; ++r)
    {
        raw.y_srx.col(r) += sa * ch.los.t_srx.col(r) * echo;
        for (int m = 0; m < Mc; ++m)
            raw.y_srx.col(r) += ch.G_cap_srx.middleCols((m * Mr + r) * N, N).transpose() * raw.x_cap.col(m);
        raw.y_srx.col(r) += ch.G_pm_srx.middleCols(r * N, N).transpose() * raw.x_pm;
        raw.y_srx.col(r) += sa * ch.los.t_srx.col(r) * pm_echo;
    }

    const Combiners comb = combiners(sc, ch);
    raw.z_pm = comb.a.dot(raw.y_pm);
    raw.z_cpu = 0.0;
    for (int r = 0; r < Mr; ++r)
        raw.z_cpu += comb.b.col(r).dot(raw.y_srx.col(r));
    return raw;
}

std::vector<Bookkeeping> bookkeeping(const Scenario &sc, const RawSignals &raw)
{
    const auto &cfg = sc.cfg;
    const auto &pa = sc.pa;
    const auto &ch = raw.ch;
    const int K = cfg.n_ue, N = cfg.n_ant_ap, Np = cfg.n_ant_pm;
    const int Mc = cfg.n_cap, Mt = cfg.n_sap_tx, Mr = cfg.n_sap_rx;
    const double sa = std::sqrt(sc.ls.alpha_refl);
    const TrialCoefficients c = extract_coefficients(sc, ch);
    const Combiners comb = combiners(sc, ch);
    const PrecoderSet w = precoders(ch);

    // Stacked transmit model x = P s over s = [s_1..s_K, s_t, s_pm,t, s_pm,1].
    const int T = (Mc + Mt) * N + Np;
    const int J = K + 3;
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(T, J);
    for (int m = 0; m < Mc; ++m)
        for (int k = 0; k < K; ++k)
            P.block(m * N, k, N, 1) = std::sqrt(pa.eta_c(m, k) * pa.rho_c) * w.cap.col(m * K + k);
    for (int m = 0; m < Mt; ++m)
        P.block((Mc + m) * N, K, N, 1) = std::sqrt(pa.eta_s(m) * pa.rho_s) * w.sap.col(m);
    P.block((Mc + Mt) * N, K + 1, Np, 1) = std::sqrt(pa.eta_pm_t * pa.rho_pm) * w.pm_t;
    P.block((Mc + Mt) * N, K + 2, Np, 1) = std::sqrt(pa.eta_pm_1 * pa.rho_pm) * w.pm_1;

    Eigen::VectorXcd s(J);
    s << raw.s_user, raw.s_t, raw.s_pm_t, raw.s_pm_1;

    const auto power_of = [&](const Eigen::MatrixXcd &H, const Eigen::VectorXcd &v) {
        const Eigen::VectorXcd u = P.adjoint() * (H.adjoint() * v);
        return u.squaredNorm() + v.squaredNorm();
    };
    const auto amp_err = [](cd z, const Eigen::VectorXcd &coef, const Eigen::VectorXcd &sym, cd noise) {
        cd rec = noise;
        double scale = std::abs(noise);
        for (Eigen::Index j = 0; j < coef.size(); ++j)
        {
            rec += coef(j) * sym(j);
            scale += std::abs(coef(j) * sym(j));
        }
        return scale > 0.0 ? std::abs(z - rec) / scale : std::abs(z - rec);
    };
    const auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };

    std::vector<Bookkeeping> out;

    {
        Eigen::MatrixXcd H(Np, T);
        for (int m = 0; m < Mc; ++m)
            H.block(0, m * N, Np, N) = ch.G_cap_pm.middleCols(m * Np, Np).transpose();
        for (int m = 0; m < Mt; ++m)
            H.block(0, (Mc + m) * N, Np, N) = ch.G_stx_pm.middleCols(m * Np, Np).transpose() +
                                              sa * ch.los.pm_t * ch.los.stx_t.col(m).transpose();
        H.block(0, (Mc + Mt) * N, Np, Np) = ch.G_pm_pm.transpose() + sa * ch.los.pm_t * ch.los.pm_t.transpose();
        Eigen::VectorXcd coef(J);
        coef << c.mon_user, c.mon_sens, c.mon_jam_t, c.mon_jam_1;
        Bookkeeping bk;
        bk.receiver = "monitor";
        bk.amplitude_rel_err = amp_err(raw.z_pm, coef, s, comb.a.dot(raw.n_pm));
        bk.component_power = coef.squaredNorm() + c.mon_noise;
        bk.total_power = power_of(H, comb.a);
        bk.power_rel_err = rel(bk.component_power, bk.total_power);
        out.push_back(bk);
    }
    for (int k = 0; k < K; ++k)
    {
        Eigen::MatrixXcd H(1, T);
        for (int m = 0; m < Mc; ++m)
            H.block(0, m * N, 1, N) = ch.g.col(m * K + k).transpose();
        for (int m = 0; m < Mt; ++m)
            H.block(0, (Mc + m) * N, 1, N) =
                ch.g_stx_ue.col(m * K + k).transpose() + sa * ch.los.t_ue(k) * ch.los.stx_t.col(m).transpose();
        H.block(0, (Mc + Mt) * N, 1, Np) =
            ch.g_pm_ue.col(k).transpose() + sa * ch.los.t_ue(k) * ch.los.pm_t.transpose();
        Eigen::VectorXcd coef(J);
        coef << c.ue_user.row(k).transpose(), c.ue_sens(k), c.ue_jam_t(k), c.ue_jam_1(k);
        Bookkeeping bk;
        bk.receiver = ReceiverId::user(k).label();
        bk.amplitude_rel_err = amp_err(raw.y_ue(k), coef, s, raw.n_ue(k));
        bk.component_power = coef.squaredNorm() + 1.0;
        bk.total_power = power_of(H, Eigen::VectorXcd::Ones(1));
        bk.power_rel_err = rel(bk.component_power, bk.total_power);
        out.push_back(bk);
    }
    {
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(Mr * N, T);
        Eigen::VectorXcd v(Mr * N);
        cd noise = 0.0;
        for (int r = 0; r < Mr; ++r)
        {
            for (int m = 0; m < Mc; ++m)
                H.block(r * N, m * N, N, N) = ch.G_cap_srx.middleCols((m * Mr + r) * N, N).transpose();
            for (int m = 0; m < Mt; ++m)
                H.block(r * N, (Mc + m) * N, N, N) = sa * ch.los.t_srx.col(r) * ch.los.stx_t.col(m).transpose();
            H.block(r * N, (Mc + Mt) * N, N, Np) = ch.G_pm_srx.middleCols(r * N, N).transpose() +
                                                   sa * ch.los.t_srx.col(r) * ch.los.pm_t.transpose();
            v.segment(r * N, N) = comb.b.col(r);
            noise += comb.b.col(r).dot(raw.n_srx.col(r));
        }
        Eigen::VectorXcd coef(J);
        coef << c.cpu_user, c.cpu_sens, c.cpu_jam_t, c.cpu_jam_1;
        Bookkeeping bk;
        bk.receiver = "cpu";
        bk.amplitude_rel_err = amp_err(raw.z_cpu, coef, s, noise);
        bk.component_power = coef.squaredNorm() + c.cpu_noise;
        bk.total_power = power_of(H, v);
        bk.power_rel_err = rel(bk.component_power, bk.total_power);
        out.push_back(bk);
    }
    return out;
}

namespace
{

// Per-trial sample layout. Desired coefficients are stored as (re, im).
struct Layout
{
    int K;
    // monitor: ds_re ds_im IC IS SI_s SI_c n
    int mon() const { return 0; }
    // ue k: ds_re ds_im IUI IS JS_s JS_c
    int ue(int k) const { return 7 + 6 * k; }
    // cpu: ds_re ds_im IC JS_s JS_c n
    int cpu() const { return 7 + 6 * K; }
    int width() const { return 7 + 6 * K + 6; }
};

void write_sample(const TrialCoefficients &c, const Layout &L, double *row)
{
    const int K = L.K;
    double *p = row + L.mon();
    p[0] = c.mon_user(0).real();
    p[1] = c.mon_user(0).imag();
    p[2] = c.mon_user.tail(K - 1).squaredNorm();
    p[3] = std::norm(c.mon_sens);
    p[4] = std::norm(c.mon_jam_t);
    p[5] = std::norm(c.mon_jam_1);
    p[6] = c.mon_noise;
    for (int k = 0; k < K; ++k)
    {
        p = row + L.ue(k);
        p[0] = c.ue_user(k, k).real();
        p[1] = c.ue_user(k, k).imag();
        double iui = 0.0;
        for (int j = 0; j < K; ++j)
            if (j != k)
                iui += std::norm(c.ue_user(k, j));
        p[2] = iui;
        p[3] = std::norm(c.ue_sens(k));
        p[4] = std::norm(c.ue_jam_t(k));
        p[5] = std::norm(c.ue_jam_1(k));
    }
    p = row + L.cpu();
    p[0] = c.cpu_sens.real();
    p[1] = c.cpu_sens.imag();
    p[2] = c.cpu_user.squaredNorm();
    p[3] = std::norm(c.cpu_jam_t);
    p[4] = std::norm(c.cpu_jam_1);
    p[5] = c.cpu_noise;
}

using Samples = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

TermEstimate mean_of(const Samples &X, int col)
{
    const auto n = static_cast<std::size_t>(X.rows());
    // Shifted two-pass: exact zero spread for constant columns.
    const double x0 = X(0, col);
    CompensatedSum s;
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        s.add(X(i, col) - x0);
    const double md = s.value() / static_cast<double>(n);
    CompensatedSum v;
    for (Eigen::Index i = 0; i < X.rows(); ++i)
    {
        const double d = X(i, col) - x0 - md;
        v.add(d * d);
    }
    const double var = n > 1 ? v.value() / static_cast<double>(n - 1) : 0.0;
    return {x0 + md, std::sqrt(var / static_cast<double>(n)), n};
}

// Mean and spread of the desired coefficient; BU is E|c - E c|^2.
std::pair<TermEstimate, TermEstimate> desired_of(const Samples &X, int col)
{
    const auto n = static_cast<std::size_t>(X.rows());
    const double re0 = X(0, col), im0 = X(0, col + 1);
    CompensatedSum sr, si;
    for (Eigen::Index i = 0; i < X.rows(); ++i)
    {
        sr.add(X(i, col) - re0);
        si.add(X(i, col + 1) - im0);
    }
    const double mr = sr.value() / static_cast<double>(n);
    const double mi = si.value() / static_cast<double>(n);
    CompensatedSum vre, u1;
    std::vector<double> u(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i)
    {
        const double dr = X(i, col) - re0 - mr;
        const double di = X(i, col + 1) - im0 - mi;
        vre.add(dr * dr);
        u[i] = dr * dr + di * di;
        u1.add(u[i]);
    }
    const double nd = static_cast<double>(n);
    const double var_re = n > 1 ? vre.value() / (nd - 1.0) : 0.0;
    TermEstimate ds{re0 + mr, std::sqrt(var_re / nd), n};
    // Unbiased variance of the complex coefficient and the spread of its per-trial terms.
    const double bu_mean = n > 1 ? u1.value() / (nd - 1.0) : 0.0;
    const double umean = u1.value() / nd;
    CompensatedSum uv;
    for (double x : u)
        uv.add((x - umean) * (x - umean));
    const double u_var = n > 1 ? uv.value() / (nd - 1.0) : 0.0;
    TermEstimate bu{bu_mean, std::sqrt(u_var / nd), n};
    return {ds, bu};
}

TermEstimate constant(double v, std::size_t n) { return {v, 0.0, n}; }

Samples run_trials(const Scenario &sc, int n_trials, std::uint64_t seed, std::uint64_t topology_index,
                   ExecPolicy policy)
{
    const Layout L{sc.cfg.n_ue};
    Samples X(n_trials, L.width());
    const auto one = [&](int j) {
        Rng rng = make_stream(seed, StreamPurpose::trial, topology_index, static_cast<std::uint64_t>(j));
        const ChannelRealization ch = draw_small_scale(sc.cfg, sc.ls, sc.est.gamma, sc.los, rng);
        write_sample(extract_coefficients(sc, ch), L, X.row(j).data());
    };
    if (policy == ExecPolicy::parallel)
    {
#pragma omp parallel for schedule(static)
        for (int j = 0; j < n_trials; ++j)
            one(j);
    }
    else
    {
        for (int j = 0; j < n_trials; ++j)
            one(j);
    }
    return X;
}

} // namespace

std::vector<ReceiverTerms> estimate_all(const Scenario &sc, int n_trials, std::uint64_t seed,
                                        std::uint64_t topology_index, ExecPolicy policy)
{
    if (n_trials < kMinTrials)
        throw PreconditionError("estimate_terms needs at least " + std::to_string(kMinTrials) + " trials, got " +
                                std::to_string(n_trials));
    const Layout L{sc.cfg.n_ue};
    const Samples X = run_trials(sc, n_trials, seed, topology_index, policy);
    const auto n = static_cast<std::size_t>(n_trials);

    std::vector<ReceiverTerms> out;
    {
        const int o = L.mon();
        auto [ds, bu] = desired_of(X, o);
        out.push_back({ReceiverId::monitor(),
                       {{"DS", ds},
                        {"BU", bu},
                        {"IC", mean_of(X, o + 2)},
                        {"IS", mean_of(X, o + 3)},
                        {"SI_s", mean_of(X, o + 4)},
                        {"SI_c", mean_of(X, o + 5)},
                        {"n", mean_of(X, o + 6)}}});
    }
    for (int k = 0; k < sc.cfg.n_ue; ++k)
    {
        const int o = L.ue(k);
        auto [ds, bu] = desired_of(X, o);
        out.push_back({ReceiverId::user(k),
                       {{"DS", ds},
                        {"BU", bu},
                        {"IUI", mean_of(X, o + 2)},
                        {"IS", mean_of(X, o + 3)},
                        {"JS_s", mean_of(X, o + 4)},
                        {"JS_c", mean_of(X, o + 5)},
                        {"n", constant(1.0, n)}}});
    }
    {
        const int o = L.cpu();
        auto [ds, bu] = desired_of(X, o);
        out.push_back({ReceiverId::cpu(),
                       {{"DS", ds},
                        {"BU", bu},
                        {"IC", mean_of(X, o + 2)},
                        {"JS_s", mean_of(X, o + 3)},
                        {"JS_c", mean_of(X, o + 4)},
                        {"n", mean_of(X, o + 5)}}});
    }
    return out;
}

TermMap estimate_terms(ReceiverId rx, const Scenario &sc, int n_trials, std::uint64_t seed,
                       std::uint64_t topology_index, ExecPolicy policy)
{
    if (rx.kind == ReceiverKind::ue && (rx.ue < 0 || rx.ue >= sc.cfg.n_ue))
        throw std::invalid_argument("estimate_terms: unknown receiver " + rx.label());
    for (auto &r : estimate_all(sc, n_trials, seed, topology_index, policy))
        if (r.receiver.kind == rx.kind && r.receiver.ue == rx.ue)
            return std::move(r.terms);
    throw std::invalid_argument("estimate_terms: unknown receiver " + rx.label());
}

double empirical_sinr(const TermMap &terms)
{
    double ds = 0.0;
    bool have_ds = false;
    std::vector<double> den;
    for (const auto &[name, est] : terms)
    {
        if (name == "DS")
        {
            ds = est.mean;
            have_ds = true;
        }
        else
            den.push_back(est.mean);
    }
    if (!have_ds)
        throw std::invalid_argument("empirical_sinr: term map has no DS entry");
    const double d = stable_sum(std::move(den));
    if (!(d > 0.0))
        throw DegenerateSignalError("empirical_sinr: zero denominator");
    return ds * ds / d;
}

} // namespace cfisac
