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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cfisac/closed_form.hpp"
#include "cfisac/exec.hpp"
#include "cfisac/scenario.hpp"

namespace cfisac
{

inline constexpr int kMinTrials = 100;

class PreconditionError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

class DegenerateSignalError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

struct TermEstimate
{
    double mean = 0.0;
    double std_err = 0.0;
    std::size_t n_trials = 0;
};

// "DS" first, then the denominator terms in display order.
using TermMap = std::vector<std::pair<std::string, TermEstimate>>;

const TermEstimate &find_term(const TermMap &map, std::string_view name);

// Combiners of one realization: a at the monitor, b (N x n_sap_rx) at the S-AP receivers.
struct Combiners
{
    Eigen::VectorXcd a;
    Eigen::MatrixXcd b;
};

Combiners combiners(const Scenario &sc, const ChannelRealization &ch);

// Coefficient multiplying every transmitted symbol in every combined signal of one trial.
// User symbols are s_1..s_K, then the probing symbol s_t and the jamming symbols
// s_pm,t and s_pm,1.
struct TrialCoefficients
{
    Eigen::VectorXcd mon_user; // K
    std::complex<double> mon_sens, mon_jam_t, mon_jam_1;
    double mon_noise = 0.0; // ||a||^2

    Eigen::MatrixXcd ue_user; // K x K, (receiver k, symbol j)
    Eigen::VectorXcd ue_sens, ue_jam_t, ue_jam_1;

    Eigen::VectorXcd cpu_user; // K
    std::complex<double> cpu_sens, cpu_jam_t, cpu_jam_1;
    double cpu_noise = 0.0; // sum ||b_m''||^2
};

TrialCoefficients extract_coefficients(const Scenario &sc, const ChannelRealization &ch);

// One trial at signal level: transmit signals, received signals after S-AP cooperation
// cancellation, and the combined outputs.
struct RawSignals
{
    ChannelRealization ch;
    Eigen::VectorXcd s_user;
    std::complex<double> s_t, s_pm_t, s_pm_1;

    Eigen::MatrixXcd x_cap; // N x n_cap
    Eigen::MatrixXcd x_stx; // N x n_sap_tx
    Eigen::VectorXcd x_pm;

    Eigen::VectorXcd n_ue;  // K
    Eigen::VectorXcd n_pm;  // N_pm
    Eigen::MatrixXcd n_srx; // N x n_sap_rx

    Eigen::VectorXcd y_ue;  // K
    Eigen::VectorXcd y_pm;  // N_pm
    Eigen::MatrixXcd y_srx; // N x n_sap_rx

    std::complex<double> z_pm, z_cpu;
};

// Channels first (same draws as the estimate_terms trial on the same stream), then
// symbols, then noise.
RawSignals simulate_trial(const Scenario &sc, Rng &rng);

// Per-receiver consistency of one trial.
struct Bookkeeping
{
    std::string receiver;
    double amplitude_rel_err = 0.0; // |z - (sum c s + combined noise)| / scale
    double component_power = 0.0;   // sum |c|^2 + combined noise power
    double total_power = 0.0;       // v^H (H P P^H H^H + I) v from the stacked model
    double power_rel_err = 0.0;
};

std::vector<Bookkeeping> bookkeeping(const Scenario &sc, const RawSignals &raw);

struct ReceiverTerms
{
    ReceiverId receiver;
    TermMap terms;
};

// Term estimates for every receiver (monitor, ue1..ueK, cpu). Trial j of the scenario uses
// stream (seed, trial, topology_index, j).
std::vector<ReceiverTerms> estimate_all(const Scenario &sc, int n_trials, std::uint64_t seed,
                                        std::uint64_t topology_index, ExecPolicy policy = ExecPolicy::parallel);

TermMap estimate_terms(ReceiverId rx, const Scenario &sc, int n_trials, std::uint64_t seed,
                       std::uint64_t topology_index, ExecPolicy policy = ExecPolicy::parallel);

// |E{DS}|^2 over the sum of the remaining terms.
double empirical_sinr(const TermMap &terms);

} // namespace cfisac
