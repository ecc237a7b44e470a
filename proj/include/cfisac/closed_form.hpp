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
#include <string_view>
#include <vector>

#include "cfisac/channel.hpp"
#include "cfisac/config.hpp"
#include "cfisac/estimation.hpp"
#include "cfisac/precoding.hpp"

namespace cfisac
{

enum class ReceiverKind
{
    monitor,
    ue,
    cpu
};

struct ReceiverId
{
    ReceiverKind kind = ReceiverKind::monitor;
    int ue = 0; // 0-based UE index, only for ReceiverKind::ue

    static ReceiverId monitor() { return {ReceiverKind::monitor, 0}; }
    static ReceiverId user(int k) { return {ReceiverKind::ue, k}; }
    static ReceiverId cpu() { return {ReceiverKind::cpu, 0}; }

    // "monitor", "ue1" ... "ueK", "cpu"
    std::string label() const;
};

// Parses a label produced by ReceiverId::label(). Throws std::invalid_argument.
ReceiverId parse_receiver(std::string_view label, int n_ue);

enum class FormVariant
{
    corrected,  // printed expressions with the oracle-backed corrections applied
    as_printed  // literal printed expressions
};

struct Term
{
    std::string name;
    double value = 0.0;
};

struct SinrBreakdown
{
    std::string label;
    double desired_mean = 0.0;  // E{DS}
    double numerator = 0.0;     // |E{DS}|^2
    std::vector<Term> terms;    // denominator, in display order
    double sinr = 0.0;

    // Throws std::out_of_range for an unknown name. "DS" returns desired_mean.
    double term(std::string_view name) const;
    double denominator() const;
};

// Denominator term names per receiver, in display order.
const std::vector<std::string> &term_names(ReceiverKind kind);

SinrBreakdown sinr_monitor(const LargeScale &ls, const EstimationModel &est, const PowerAllocation &pa,
                           const SystemConfig &cfg, FormVariant variant = FormVariant::corrected);

// k is the 0-based UE index; k = 0 is the suspicious UE.
SinrBreakdown sinr_ue(int k, const LargeScale &ls, const EstimationModel &est, const PowerAllocation &pa,
                      const SystemConfig &cfg, FormVariant variant = FormVariant::corrected);

SinrBreakdown sinr_cpu(const LargeScale &ls, const EstimationModel &est, const PowerAllocation &pa,
                       const SystemConfig &cfg, FormVariant variant = FormVariant::corrected);

SinrBreakdown sinr_for(ReceiverId rx, const LargeScale &ls, const EstimationModel &est, const PowerAllocation &pa,
                       const SystemConfig &cfg, FormVariant variant = FormVariant::corrected);

// Non-empty when the printed expression of this term differs from the corrected one;
// the text names the correction.
std::string_view correction_note(ReceiverKind kind, std::string_view term);

} // namespace cfisac
