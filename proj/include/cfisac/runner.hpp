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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cfisac/closed_form.hpp"
#include "cfisac/config.hpp"
#include "cfisac/exec.hpp"
#include "cfisac/oracle.hpp"

namespace cfisac
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_usage = 2,
    exit_precondition = 3,
    exit_conformance = 4
};

inline constexpr double kConformanceZ = 4.0;
inline constexpr int kDefaultConformanceTopologies = 5;

const char *version_string();

struct RunManifest
{
    std::string command;
    std::vector<std::string> argv;
    std::string config_json;
    std::uint64_t seed = 0;
    std::string version;
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> outputs;
    int exit_code = 0;
    std::string error;

    std::string to_json() const;
};

// z = (closed - oracle mean) / stderr. Deterministic oracle terms (stderr 0) give 0 when the
// two agree to 1e-9 relative and +-inf otherwise.
double z_score(double closed_form, const TermEstimate &oracle);

struct ConformanceRow
{
    ReceiverId receiver;
    int topology = 0;
    std::string term;
    double closed_form = 0.0; // the variant under test
    double corrected = 0.0;
    double printed = 0.0;
    TermEstimate oracle;
    double z = 0.0;           // of closed_form
    double z_corrected = 0.0;
    double z_printed = 0.0;
    std::string note;         // non-empty for suspected typos

    // "topo0/DS" or "topo0/ue2/DS"
    std::string csv_term() const;
};

struct ConformanceResult
{
    std::vector<ConformanceRow> rows;
    std::vector<std::string> failing; // csv_term of every row with |z| > kConformanceZ
};

ConformanceResult run_conformance(const SystemConfig &cfg, int n_topologies, int n_trials, std::uint64_t seed,
                                  FormVariant variant, ExecPolicy policy = ExecPolicy::parallel,
                                  std::ostream *progress = nullptr);

inline constexpr const char *kConformanceCsvHeader = "term,closed_form,oracle_mean,oracle_stderr,z_score";

// Rows of one receiver kind.
std::string conformance_csv(const ConformanceResult &result, ReceiverKind kind);
std::string conformance_report(const ConformanceResult &result, FormVariant variant);

struct RunOptions
{
    std::optional<std::filesystem::path> config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> topologies;
    std::filesystem::path out_dir = "out";
    std::string sweep;
    bool strict_as_printed = false;
    int threads = 0;
    int topology_index = 0;
    std::vector<std::string> argv;
};

// Commands return an ExitCode. Diagnostics go to err, progress to log.
int cmd_validate(const RunOptions &opt, std::ostream &log, std::ostream &err);
int cmd_conformance(const RunOptions &opt, std::ostream &log, std::ostream &err);
int cmd_sweep(const RunOptions &opt, std::ostream &log, std::ostream &err);
int cmd_dump(const RunOptions &opt, std::ostream &log, std::ostream &err);

} // namespace cfisac
