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

#include "cfisac/runner.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "cfisac/geometry.hpp"
#include "cfisac/io.hpp"
#include "cfisac/metrics.hpp"
#include "cfisac/scenario.hpp"

#ifndef CFISAC_VERSION
#define CFISAC_VERSION "unknown"
#endif

namespace cfisac
{

const char *version_string() { return CFISAC_VERSION; }

namespace
{

std::string utc_now()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

SystemConfig resolve_config(const RunOptions &opt)
{
    SystemConfig cfg = opt.config_path ? load_config(*opt.config_path) : default_config();
    for (const auto &o : opt.overrides)
        apply_override(cfg, o);
    if (opt.seed)
        cfg.seed = *opt.seed;
    return cfg;
}

std::string violations_text(const std::vector<Violation> &v)
{
    std::string s;
    for (const auto &x : v)
        s += "  " + x.field + ": " + x.message + "\n";
    return s;
}

// Runs body with manifest bookkeeping; maps exceptions to exit codes.
template <class Body>
int with_manifest(const std::string &command, const RunOptions &opt, std::ostream &err, Body &&body)
{
    RunManifest mf;
    mf.command = command;
    mf.argv = opt.argv;
    mf.version = version_string();
    mf.started_at = utc_now();
    try
    {
        const SystemConfig cfg = resolve_config(opt);
        mf.config_json = to_json(cfg);
        mf.seed = cfg.seed;
        const auto violations = validate(cfg);
        if (!violations.empty())
            throw ConfigError("invalid config:\n" + violations_text(violations));
        set_thread_count(opt.threads);
        mf.exit_code = body(cfg, mf);
    }
    catch (const ConfigError &e)
    {
        mf.exit_code = exit_usage;
        mf.error = e.what();
    }
    catch (const UsageError &e)
    {
        mf.exit_code = exit_usage;
        mf.error = e.what();
    }
    catch (const PreconditionError &e)
    {
        mf.exit_code = exit_precondition;
        mf.error = e.what();
    }
    catch (const std::exception &e)
    {
        mf.exit_code = 1;
        mf.error = e.what();
    }
    if (!mf.error.empty())
        err << "error: " << mf.error << (mf.error.back() == '\n' ? "" : "\n");
    mf.finished_at = utc_now();
    try
    {
        write_file_atomic(opt.out_dir / (command + ".manifest.json"), mf.to_json());
    }
    catch (const std::exception &e)
    {
        err << "error: cannot write manifest: " << e.what() << "\n";
        if (mf.exit_code == 0)
            mf.exit_code = 1;
    }
    return mf.exit_code;
}

} // namespace

std::string RunManifest::to_json() const
{
    nlohmann::ordered_json j;
    j["command"] = command;
    j["argv"] = argv;
    j["version"] = version;
    j["seed"] = seed;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    j["config"] = config_json.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json::parse(config_json);
    j["outputs"] = outputs;
    j["exit_code"] = exit_code;
    j["error"] = error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(error);
    return j.dump(2) + "\n";
}

double z_score(double closed_form, const TermEstimate &oracle)
{
    const double diff = closed_form - oracle.mean;
    if (oracle.std_err > 0.0)
        return diff / oracle.std_err;
    const double scale = std::max(std::abs(closed_form), std::abs(oracle.mean));
    if (std::abs(diff) <= 1e-9 * scale)
        return 0.0;
    return diff > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

std::string ConformanceRow::csv_term() const
{
    std::string s = "topo" + std::to_string(topology) + "/";
    if (receiver.kind == ReceiverKind::ue)
        s += receiver.label() + "/";
    return s + term;
}

ConformanceResult run_conformance(const SystemConfig &cfg, int n_topologies, int n_trials, std::uint64_t seed,
                                  FormVariant variant, ExecPolicy policy, std::ostream *progress)
{
    if (n_trials < kMinTrials)
        throw PreconditionError("conformance needs at least " + std::to_string(kMinTrials) + " trials, got " +
                                std::to_string(n_trials));
    if (n_topologies < 1)
        throw PreconditionError("conformance needs at least one topology");
    ConformanceResult res;
    for (int t = 0; t < n_topologies; ++t)
    {
        const Scenario sc = make_scenario(cfg, seed, static_cast<std::uint64_t>(t));
        const auto oracle = estimate_all(sc, n_trials, seed, static_cast<std::uint64_t>(t), policy);
        for (const auto &rt : oracle)
        {
            const auto corr = sinr_for(rt.receiver, sc.ls, sc.est, sc.pa, sc.cfg, FormVariant::corrected);
            const auto prnt = sinr_for(rt.receiver, sc.ls, sc.est, sc.pa, sc.cfg, FormVariant::as_printed);
            for (const auto &[name, est] : rt.terms)
            {
                ConformanceRow row;
                row.receiver = rt.receiver;
                row.topology = t;
                row.term = name;
                row.corrected = corr.term(name);
                row.printed = prnt.term(name);
                row.closed_form = variant == FormVariant::corrected ? row.corrected : row.printed;
                row.oracle = est;
                row.z = z_score(row.closed_form, est);
                row.z_corrected = z_score(row.corrected, est);
                row.z_printed = z_score(row.printed, est);
                row.note = std::string(correction_note(rt.receiver.kind, name));
                if (!(std::abs(row.z) <= kConformanceZ))
                    res.failing.push_back(
                        (rt.receiver.kind == ReceiverKind::ue ? std::string("ue") : rt.receiver.label()) + ":" +
                        row.csv_term());
                res.rows.push_back(std::move(row));
            }
        }
        if (progress)
            *progress << "conformance: topology " << (t + 1) << "/" << n_topologies << " done\n" << std::flush;
    }
    return res;
}

std::string conformance_csv(const ConformanceResult &result, ReceiverKind kind)
{
    std::ostringstream os;
    os << kConformanceCsvHeader << '\n';
    for (const auto &r : result.rows)
        if (r.receiver.kind == kind)
            os << r.csv_term() << ',' << format_double(r.closed_form) << ',' << format_double(r.oracle.mean) << ','
               << format_double(r.oracle.std_err) << ',' << format_double(r.z) << '\n';
    return os.str();
}

std::string conformance_report(const ConformanceResult &result, FormVariant variant)
{
    std::ostringstream os;
    os << std::setprecision(6);
    os << "# Conformance report\n\n";
    os << "Closed forms under test: " << (variant == FormVariant::corrected ? "corrected" : "as printed")
       << ". Pass criterion: |z| <= " << kConformanceZ << " on every term.\n\n";

    std::map<std::string, double> worst;
    for (const auto &r : result.rows)
    {
        const std::string key = r.receiver.kind == ReceiverKind::ue ? "ue" : r.receiver.label();
        worst[key] = std::max(worst[key], std::abs(r.z));
    }
    os << "## Summary\n\n| receiver | max abs z |\n|---|---|\n";
    for (const auto &[k, v] : worst)
        os << "| " << k << " | " << v << " |\n";
    os << "\nFailing terms: " << result.failing.size() << "\n";
    for (const auto &f : result.failing)
        os << "- " << f << "\n";

    // Adjudication of every term whose printed expression differs from the corrected one.
    struct Verdict
    {
        std::string note;
        double max_z_printed = 0.0;
        double max_z_corrected = 0.0;
    };
    std::map<std::string, Verdict> verdicts;
    for (const auto &r : result.rows)
    {
        if (r.note.empty())
            continue;
        const std::string key =
            (r.receiver.kind == ReceiverKind::ue ? std::string("ue") : r.receiver.label()) + " " + r.term;
        auto &v = verdicts[key];
        v.note = r.note;
        v.max_z_printed = std::max(v.max_z_printed, std::abs(r.z_printed));
        v.max_z_corrected = std::max(v.max_z_corrected, std::abs(r.z_corrected));
    }
    os << "\n## Suspected typos\n\n";
    os << "| term | max abs z printed | max abs z corrected | verdict | correction |\n|---|---|---|---|---|\n";
    for (const auto &[k, v] : verdicts)
    {
        const char *verdict = v.max_z_printed > kConformanceZ ? "printed form rejected"
                                                              : "not separable at this trial count";
        os << "| " << k << " | " << v.max_z_printed << " | " << v.max_z_corrected << " | " << verdict << " | "
           << v.note << " |\n";
    }

    os << "\n## Flagged rows\n\n";
    os << "| term | printed | corrected | oracle mean | oracle stderr | z printed | z corrected |\n"
          "|---|---|---|---|---|---|---|\n";
    for (const auto &r : result.rows)
        if (!r.note.empty())
            os << "| " << r.receiver.label() << ":" << r.csv_term() << " | " << r.printed << " | " << r.corrected
               << " | " << r.oracle.mean << " | " << r.oracle.std_err << " | " << r.z_printed << " | "
               << r.z_corrected << " |\n";
    return os.str();
}

int cmd_validate(const RunOptions &opt, std::ostream &log, std::ostream &err)
{
    try
    {
        const SystemConfig cfg = resolve_config(opt);
        const auto v = validate(cfg);
        if (!v.empty())
        {
            err << "invalid config:\n" << violations_text(v);
            return exit_usage;
        }
        log << to_json(cfg) << "\n";
        return exit_ok;
    }
    catch (const ConfigError &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

int cmd_conformance(const RunOptions &opt, std::ostream &log, std::ostream &err)
{
    return with_manifest("conformance", opt, err, [&](const SystemConfig &cfg, RunManifest &mf) {
        const int trials = opt.trials.value_or(cfg.mc_trials);
        const int topologies = opt.topologies.value_or(kDefaultConformanceTopologies);
        const FormVariant variant = opt.strict_as_printed ? FormVariant::as_printed : FormVariant::corrected;
        const auto res = run_conformance(cfg, topologies, trials, cfg.seed, variant, ExecPolicy::parallel, &log);
        const std::pair<ReceiverKind, const char *> files[] = {{ReceiverKind::monitor, "conformance_monitor.csv"},
                                                               {ReceiverKind::ue, "conformance_ue.csv"},
                                                               {ReceiverKind::cpu, "conformance_cpu.csv"}};
        for (const auto &[kind, name] : files)
        {
            write_file_atomic(opt.out_dir / name, conformance_csv(res, kind));
            mf.outputs.push_back((opt.out_dir / name).string());
        }
        write_file_atomic(opt.out_dir / "conformance_report.md", conformance_report(res, variant));
        mf.outputs.push_back((opt.out_dir / "conformance_report.md").string());
        if (!res.failing.empty())
        {
            std::string msg = "conformance failed on " + std::to_string(res.failing.size()) + " term(s):";
            for (const auto &f : res.failing)
                msg += " " + f;
            mf.error = msg;
            return static_cast<int>(exit_conformance);
        }
        log << "conformance: all " << res.rows.size() << " terms within |z| <= " << kConformanceZ << "\n";
        return static_cast<int>(exit_ok);
    });
}

int cmd_sweep(const RunOptions &opt, std::ostream &log, std::ostream &err)
{
    const std::string command = "sweep_" + (opt.sweep.empty() ? std::string("unknown") : opt.sweep);
    return with_manifest(command, opt, err, [&](const SystemConfig &cfg, RunManifest &mf) {
        const int topologies = opt.topologies.value_or(cfg.topo_draws);
        if (topologies < 1)
            throw PreconditionError("sweep needs at least one topology");
        const FormVariant variant = opt.strict_as_printed ? FormVariant::as_printed : FormVariant::corrected;
        std::vector<MetricPoint> rows;
        if (opt.sweep == "theta")
            rows = sweep_theta(cfg, default_theta_grid(), default_radius_values(), topologies, cfg.seed, variant);
        else if (opt.sweep == "npm")
            rows = sweep_npm(cfg, default_npm_grid(), default_p_pm_values(), topologies, cfg.seed, variant);
        else
            throw UsageError("unknown sweep '" + opt.sweep + "' (expected theta or npm)");
        const auto path = opt.out_dir / ("sweep_" + opt.sweep + ".csv");
        write_file_atomic(path, sweep_csv(rows));
        mf.outputs.push_back(path.string());
        log << "sweep " << opt.sweep << ": " << rows.size() << " rows -> " << path.string() << "\n";
        return static_cast<int>(exit_ok);
    });
}

int cmd_dump(const RunOptions &opt, std::ostream &log, std::ostream &err)
{
    return with_manifest("dump", opt, err, [&](const SystemConfig &cfg, RunManifest &mf) {
        if (opt.topology_index < 0)
            throw UsageError("topology index must be >= 0");
        const auto idx = static_cast<std::uint64_t>(opt.topology_index);
        const Scenario sc = make_scenario(cfg, cfg.seed, idx);
        const std::string stem = "topology_" + std::to_string(idx);
        write_file_atomic(opt.out_dir / (stem + ".json"), to_json(sc.topo) + "\n");
        write_file_atomic(opt.out_dir / (stem + "_large_scale.json"), to_json(sc.ls) + "\n");
        mf.outputs.push_back((opt.out_dir / (stem + ".json")).string());
        mf.outputs.push_back((opt.out_dir / (stem + "_large_scale.json")).string());
        log << "dump: wrote " << stem << " fixtures\n";
        return static_cast<int>(exit_ok);
    });
}

} // namespace cfisac
