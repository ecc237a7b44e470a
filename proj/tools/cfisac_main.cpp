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

#include <iostream>

#include "CLI11.hpp"

#include "cfisac/runner.hpp"

namespace
{

void add_common(CLI::App *sub, cfisac::RunOptions &opt)
{
    sub->add_option("--config", opt.config_path, "JSON config file (defaults when omitted)");
    sub->add_option("--set", opt.overrides, "Field override key=value (repeatable)");
    sub->add_option("--seed", opt.seed, "Master seed (overrides the config)");
    sub->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--threads", opt.threads, "OpenMP threads (0 = runtime default)");
}

} // namespace

int main(int argc, char **argv)
{
    cfisac::RunOptions opt;
    for (int i = 0; i < argc; ++i)
        opt.argv.emplace_back(argv[i]);

    CLI::App app{"Cell-free ISAC simulator with a proactive monitor"};
    app.set_version_flag("--version", std::string(cfisac::version_string()));
    app.require_subcommand(1);

    auto *validate = app.add_subcommand("validate", "Check a config and print it with defaults filled in");
    validate->add_option("--config", opt.config_path, "JSON config file");
    validate->add_option("--set", opt.overrides, "Field override key=value (repeatable)");

    auto *conformance = app.add_subcommand("conformance", "Closed-form terms against the Monte Carlo oracle");
    add_common(conformance, opt);
    conformance->add_option("--trials", opt.trials, "Monte Carlo trials per topology (>= 100)");
    conformance->add_option("--topologies", opt.topologies, "Number of topologies (default 5)");
    conformance->add_flag("--strict-as-printed", opt.strict_as_printed,
                          "Test the literal printed expressions instead of the corrected ones");

    auto *sweep = app.add_subcommand("sweep", "MSP/SDP sweeps over topology ensembles");
    add_common(sweep, opt);
    sweep->add_option("--sweep", opt.sweep, "theta or npm")->required();
    sweep->add_option("--topologies", opt.topologies, "Topologies per grid point (default topo_draws)");
    sweep->add_flag("--strict-as-printed", opt.strict_as_printed, "Use the literal printed expressions");

    auto *dump = app.add_subcommand("dump", "Write one topology and its large-scale state as JSON fixtures");
    add_common(dump, opt);
    dump->add_option("--topology-index", opt.topology_index, "Topology stream index");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cfisac::exit_usage;
    }

    if (*validate)
        return cfisac::cmd_validate(opt, std::cout, std::cerr);
    if (*conformance)
        return cfisac::cmd_conformance(opt, std::cout, std::cerr);
    if (*sweep)
        return cfisac::cmd_sweep(opt, std::cout, std::cerr);
    if (*dump)
        return cfisac::cmd_dump(opt, std::cout, std::cerr);
    return cfisac::exit_usage;
}
