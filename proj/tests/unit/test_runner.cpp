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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "cfisac/runner.hpp"

using namespace cfisac;
namespace fs = std::filesystem;

namespace
{

fs::path scratch(const std::string &name)
{
    const fs::path p = fs::temp_directory_path() / ("cfisac_runner_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string &args, const fs::path &dir)
{
    const std::string cmd = std::string(CFISAC_CLI_PATH) + " " + args + " > " + (dir / "stdout.txt").string() +
                            " 2> " + (dir / "stderr.txt").string();
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

} // namespace

TEST_CASE("z score")
{
    CHECK(z_score(3.0, {1.0, 0.5, 100}) == doctest::Approx(4.0));
    CHECK(z_score(1.0, {1.0, 0.0, 100}) == 0.0);
    CHECK(z_score(1.0 + 1e-12, {1.0, 0.0, 100}) == 0.0);
    CHECK(std::isinf(z_score(1.1, {1.0, 0.0, 100})));
    CHECK(z_score(0.0, {0.0, 0.0, 100}) == 0.0);
}

TEST_CASE("conformance rows and CSV")
{
    SystemConfig cfg;
    cfg.n_ue = 2;
    cfg.tau_p = 2;
    const auto res = run_conformance(cfg, 1, 200, 1, FormVariant::corrected, ExecPolicy::serial);
    CHECK(res.rows.size() == 7 + 2 * 7 + 6);
    const std::string csv = conformance_csv(res, ReceiverKind::ue);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "term,closed_form,oracle_mean,oracle_stderr,z_score");
    std::getline(in, line);
    CHECK(line.rfind("topo0/ue1/DS,", 0) == 0);
    const std::string cpu = conformance_csv(res, ReceiverKind::cpu);
    CHECK(cpu.find("topo0/BU,0,0,0,0\n") != std::string::npos);
    const std::string report = conformance_report(res, FormVariant::corrected);
    CHECK(report.find("Suspected typos") != std::string::npos);
    CHECK_THROWS_AS(run_conformance(cfg, 1, 10, 1, FormVariant::corrected), PreconditionError);
}

TEST_CASE("cli: validate")
{
    const fs::path d = scratch("validate");
    CHECK(run_cli("validate", d) == 0);
    CHECK(nlohmann::json::parse(slurp(d / "stdout.txt")).at("n_cap") == 20);
    CHECK(run_cli("validate --set theta_pm_t=0.7 --set theta_pm_1=0.4", d) == 2);
    CHECK(slurp(d / "stderr.txt").find("theta_pm_t+theta_pm_1") != std::string::npos);
    {
        std::ofstream(d / "bad.json") << R"({"n_ue": 0})";
    }
    CHECK(run_cli("validate --config " + (d / "bad.json").string(), d) == 2);
    CHECK(run_cli("validate --config " + (d / "missing.json").string(), d) == 2);
    CHECK(run_cli("bogus", d) == 2);
    CHECK(run_cli("", d) == 2);
}

TEST_CASE("cli: conformance guards and manifest")
{
    const fs::path d = scratch("conf");
    CHECK(run_cli("conformance --trials 10 --out " + d.string(), d) == 3);
    const auto mf = nlohmann::json::parse(slurp(d / "conformance.manifest.json"));
    CHECK(mf.at("exit_code") == 3);
    CHECK(mf.at("error").get<std::string>().find("100") != std::string::npos);
    CHECK(mf.at("seed") == 1);
    CHECK(mf.at("config").at("n_cap") == 20);

    CHECK(run_cli("conformance --trials 400 --topologies 1 --out " + d.string(), d) == 0);
    for (const char *f : {"conformance_monitor.csv", "conformance_ue.csv", "conformance_cpu.csv",
                          "conformance_report.md"})
        CHECK(fs::exists(d / f));
    CHECK(nlohmann::json::parse(slurp(d / "conformance.manifest.json")).at("outputs").size() == 4);
}

TEST_CASE("cli: the printed forms fail conformance and name the terms")
{
    const fs::path d = scratch("strict");
    CHECK(run_cli("conformance --strict-as-printed --trials 2000 --topologies 1 --out " + d.string(), d) == 4);
    const std::string err = slurp(d / "stderr.txt");
    CHECK(err.find("monitor:topo0/SI_s") != std::string::npos);
    CHECK(err.find("monitor:topo0/BU") != std::string::npos);
}

TEST_CASE("cli: sweep")
{
    const fs::path d = scratch("sweep");
    CHECK(run_cli("sweep --sweep nope --out " + d.string(), d) == 2);
    CHECK(run_cli("sweep --out " + d.string(), d) == 2);
    CHECK(run_cli("sweep --sweep theta --topologies 30 --out " + d.string(), d) == 0);
    const std::string first = slurp(d / "sweep_theta.csv");
    std::istringstream in(first);
    std::string line;
    int n = 0;
    while (std::getline(in, line))
        ++n;
    CHECK(n == 34);
    CHECK(run_cli("sweep --sweep theta --topologies 30 --threads 2 --out " + d.string(), d) == 0);
    CHECK(slurp(d / "sweep_theta.csv") == first);
    CHECK(run_cli("sweep --sweep theta --topologies 30 --seed 2 --out " + d.string(), d) == 0);
    CHECK(slurp(d / "sweep_theta.csv") != first);
}

TEST_CASE("cli: dump")
{
    const fs::path d = scratch("dump");
    CHECK(run_cli("dump --topology-index 3 --out " + d.string(), d) == 0);
    const auto topo = nlohmann::json::parse(slurp(d / "topology_3.json"));
    CHECK(topo.at("cap_pos").size() == 20);
    const auto ls = nlohmann::json::parse(slurp(d / "topology_3_large_scale.json"));
    CHECK(ls.contains("alpha_refl"));
    CHECK(run_cli("dump --topology-index -1 --out " + d.string(), d) == 2);
}
