// Copyright 2026 The Themis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// themis: scenario runner and benchmark harness.
//
//   themis run <scenario.json> [--out report.json] [--seed N]
//   themis random [--seed N] [--inject underpay|overwithdraw] [--out scenario.json]
//   themis bench client|settlement|concurrent [--sizes ...] [--out bench.json]
//
// Exit codes: 0 all checks passed, 1 an invariant check failed, 2 the input
// could not be read or parsed. Set THEMIS_LOG=error|warn|info|debug for logs.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "themis/actors/bench.hpp"
#include "themis/actors/scenario.hpp"
#include "themis/error.hpp"
#include "themis/log.hpp"

namespace {

using themis::actors::json;
namespace actors = themis::actors;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << j.dump(2) << "\n";
}

int cmd_run(const std::string& path, const std::string& out, std::optional<std::uint64_t> seed) {
  actors::Scenario scenario;
  try {
    std::ifstream f(path);
    if (!f) {
      std::cerr << "themis: cannot open " << path << "\n";
      return kExitBadInput;
    }
    scenario = actors::Scenario::from_json(json::parse(f), seed);
  } catch (const json::exception& e) {
    std::cerr << "themis: " << path << ": " << e.what() << "\n";
    return kExitBadInput;
  } catch (const themis::Error& e) {
    std::cerr << "themis: " << path << ": " << e.what() << "\n";
    return kExitBadInput;
  }
  auto report = actors::run_scenario(scenario);
  emit(report.report, out);
  for (const auto& f : report.failures) std::cerr << "themis: check failed: " << f << "\n";
  return report.ok ? kExitOk : kExitCheckFailed;
}

int cmd_random(std::uint64_t seed, const std::string& inject, const std::string& out) {
  auto rng = themis::crypto::Rng::from_u64(seed);
  auto s = actors::random_scenario(rng);
  s.name = "random-" + std::to_string(seed);
  s.seed = seed;
  if (inject == "underpay") {
    actors::inject(s, actors::Injection::kUnderpay, rng);
  } else if (inject == "overwithdraw") {
    actors::inject(s, actors::Injection::kOverwithdraw, rng);
  } else if (!inject.empty() && inject != "none") {
    std::cerr << "themis: unknown injection " << inject << "\n";
    return kExitBadInput;
  }
  emit(s.to_json(), out);
  return kExitOk;
}

json bench_report(const std::string& kind, const json& details) {
  json r = {{"schema_version", actors::kReportSchemaVersion},
            {"benchmark", kind},
            {"catalog_size", nullptr},
            {"user_count", nullptr},
            {"sidechain_count", nullptr},
            {"timings", json::object()},
            {"throughput", nullptr},
            {"details", details}};
  return r;
}

template <typename T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> def) {
  return v.empty() ? def : v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"THEMIS protocol simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a campaign scenario and check its invariants");
  std::string scenario_path, out;
  std::optional<std::uint64_t> seed;
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out, "Report file (default stdout)");
  run->add_option("--seed", seed, "Override the scenario seed");

  auto* random = app.add_subcommand("random", "Print a random honest scenario");
  std::uint64_t random_seed = 1;
  std::string inject;
  random->add_option("--seed", random_seed, "Seed");
  random->add_option("--inject", inject, "Fault to inject: underpay or overwithdraw");
  random->add_option("--out", out, "Scenario file (default stdout)");

  auto* bench = app.add_subcommand("bench", "Run a benchmark");
  std::string kind;
  std::vector<std::size_t> sizes, chains;
  std::size_t runs = 0, catalog = 256;
  double budget = 5.0;
  std::uint64_t bench_seed = 1;
  bench->add_option("kind", kind, "client, settlement or concurrent")
      ->required()
      ->check(CLI::IsMember({"client", "settlement", "concurrent"}));
  bench->add_option("--sizes", sizes, "Catalog sizes, batch sizes or cohort sizes")->delimiter(',');
  bench->add_option("--chains", chains, "Sidechain counts (concurrent)")->delimiter(',');
  bench->add_option("--catalog", catalog, "Catalog size (concurrent)");
  bench->add_option("--runs", runs, "Repetitions per point");
  bench->add_option("--budget", budget, "Wall-clock seconds per sidechain point (concurrent)");
  bench->add_option("--seed", bench_seed, "Seed");
  bench->add_option("--out", out, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*run) return cmd_run(scenario_path, out, seed);
    if (*random) return cmd_random(random_seed, inject, out);

    json report;
    if (kind == "client") {
      auto b = actors::bench_client(or_default(sizes, {64, 128, 256}), runs ? runs : 10, bench_seed);
      report = bench_report(kind, b.to_json());
      const auto& last = b.rows.back();
      report["catalog_size"] = last.catalog_size;
      report["user_count"] = 1;
      report["sidechain_count"] = 1;
      report["timings"] = {{"interaction_encryption_s", last.interaction_encryption_s},
                           {"request_generation_s", last.request_generation_s}};
    } else if (kind == "settlement") {
      auto b = actors::bench_settlement(or_default(sizes, {1, 80, 200, 400, 800}), runs ? runs : 5, bench_seed);
      report = bench_report(kind, b.to_json());
      const auto& last = b.rows.back();
      report["user_count"] = last.batch;
      report["sidechain_count"] = 1;
      report["timings"] = {{"batch_proof_gen_s", last.batch_proof_gen_s}, {"batch_verify_s", last.batch_verify_s}};
    } else {
      auto b = actors::bench_concurrent(or_default(sizes, {10, 30, 60, 100}), catalog,
                                        or_default(chains, {1, 2, 3}), runs ? runs : 1, budget, bench_seed);
      report = bench_report(kind, b.to_json());
      report["catalog_size"] = catalog;
      if (!b.cohorts.empty()) {
        report["user_count"] = b.cohorts.back().users;
        report["timings"] = {{"end_to_end_claim_s", b.cohorts.back().end_to_end_claim_s}};
      }
      if (!b.chains.empty()) {
        const auto& top = b.chains.back();
        report["sidechain_count"] = top.chains;
        report["throughput"] = {{"users_processed", top.users_processed},
                                {"elapsed_s", top.wall_seconds},
                                {"users_per_day", top.users_per_second * 86400.0},
                                {"users_per_month", top.users_per_second * 86400.0 * 30.0},
                                {"basis", b.to_json()["extrapolation_basis"]}};
      }
    }
    emit(report, out);
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "themis: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}
