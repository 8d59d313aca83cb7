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

#ifndef THEMIS_ACTORS_SCENARIO_HPP_
#define THEMIS_ACTORS_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "themis/actors/campaign.hpp"

namespace themis::actors {

inline constexpr int kReportSchemaVersion = 1;

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  CampaignPlan plan;
  std::vector<InteractionVector> users;
  Misbehavior misbehavior;
  std::size_t chains = 1;
  std::vector<std::uint32_t> analytics_posters;
  // Re-executes each chain's transaction log from genesis and compares state.
  bool verify_replay = true;

  // Generated parts (random policies, interaction distributions) are drawn
  // from `seed`; `seed_override` replaces the file's seed before generation.
  // Throws Error(kInvalidConfig) on any schema problem.
  static Scenario from_json(const json& j, std::optional<std::uint64_t> seed_override = std::nullopt);
  // Fully expanded form: explicit catalog, policies and vectors.
  json to_json() const;
};

struct RandomScenarioOptions {
  std::size_t min_ads = 8, max_ads = 256;
  std::size_t min_users = 10, max_users = 100;
  std::size_t min_advertisers = 1, max_advertisers = 4;
  std::uint64_t max_policy = 256;
  std::uint64_t max_clicks = 256;
  // Probability that a user interacted with a given ad at all.
  double density = 0.3;
};

// Random honest campaign within the given ranges.
Scenario random_scenario(Rng& rng, const RandomScenarioOptions& opts = {});

enum class Injection { kNone, kUnderpay, kOverwithdraw };

// Adds one CF fault to an honest scenario. Underpayment targets a random user
// with a positive reward (one is made positive if none is); over-withdrawal
// takes between 1 and the total refund the advertisers are owed.
void inject(Scenario& s, Injection kind, Rng& rng);

struct ScenarioReport {
  json report;
  bool ok = false;
  std::vector<std::string> failures;
};

// Runs the campaign on every chain, checks the invariants expected for the
// scenario's misbehavior setting and assembles the report.
ScenarioReport run_scenario(const Scenario& scenario);
// The report without timing fields, for determinism comparisons.
json strip_timing(json report);

}  // namespace themis::actors

#endif  // THEMIS_ACTORS_SCENARIO_HPP_
