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

#ifndef THEMIS_TESTS_SUPPORT_FIXTURES_HPP_
#define THEMIS_TESTS_SUPPORT_FIXTURES_HPP_

#include <memory>
#include <string>
#include <vector>

#include "themis/actors/campaign.hpp"

namespace themis::testing {

// Catalog where ad i belongs to advertiser "adv-(i % n_adv)".
inline actors::CampaignPlan make_plan(std::vector<std::uint64_t> policies, std::size_t n_adv,
                                      std::uint64_t impressions, std::uint64_t fee) {
  actors::CampaignPlan plan;
  for (std::size_t i = 0; i < policies.size(); ++i) {
    plan.catalog.entries.push_back({"ad-" + std::to_string(i), "adv-" + std::to_string(i % n_adv), impressions});
  }
  plan.policies = std::move(policies);
  plan.fee = fee;
  return plan;
}

inline std::vector<actors::InteractionVector> to_users(const std::vector<std::vector<std::uint64_t>>& rows) {
  std::vector<actors::InteractionVector> out;
  for (const auto& r : rows) out.push_back({r});
  return out;
}

struct CampaignHarness {
  CampaignHarness(const actors::CampaignPlan& plan, std::vector<actors::InteractionVector> users,
                  std::uint64_t seed, actors::Misbehavior mis = {})
      : ledger(actors::Campaign::genesis_for(plan, seed), contracts::default_registry()),
        campaign(ledger, plan, std::move(users), seed, std::move(mis)) {}

  ledger::Ledger ledger;
  actors::Campaign campaign;
};

}  // namespace themis::testing

#endif  // THEMIS_TESTS_SUPPORT_FIXTURES_HPP_
