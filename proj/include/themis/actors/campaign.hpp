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

#ifndef THEMIS_ACTORS_CAMPAIGN_HPP_
#define THEMIS_ACTORS_CAMPAIGN_HPP_

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "themis/actors/roles.hpp"

namespace themis::actors {

struct Misbehavior {
  // CF pays `delta` less than owed to user `user`.
  struct Underpay {
    std::size_t user = 0;
    std::uint64_t delta = 1;
  };
  std::optional<Underpay> cf_underpay;
  // CF withdraws τ + delta.
  std::optional<std::uint64_t> cf_overwithdraw;
  // CF stores a different value for this catalog index than agreed.
  std::optional<std::uint32_t> tamper_policy;
  // Dealer id -> recipients receiving corrupted DKG shares.
  dkg::DealerMisbehavior dkg;

  bool any_cf_fault() const { return cf_underpay || cf_overwithdraw; }
};

struct UserOutcome {
  std::string user_pk;
  std::string addr;
  std::uint64_t expected = 0;    // plaintext 𝒫·𝐚
  std::uint64_t dec_result = 0;  // what the user recovered from Aggr.Res
  std::uint64_t paid = 0;        // note amount
  std::uint64_t redeemed = 0;    // tokens received on the ledger
  bool complained = false;
};

struct AdvertiserOutcome {
  std::string id;
  std::uint64_t deposit = 0;
  std::uint64_t fee_share = 0;
  std::uint64_t spent = 0;
  std::uint64_t refund = 0;
  std::uint64_t expected_refund = 0;
  bool claimed = false;
};

struct CampaignResult {
  std::vector<UserOutcome> users;
  std::vector<AdvertiserOutcome> advertisers;
  std::vector<std::uint64_t> aggr_clicks;
  std::vector<std::uint64_t> expected_clicks;
  std::uint64_t deposits = 0;
  std::uint64_t payouts = 0;
  std::uint64_t refunds = 0;
  std::uint64_t fee_paid = 0;
  std::uint64_t fee_returned = 0;
  std::int64_t cf_gain = 0;  // CF balance change beyond the fee it was paid
  bool payouts_match = false;
  bool conservation = false;
  bool analytics_match = false;
  bool analytics_verified = false;
  bool refund_identity = false;
  bool cf_flagged_dishonest = false;
  bool state_failed = false;
  // Set when the campaign stopped early, e.g. an advertiser refused to fund.
  std::string aborted;
  std::uint32_t pool_n = 0;
  std::uint32_t pool_k = 0;
  std::uint64_t draw_rounds = 0;
  std::string state_hash;
  std::map<std::string, double> phase_seconds;

  json to_json(bool include_timing) const;
};

// One campaign on one ledger, driven phase by phase. All randomness derives
// from the seed, so two runs with the same inputs produce the same ledger.
class Campaign {
 public:
  Campaign(Ledger& ledger, CampaignPlan plan, std::vector<InteractionVector> users,
           std::uint64_t seed, Misbehavior misbehavior = {}, ContractIds ids = {});

  // Genesis giving every advertiser its required deposit plus slack.
  static ledger::GenesisConfig genesis_for(const CampaignPlan& plan, std::uint64_t seed,
                                           std::string chain_id = "themis-0");

  // Deploys contracts, stores sealed policies and keys, lets advertisers
  // verify and fund. Throws Error(kPolicyMismatch) before any deposit if an
  // advertiser's check fails.
  void phase1_setup();
  // VRF draw and DKG; returns the number of draw rounds used.
  std::uint64_t pool_selection();
  // Phase 2 and 3 for every user.
  void claims();
  void end_epoch();
  // Threshold-decrypts the per-ad totals and stores them in the FSC.
  std::vector<std::uint64_t> analytics_round();
  // Phase 4.
  void cf_settle();
  // Users check their openings, complain if underpaid, and redeem.
  void user_payouts();
  // Advertisers check refunds against public totals.
  void advertiser_checks();
  // Waits out the complaint window and settles the fee.
  void close();

  CampaignResult run();
  CampaignResult result() const;

  Ledger& ledger() { return ledger_; }
  const ContractIds& ids() const { return ids_; }
  const CampaignPlan& plan() const { return plan_; }
  CampaignFacilitator& cf() { return cf_; }
  std::vector<Advertiser>& advertisers() { return advertisers_; }
  std::vector<UserSession>& sessions() { return sessions_; }
  std::vector<PoolMember>& pool() { return pool_; }
  const contracts::PolicyContract& psc() const;
  const contracts::FundContract& fsc() const;
  const contracts::NoteRegistry& notes() const;

  // Which members post partial decryptions; defaults to the first k.
  void set_analytics_posters(std::vector<std::uint32_t> ids) { posters_ = std::move(ids); }

 private:
  class PhaseTimer;
  PoolMember& member_by_id(std::uint32_t id);

  Ledger& ledger_;
  CampaignPlan plan_;
  std::vector<InteractionVector> users_;
  Misbehavior mis_;
  ContractIds ids_;
  Rng rng_;
  CampaignFacilitator cf_;
  std::vector<Advertiser> advertisers_;
  std::vector<UserSession> sessions_;
  std::vector<PoolMember> pool_;
  std::vector<std::uint32_t> posters_;
  std::vector<SettlementInstruction> settlement_;
  std::map<std::string, std::uint64_t> balances_before_;
  std::uint64_t draw_rounds_ = 0;
  std::map<std::string, double> phase_seconds_;
  std::string aborted_;
};

// Keys every actor of a campaign derives from the seed.
struct ActorKeys {
  KeyPair cf;
  std::map<std::string, KeyPair> advertisers;
  std::vector<KeyPair> registrants;
};
ActorKeys derive_actor_keys(const CampaignPlan& plan, std::uint64_t seed);

// Client-side pieces, usable on their own.
struct ClaimVectors {
  std::vector<Ciphertext> enc_vec;
  std::vector<Ciphertext> enc_vec_prime;
};
ClaimVectors encrypt_interactions(const UserSession& session, const GroupElement& pk_t,
                                  std::uint64_t interaction_cap, Rng& rng);
// Submits both vectors, fetches Aggr.Res and checks the consortium signature,
// re-requesting on a bad signature. Returns the aggregate.
Ciphertext user_claim(Ledger& ledger, const ContractIds& ids, UserSession& session,
                      std::uint64_t interaction_cap, Rng& rng);
// Decrypts, recovers and proves, then submits the private payment request.
contracts::PaymentRequestTuple build_payment_request(const UserSession& session,
                                                     std::uint64_t max_policy);
void user_payment_request(Ledger& ledger, const ContractIds& ids, UserSession& session,
                          std::uint64_t max_policy, Rng& rng);

struct CohortTiming {
  double client_encrypt = 0;
  double aggregate = 0;
  double client_request = 0;
  double payment_request = 0;
  double total() const { return client_encrypt + aggregate + client_request + payment_request; }
};
// Phases 2 and 3 for a group of users: client-side work runs concurrently,
// ledger submissions go in session order.
CohortTiming process_cohort(Ledger& ledger, const ContractIds& ids, std::span<UserSession> sessions,
                            const CampaignPlan& plan, Rng& rng);

// Plaintext oracles.
std::uint64_t dot_product(const std::vector<std::uint64_t>& policies, const std::vector<std::uint64_t>& counts);

}  // namespace themis::actors

#endif  // THEMIS_ACTORS_CAMPAIGN_HPP_
