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

#ifndef THEMIS_ACTORS_ROLES_HPP_
#define THEMIS_ACTORS_ROLES_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "themis/contracts/registry.hpp"
#include "themis/crypto/rng.hpp"
#include "themis/ledger/ledger.hpp"
#include "themis/payments/notes.hpp"

namespace themis::actors {

using contracts::AggregateRecord;
using crypto::Ciphertext;
using crypto::GroupElement;
using crypto::KeyPair;
using crypto::Rng;
using crypto::Scalar;
using ledger::Address;
using ledger::json;
using ledger::Ledger;

struct CatalogEntry {
  std::string ad_id;
  std::string advertiser;
  std::uint64_t impressions = 0;
};

// Indices align with the policy vector and with every interaction vector.
struct AdCatalog {
  std::vector<CatalogEntry> entries;

  std::size_t size() const { return entries.size(); }
  // Advertiser ids in order of first appearance.
  std::vector<std::string> advertisers() const;
  std::vector<contracts::AdTerms> terms() const;
};

struct InteractionVector {
  std::vector<std::uint64_t> counts;
};

struct Windows {
  std::uint64_t epoch = 100000;     // blocks from deployment to campaign end
  std::uint64_t registration = 2;   // pool registration window
  std::uint64_t draw = 1;
  std::uint64_t complaint = 4;
};

struct PoolPlan {
  std::size_t registrants = 5;
  std::uint64_t expected_participants = 3;  // n_cp
  std::uint32_t threshold = 0;              // 0 selects a majority
};

struct CampaignPlan {
  AdCatalog catalog;
  std::vector<std::uint64_t> policies;  // 𝒫
  std::uint64_t fee = 0;                 // ω
  Windows windows;
  PoolPlan pool;
  // Public upper bound on any policy entry; clients size plaintext recovery with it.
  std::uint64_t max_policy = 256;
  std::uint64_t interaction_cap = 256;
  // Tokens each advertiser holds at genesis beyond its required deposit.
  std::uint64_t advertiser_slack = 0;

  // Throws Error(kInvalidConfig).
  void validate() const;
  // Σ impressions·𝒫 over the advertiser's ads plus its fee share.
  std::uint64_t required_deposit(const std::string& advertiser) const;
};

struct ContractIds {
  std::string psc = "psc";
  std::string fsc = "fsc";
  std::string notes = "notes";
};

class Advertiser {
 public:
  Advertiser(std::string id, const KeyPair& key) : id_(std::move(id)), key_(key) {}

  const std::string& id() const { return id_; }
  const KeyPair& key() const { return key_; }
  Address account() const { return Address::from_pk(key_.pk); }

  // Off-chain agreement with the CF: catalog index -> policy value.
  void agree(const GroupElement& cf_pk, std::map<std::uint32_t, std::uint64_t> policies);
  const std::map<std::uint32_t, std::uint64_t>& agreed() const { return agreed_; }

  // Re-opens this advertiser's sealed entries in the PSC. Throws
  // Error(kPolicyMismatch) if any entry is missing, unreadable or different.
  void verify_policies(const contracts::PolicyContract& psc) const;
  // Spend implied by public per-ad totals for this advertiser's ads.
  std::uint64_t spend(const std::vector<std::uint64_t>& aggr_clicks) const;
  // Recomputes Σ EncVec' from the public log and checks the FSC's sums and
  // every posted partial decryption.
  bool verify_analytics(const contracts::PolicyContract& psc, const contracts::FundContract& fsc) const;

 private:
  std::string id_;
  KeyPair key_;
  GroupElement cf_pk_;
  std::map<std::uint32_t, std::uint64_t> agreed_;
};

// Element-wise homomorphic sum of EncVec' vectors.
std::vector<Ciphertext> sum_enc_vec_prime(
    const std::vector<std::shared_ptr<const std::vector<Ciphertext>>>& log, std::size_t n_ads,
    std::optional<std::size_t> omit = std::nullopt);

struct UserSession {
  // Fresh per payout period.
  KeyPair ephemeral;
  KeyPair payout;
  InteractionVector interactions;
  std::optional<AggregateRecord> aggregate;
  std::uint64_t dec_result = 0;
  std::optional<payments::TxRef> note_ref;
  std::optional<payments::NoteOpening> opening;
  bool complained = false;

  static UserSession create(InteractionVector interactions, Rng& rng);
  Address addr() const { return Address::from_pk(payout.pk); }
};

struct PoolMember {
  KeyPair key;  // VRF key, DKG share-encryption key and co-signing key
  std::uint32_t id = 0;
  std::optional<dkg::ThresholdKeyMaterial> material;
};

struct SettlementInstruction {
  Address addr;
  std::uint64_t amount = 0;
  payments::TxRef tx_ref{};
  payments::NoteOpening opening;
};

class CampaignFacilitator {
 public:
  explicit CampaignFacilitator(const KeyPair& key) : key_(key) {}

  const KeyPair& key() const { return key_; }
  Address account() const { return Address::from_pk(key_.pk); }
  payments::PayerLedger& payer() { return payer_; }

  // Amount of every queued, unpaid request, in queue order.
  std::vector<std::pair<Address, std::uint64_t>> pending_requests(const contracts::FundContract& fsc) const;

 private:
  KeyPair key_;
  payments::PayerLedger payer_;
};

// Runs fn(i) for i in [0, n) on up to hardware_concurrency threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace themis::actors

#endif  // THEMIS_ACTORS_ROLES_HPP_
