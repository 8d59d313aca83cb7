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

#ifndef THEMIS_CONTRACTS_POLICY_CONTRACT_HPP_
#define THEMIS_CONTRACTS_POLICY_CONTRACT_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "themis/contracts/messages.hpp"
#include "themis/ledger/contract.hpp"

namespace themis::contracts {

struct PoolParams {
  std::uint64_t expected_participants = 1;  // n_cp
  std::uint64_t registration_end = 0;       // block height
  std::uint64_t draw_window = 1;            // blocks between draw opening and sealing
  std::uint32_t threshold = 0;              // 0 selects a majority

  json to_json() const;
  static PoolParams from_json(const json& j);
};

struct PolicyContractParams {
  GroupElement cf_pk;
  std::string fsc_id;
  std::uint32_t n_ads = 0;
  PoolParams pool;

  json to_json() const;
  static PolicyContractParams from_json(const json& j);
};

// Policy Smart Contract: sealed policies, reward aggregation, payment
// requests and the consensus-pool draw.
class PolicyContract : public ledger::Contract {
 public:
  PolicyContract(ledger::CallContext& ctx, PolicyContractParams params);

  std::string_view kind() const override { return kPolicyContractKind; }
  std::unique_ptr<Contract> clone() const override { return std::make_unique<PolicyContract>(*this); }
  Bytes invoke(ledger::CallContext& ctx, std::string_view method, ByteSpan args) override;
  Bytes query(std::string_view method, ByteSpan args) const override;
  json storage_json() const override;

  const std::string& id() const { return self_id_; }
  const PolicyContractParams& params() const { return params_; }
  const std::vector<Bytes>& enc_policies() const { return enc_policies_; }
  const std::vector<WrappedKey>& enc_keys() const { return enc_keys_; }
  const AggregateRecord* aggregate(const GroupElement& user_pk) const;
  std::size_t aggregate_count() const { return aggregates_.size(); }
  // Every EncVec' submitted so far, in submission order.
  const std::vector<std::shared_ptr<const std::vector<Ciphertext>>>& enc_vec_prime_log() const {
    return enc_vec_prime_log_;
  }

  // Validator-side view of the plaintext policy vector. Throws
  // Error(kNotInitialized) until every entry and key is stored, and
  // Error(kAuthFailure) if an entry does not open.
  const std::vector<std::uint64_t>& validator_policies(const ledger::CallContext& ctx) const;

  // Consensus pool.
  const std::vector<GroupElement>& registrants() const { return registrants_; }
  bool registration_closed() const { return registration_closed_; }
  std::uint64_t draw_round() const { return draw_round_; }
  const Bytes& epsilon() const { return epsilon_; }
  vrf::DrawConfig draw_config() const;
  bool draw_sealed() const { return draw_sealed_; }
  // members()[id - 1] is the VRF key of DKG participant id.
  const std::vector<GroupElement>& members() const { return members_; }
  const dkg::ThresholdConfig& pool_config() const { return pool_cfg_; }
  const std::map<std::uint32_t, dkg::DealerRound>& dealer_rounds() const { return dealer_rounds_; }
  const std::optional<GroupElement>& pool_key() const { return pk_t_; }
  const std::vector<GroupElement>& share_commitments() const { return share_commitments_; }
  // Member ids holding a valid signature in `sigs` over `msg`. Throws
  // Error(kBadSignature) unless at least k distinct members signed.
  std::set<std::uint32_t> check_cosignatures(ByteSpan msg, const std::vector<Signature>& sigs) const;

 private:
  void store_policy(ledger::CallContext& ctx, ByteReader& r);
  void store_encrypted_keys(ledger::CallContext& ctx, ByteReader& r);
  void compute_aggregate(ledger::CallContext& ctx, ByteReader& r);
  void payment_request(ledger::CallContext& ctx);
  void register_candidate(ledger::CallContext& ctx);
  void close_registration(ledger::CallContext& ctx);
  void publish_draw(ledger::CallContext& ctx, ByteReader& r);
  bool seal_draw(ledger::CallContext& ctx);
  void post_dealer_round(ledger::CallContext& ctx, ByteReader& r);
  void publish_pool_key(ledger::CallContext& ctx, ByteReader& r);
  void open_draw_round(ledger::CallContext& ctx);
  std::uint32_t member_id(const GroupElement& pk) const;

  std::string self_id_;
  PolicyContractParams params_;
  std::vector<Bytes> enc_policies_;
  std::vector<WrappedKey> enc_keys_;
  std::map<GroupElement::Encoding, AggregateRecord> aggregates_;
  std::vector<std::shared_ptr<const std::vector<Ciphertext>>> enc_vec_prime_log_;
  std::array<std::uint8_t, 32> enc_vec_prime_digest_{};
  // Derived from sealed storage with the consortium key; never public.
  mutable std::optional<std::vector<std::uint64_t>> policy_cache_;

  std::vector<GroupElement> registrants_;
  std::set<GroupElement::Encoding> registrant_set_;
  bool registration_closed_ = false;
  std::uint64_t draw_round_ = 0;
  std::uint64_t draw_opened_at_ = 0;
  Bytes epsilon_;
  std::map<GroupElement::Encoding, vrf::VrfOutput> winners_;
  bool draw_sealed_ = false;
  std::vector<GroupElement> members_;
  dkg::ThresholdConfig pool_cfg_;
  std::map<std::uint32_t, dkg::DealerRound> dealer_rounds_;
  std::vector<std::uint32_t> disqualified_;
  std::optional<GroupElement> pk_t_;
  std::vector<GroupElement> share_commitments_;
};

}  // namespace themis::contracts

#endif  // THEMIS_CONTRACTS_POLICY_CONTRACT_HPP_
