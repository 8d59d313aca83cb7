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

#ifndef THEMIS_CONTRACTS_FUND_CONTRACT_HPP_
#define THEMIS_CONTRACTS_FUND_CONTRACT_HPP_

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "themis/contracts/messages.hpp"
#include "themis/ledger/contract.hpp"

namespace themis::contracts {

struct AdTerms {
  std::string advertiser;
  std::uint64_t impressions = 0;
};

struct FundContractParams {
  GroupElement cf_pk;
  std::string psc_id;
  std::string notes_id;
  std::uint64_t fee = 0;  // ω
  std::vector<AdTerms> ads;
  std::uint64_t epoch_end = 0;         // block height
  std::uint64_t complaint_window = 0;  // blocks after refunds before fees are payable

  json to_json() const;
  static FundContractParams from_json(const json& j);
};

// ω split pro-rata to each advertiser's budget value Σ impressions·𝒫, with
// the rounding remainder assigned to the last advertiser of the catalog.
std::map<std::string, std::uint64_t> apportion_fee(const std::vector<AdTerms>& ads,
                                                   const std::vector<std::uint64_t>& policies,
                                                   std::uint64_t fee);

struct AdvertiserAccount {
  Address account;
  bool funded = false;
  std::uint64_t deposit = 0;     // ℱ[id]
  std::uint64_t fee_share = 0;
  std::uint64_t refund_due = 0;
  std::uint64_t refund_paid = 0;
  std::uint64_t deficit = 0;     // refund_due - refund_paid
  std::uint64_t overspend = 0;   // spent beyond deposit - fee_share
  std::uint64_t fee_returned = 0;
};

struct QueuedRequest {
  Address addr;
  // Amount for the CF to settle, sealed to cf_pk.
  WrappedKey for_cf;
  // QueuedRequestRecord sealed to the consortium key, for complaints.
  WrappedKey for_validators;
};

// Fund Smart Contract: escrow, settlement bookkeeping, analytics results,
// refunds, fees and complaints.
class FundContract : public ledger::Contract {
 public:
  FundContract(ledger::CallContext& ctx, FundContractParams params);

  std::string_view kind() const override { return kFundContractKind; }
  std::unique_ptr<Contract> clone() const override { return std::make_unique<FundContract>(*this); }
  Bytes invoke(ledger::CallContext& ctx, std::string_view method, ByteSpan args) override;
  json storage_json() const override;

  const std::string& id() const { return self_id_; }
  const FundContractParams& params() const { return params_; }
  bool initialized() const { return initialized_; }
  bool ended(const ledger::CallContext& ctx) const;
  bool ended_at(std::uint64_t block_height) const;
  const std::vector<std::string>& advertisers() const { return advertisers_; }
  const std::map<std::string, AdvertiserAccount>& accounts() const { return accounts_; }
  const std::vector<QueuedRequest>& payment_requests() const { return requests_; }
  const std::set<Address>& paid_requests() const { return paid_; }
  const std::vector<std::uint64_t>& aggr_clicks() const { return aggr_clicks_; }
  bool clicks_final() const { return clicks_final_; }
  const std::optional<std::vector<Ciphertext>>& encrypted_clicks() const { return encrypted_clicks_; }
  const std::map<std::uint32_t, std::vector<dkg::PartialDecryption>>& partials() const { return partials_; }
  bool refunded() const { return refunded_; }
  bool fees_paid() const { return fees_paid_; }
  bool fees_returned() const { return fees_returned_; }
  bool cf_flagged_dishonest() const { return cf_flagged_; }
  bool state_failed() const { return state_failed_; }
  std::uint64_t settlement_count() const { return settlement_counter_; }
  std::uint64_t withdrawn() const { return withdrawn_; }
  const std::vector<json>& complaints() const { return complaints_; }

  // Deposit required from an advertiser: Σ impressions·𝒫 over its ads plus
  // its fee share. Validator-side, since 𝒫 is sealed.
  std::uint64_t required_deposit(const ledger::CallContext& ctx, const std::string& adv_id) const;
  std::map<std::string, std::uint64_t> fee_shares(const ledger::CallContext& ctx) const;

  // Called by the PSC once a payment request has been verified.
  void enqueue_payment(ledger::CallContext& ctx, const Address& addr, const QueuedRequestRecord& record);

 private:
  void store_adv_id(ledger::CallContext& ctx, ByteReader& r);
  void store_funds(ledger::CallContext& ctx, ByteReader& r);
  void settlement_request(ledger::CallContext& ctx, ByteReader& r);
  void payment_processed(ledger::CallContext& ctx, ByteReader& r);
  void post_partials(ledger::CallContext& ctx, ByteReader& r);
  void store_aggr_clicks(ledger::CallContext& ctx, ByteReader& r);
  void pay_processing_fees(ledger::CallContext& ctx);
  void return_fees(ledger::CallContext& ctx);
  void raise_complaint(ledger::CallContext& ctx, ByteReader& r);
  bool claim_insufficient_refund(ledger::CallContext& ctx, ByteReader& r);

  bool maybe_finalize(ledger::CallContext& ctx);
  void refund_advertisers(ledger::CallContext& ctx);
  std::uint64_t spent_by(const ledger::CallContext& ctx, const std::string& adv_id) const;
  void flag_cf(ledger::CallContext& ctx, json evidence);
  std::vector<std::string> catalog_advertisers() const;

  std::string self_id_;
  FundContractParams params_;
  bool initialized_ = false;
  std::vector<std::string> advertisers_;
  std::map<std::string, AdvertiserAccount> accounts_;
  std::vector<QueuedRequest> requests_;
  std::map<Address, std::size_t> request_index_;
  std::set<Address> paid_;
  std::uint64_t settlement_counter_ = 0;
  std::uint64_t withdrawn_ = 0;
  std::vector<std::uint64_t> aggr_clicks_;
  std::uint64_t clicks_round_ = 0;
  bool clicks_final_ = false;
  std::optional<std::vector<Ciphertext>> encrypted_clicks_;
  std::map<std::uint32_t, std::vector<dkg::PartialDecryption>> partials_;
  bool refunded_ = false;
  std::uint64_t refunded_at_ = 0;
  bool fees_paid_ = false;
  bool fees_returned_ = false;
  bool cf_flagged_ = false;
  bool state_failed_ = false;
  std::vector<json> complaints_;
};

}  // namespace themis::contracts

#endif  // THEMIS_CONTRACTS_FUND_CONTRACT_HPP_
