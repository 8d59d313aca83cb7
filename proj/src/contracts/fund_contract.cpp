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

#include "themis/contracts/fund_contract.hpp"

#include <algorithm>

#include "themis/contracts/note_registry.hpp"
#include "themis/contracts/policy_contract.hpp"
#include "themis/crypto/transcript.hpp"

namespace themis::contracts {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > UINT64_MAX - b) throw Error(Errc::kAmountOutOfRange, "overflow");
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) throw Error(Errc::kAmountOutOfRange, "overflow");
  return a * b;
}

}  // namespace

std::map<std::string, std::uint64_t> apportion_fee(const std::vector<AdTerms>& ads,
                                                   const std::vector<std::uint64_t>& policies,
                                                   std::uint64_t fee) {
  if (policies.size() != ads.size()) throw Error(Errc::kLengthMismatch, "policies vs catalog");
  std::vector<std::string> order;
  std::map<std::string, unsigned __int128> value;
  unsigned __int128 total = 0;
  for (std::size_t i = 0; i < ads.size(); ++i) {
    if (!value.count(ads[i].advertiser)) order.push_back(ads[i].advertiser);
    unsigned __int128 v = static_cast<unsigned __int128>(ads[i].impressions) * policies[i];
    value[ads[i].advertiser] += v;
    total += v;
  }
  std::map<std::string, std::uint64_t> shares;
  if (order.empty()) return shares;
  std::uint64_t assigned = 0;
  for (std::size_t a = 0; a + 1 < order.size(); ++a) {
    auto s = total == 0 ? 0 : static_cast<std::uint64_t>(value[order[a]] * fee / total);
    shares[order[a]] = s;
    assigned += s;
  }
  shares[order.back()] = fee - assigned;
  return shares;
}

json FundContractParams::to_json() const {
  json ad_list = json::array();
  for (const auto& a : ads) ad_list.push_back({{"advertiser", a.advertiser}, {"impressions", a.impressions}});
  return {{"cf_pk", to_hex(ByteSpan(cf_pk.to_bytes()))},
          {"psc", psc_id},
          {"notes", notes_id},
          {"fee", fee},
          {"ads", std::move(ad_list)},
          {"epoch_end", epoch_end},
          {"complaint_window", complaint_window}};
}

FundContractParams FundContractParams::from_json(const json& j) {
  try {
    FundContractParams p;
    p.cf_pk = GroupElement::from_bytes(themis::from_hex(j.at("cf_pk").get<std::string>()));
    p.psc_id = j.at("psc").get<std::string>();
    p.notes_id = j.at("notes").get<std::string>();
    p.fee = j.value("fee", std::uint64_t{0});
    for (const auto& a : j.at("ads")) {
      p.ads.push_back({a.at("advertiser").get<std::string>(), a.at("impressions").get<std::uint64_t>()});
    }
    p.epoch_end = j.value("epoch_end", std::uint64_t{0});
    p.complaint_window = j.value("complaint_window", std::uint64_t{0});
    return p;
  } catch (const json::exception& e) {
    throw Error(Errc::kMalformedCall, e.what());
  }
}

FundContract::FundContract(ledger::CallContext& ctx, FundContractParams params)
    : self_id_(ctx.self_id()), params_(std::move(params)) {
  if (ctx.sender() != Address::from_pk(params_.cf_pk)) {
    throw Error(Errc::kUnauthorized, "the FSC is deployed by the CF");
  }
  if (params_.ads.empty()) throw Error(Errc::kInvalidConfig, "empty ad catalog");
  aggr_clicks_.assign(params_.ads.size(), 0);
}

Bytes FundContract::invoke(ledger::CallContext& ctx, std::string_view method, ByteSpan args) {
  ByteReader r(args);
  Bytes out;
  if (method == "store_adv_id") {
    store_adv_id(ctx, r);
  } else if (method == "store_funds") {
    store_funds(ctx, r);
  } else if (method == "settlement_request") {
    settlement_request(ctx, r);
  } else if (method == "payment_processed") {
    payment_processed(ctx, r);
  } else if (method == "post_partials") {
    post_partials(ctx, r);
  } else if (method == "store_aggr_clicks") {
    store_aggr_clicks(ctx, r);
  } else if (method == "finalize") {
    if (!maybe_finalize(ctx)) throw Error(Errc::kCampaignNotComplete);
  } else if (method == "pay_processing_fees") {
    pay_processing_fees(ctx);
  } else if (method == "return_fees") {
    return_fees(ctx);
  } else if (method == "raise_complaint") {
    raise_complaint(ctx, r);
  } else if (method == "claim_insufficient_refund") {
    out.push_back(claim_insufficient_refund(ctx, r) ? 1 : 0);
  } else {
    throw Error(Errc::kUnknownMethod, std::string(method));
  }
  r.expect_done();
  return out;
}

bool FundContract::ended_at(std::uint64_t block_height) const {
  if (block_height >= params_.epoch_end) return true;
  if (!clicks_final_) return false;
  for (std::size_t i = 0; i < params_.ads.size(); ++i) {
    if (aggr_clicks_[i] < params_.ads[i].impressions) return false;
  }
  return true;
}

bool FundContract::ended(const ledger::CallContext& ctx) const { return ended_at(ctx.block_height()); }

std::vector<std::string> FundContract::catalog_advertisers() const {
  std::vector<std::string> out;
  for (const auto& a : params_.ads) {
    if (std::find(out.begin(), out.end(), a.advertiser) == out.end()) out.push_back(a.advertiser);
  }
  return out;
}

void FundContract::store_adv_id(ledger::CallContext& ctx, ByteReader& r) {
  std::string id = r.str();
  if (ctx.sender() != Address::from_pk(params_.cf_pk)) throw Error(Errc::kUnauthorized, "store_adv_id");
  if (initialized_) throw Error(Errc::kAlreadyInitialized);
  if (accounts_.count(id)) throw Error(Errc::kDuplicateAdvertiser, id);
  advertisers_.push_back(id);
  accounts_.emplace(id, AdvertiserAccount{});
}

std::map<std::string, std::uint64_t> FundContract::fee_shares(const ledger::CallContext& ctx) const {
  const auto& policies = ctx.contract_as<const PolicyContract>(params_.psc_id).validator_policies(ctx);
  return apportion_fee(params_.ads, policies, params_.fee);
}

std::uint64_t FundContract::required_deposit(const ledger::CallContext& ctx,
                                             const std::string& adv_id) const {
  const auto& policies = ctx.contract_as<const PolicyContract>(params_.psc_id).validator_policies(ctx);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < params_.ads.size(); ++i) {
    if (params_.ads[i].advertiser == adv_id) {
      sum = checked_add(sum, checked_mul(params_.ads[i].impressions, policies[i]));
    }
  }
  auto shares = fee_shares(ctx);
  auto it = shares.find(adv_id);
  return checked_add(sum, it == shares.end() ? 0 : it->second);
}

void FundContract::store_funds(ledger::CallContext& ctx, ByteReader& r) {
  std::string id = r.str();
  std::uint64_t amount = r.u64();
  auto it = accounts_.find(id);
  if (it == accounts_.end()) throw Error(Errc::kUnknownAdvertiser, id);
  if (initialized_ || it->second.funded) throw Error(Errc::kInvalidState, "already funded");
  std::uint64_t required = required_deposit(ctx, id);
  if (amount < required) {
    throw Error(Errc::kInsufficientFunds, "deposit " + std::to_string(amount) + " < required " +
                                              std::to_string(required));
  }
  ctx.collect(amount);
  auto shares = fee_shares(ctx);
  AdvertiserAccount& acc = it->second;
  acc.account = ctx.sender();
  acc.funded = true;
  acc.deposit = amount;
  acc.fee_share = shares.count(id) ? shares.at(id) : 0;
  ctx.emit("FundsStored", {{"advertiser", id}, {"amount", amount}});

  bool all = std::all_of(accounts_.begin(), accounts_.end(), [](const auto& kv) { return kv.second.funded; });
  for (const auto& adv : catalog_advertisers()) all = all && accounts_.count(adv);
  if (all) {
    initialized_ = true;
    ctx.emit("CampaignInitialised", json::object());
  }
}

void FundContract::enqueue_payment(ledger::CallContext& ctx, const Address& addr,
                                   const QueuedRequestRecord& record) {
  if (!initialized_) throw Error(Errc::kNotInitialized);
  if (refunded_) throw Error(Errc::kInvalidState, "campaign finalized");
  if (request_index_.count(addr)) throw Error(Errc::kDuplicateAddress, "payment address already used");
  ByteWriter seed;
  seed.fixed(ctx.block_context()).u64(ctx.sequence_no()).fixed(addr.id);
  Bytes s = crypto::hash_bytes("themis/fsc-request-seal/v1", seed.bytes(), 32);
  ByteWriter amount;
  amount.u64(record.amount);
  QueuedRequest q;
  q.addr = addr;
  q.for_cf = crypto::hybrid_wrap(params_.cf_pk, amount.bytes(), crypto::hash_bytes("cf", s, 32));
  q.for_validators = crypto::hybrid_wrap(ctx.validator_key().pk, record.to_bytes(),
                                         crypto::hash_bytes("validators", s, 32));
  request_index_.emplace(addr, requests_.size());
  requests_.push_back(std::move(q));
  ctx.emit("PaymentQueued", {{"addr", addr.hex()}});
}

void FundContract::settlement_request(ledger::CallContext& ctx, ByteReader& r) {
  std::uint64_t tau = r.u64();
  auto sig = Signature::from_bytes(r.raw(Signature::kSize));
  if (!crypto::verify_sig(params_.cf_pk, settlement_message(self_id_, settlement_counter_, tau), sig)) {
    throw Error(Errc::kBadSignature, "settlement request");
  }
  if (!initialized_) throw Error(Errc::kNotInitialized);
  ctx.pay(Address::from_pk(params_.cf_pk), tau);
  ++settlement_counter_;
  withdrawn_ += tau;
  ctx.emit("SettlementReleased", {{"tau", tau}});
}

void FundContract::payment_processed(ledger::CallContext& ctx, ByteReader& r) {
  auto tx_ref = r.fixed<32>();
  Address addr;
  addr.id = r.fixed<Address::kSize>();
  const auto* note = ctx.contract_as<const NoteRegistry>(params_.notes_id).find(tx_ref);
  if (note == nullptr) throw Error(Errc::kUnknownTxRef, to_hex(ByteSpan(tx_ref)));
  if (!request_index_.count(addr)) throw Error(Errc::kUnknownAddr, addr.hex());
  if (note->note.recipient != addr) throw Error(Errc::kUnknownAddr, "note pays a different address");
  if (!paid_.insert(addr).second) return;
  ctx.emit("PaymentProcessed", {{"addr", addr.hex()}, {"tx_ref", to_hex(ByteSpan(tx_ref))}});
  maybe_finalize(ctx);
}

void FundContract::post_partials(ledger::CallContext& ctx, ByteReader& r) {
  std::uint32_t member = r.u32();
  std::uint32_t n = r.u32();
  if (n > r.remaining()) throw Error(Errc::kInvalidEncoding, "partial count");
  std::vector<dkg::PartialDecryption> parts;
  for (std::uint32_t i = 0; i < n; ++i) parts.push_back(dkg::PartialDecryption::from_bytes(r.var()));

  const auto& psc = ctx.contract_as<const PolicyContract>(params_.psc_id);
  if (!psc.pool_key()) throw Error(Errc::kInvalidState, "pool key not published");
  if (!ended(ctx)) throw Error(Errc::kCampaignNotComplete, "analytics run after the campaign ends");
  if (member < 1 || member > psc.members().size() || !(psc.members()[member - 1] == ctx.sender_pk())) {
    throw Error(Errc::kUnauthorized, "not pool member " + std::to_string(member));
  }
  if (parts.size() != params_.ads.size()) throw Error(Errc::kLengthMismatch, "one partial per ad");
  if (partials_.count(member)) throw Error(Errc::kInvalidState, "partials already posted");
  if (!encrypted_clicks_) {
    std::vector<Ciphertext> sums(params_.ads.size(), Ciphertext{});
    for (const auto& v : psc.enc_vec_prime_log()) {
      for (std::size_t i = 0; i < sums.size(); ++i) sums[i] = sums[i] + (*v)[i];
    }
    encrypted_clicks_ = std::move(sums);
  }
  const GroupElement& commitment = psc.share_commitments()[member - 1];
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].participant_id != member || !dkg::verify_partial((*encrypted_clicks_)[i], parts[i], commitment)) {
      throw Error(Errc::kInvalidPartial, "ad " + std::to_string(i));
    }
  }
  partials_.emplace(member, std::move(parts));
  ctx.emit("PartialsPosted", {{"member", member}});
}

void FundContract::store_aggr_clicks(ledger::CallContext& ctx, ByteReader& r) {
  bool final_round = r.u8() != 0;
  std::uint32_t n = r.u32();
  if (n > r.remaining() / 8) throw Error(Errc::kInvalidEncoding, "value count");
  std::vector<std::uint64_t> values(n);
  for (auto& v : values) v = r.u64();
  auto sigs = decode_signatures(r);

  const auto& psc = ctx.contract_as<const PolicyContract>(params_.psc_id);
  if (clicks_final_) throw Error(Errc::kInvalidState, "clicks already final");
  psc.check_cosignatures(aggr_clicks_message(self_id_, clicks_round_, values, final_round), sigs);
  if (values.size() != params_.ads.size()) throw Error(Errc::kLengthMismatch, "one value per ad");
  for (std::size_t i = 0; i < values.size(); ++i) aggr_clicks_[i] = checked_add(aggr_clicks_[i], values[i]);
  ++clicks_round_;
  if (final_round) {
    const auto k = psc.pool_config().k;
    if (partials_.size() < k || !encrypted_clicks_) {
      throw Error(Errc::kInsufficientShares, std::to_string(partials_.size()) + " of " + std::to_string(k));
    }
    std::vector<const std::vector<dkg::PartialDecryption>*> chosen;
    for (const auto& [id, parts] : partials_) {
      if (chosen.size() < k) chosen.push_back(&parts);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::vector<dkg::PartialDecryption> at_i;
      for (const auto* parts : chosen) at_i.push_back((*parts)[i]);
      if (!(dkg::interpolate_partials((*encrypted_clicks_)[i], at_i) == GroupElement::base_mul(aggr_clicks_[i]))) {
        throw Error(Errc::kProofRejected, "aggregate clicks disagree with threshold decryption at ad " +
                                              std::to_string(i));
      }
    }
    clicks_final_ = true;
  }
  ctx.emit("AggrClicksStored", {{"final", final_round}});
  if (clicks_final_) maybe_finalize(ctx);
}

bool FundContract::maybe_finalize(ledger::CallContext& ctx) {
  if (refunded_) return false;
  if (!initialized_ || !ended(ctx) || !clicks_final_ || paid_.size() != requests_.size()) return false;
  refund_advertisers(ctx);
  return true;
}

std::uint64_t FundContract::spent_by(const ledger::CallContext& ctx, const std::string& adv_id) const {
  const auto& policies = ctx.contract_as<const PolicyContract>(params_.psc_id).validator_policies(ctx);
  std::uint64_t sp = 0;
  for (std::size_t i = 0; i < params_.ads.size(); ++i) {
    if (params_.ads[i].advertiser == adv_id) sp = checked_add(sp, checked_mul(policies[i], aggr_clicks_[i]));
  }
  return sp;
}

void FundContract::refund_advertisers(ledger::CallContext& ctx) {
  for (const auto& id : advertisers_) {
    AdvertiserAccount& acc = accounts_.at(id);
    std::uint64_t sp = spent_by(ctx, id);
    std::uint64_t gross = acc.deposit - acc.fee_share;
    if (sp > gross) {
      acc.overspend = sp - gross;
      acc.refund_due = 0;
    } else {
      acc.refund_due = gross - sp;
    }
    std::uint64_t balance = ctx.balance(ctx.self_address());
    std::uint64_t available = balance > params_.fee ? balance - params_.fee : 0;
    acc.refund_paid = std::min(acc.refund_due, available);
    acc.deficit = acc.refund_due - acc.refund_paid;
    ctx.pay(acc.account, acc.refund_paid);
  }
  refunded_ = true;
  refunded_at_ = ctx.block_height();
  ctx.emit("AdvertisersRefunded", json::object());
}

void FundContract::pay_processing_fees(ledger::CallContext& ctx) {
  if (!refunded_ || ctx.block_height() < refunded_at_ + params_.complaint_window) {
    throw Error(Errc::kCampaignNotComplete, "fees are payable after the complaint window");
  }
  if (state_failed_) throw Error(Errc::kCampaignFailed);
  if (fees_paid_) throw Error(Errc::kInvalidState, "fees already paid");
  ctx.pay(Address::from_pk(params_.cf_pk), params_.fee);
  fees_paid_ = true;
  ctx.emit("ProcessingFeesPaid", {{"fee", params_.fee}});
}

void FundContract::return_fees(ledger::CallContext& ctx) {
  if (!state_failed_) throw Error(Errc::kInvalidState, "campaign did not fail");
  if (!refunded_) throw Error(Errc::kCampaignNotComplete);
  if (fees_paid_ || fees_returned_) throw Error(Errc::kInvalidState, "fees already settled");
  for (const auto& id : advertisers_) {
    AdvertiserAccount& acc = accounts_.at(id);
    acc.fee_returned = std::min(acc.fee_share, ctx.balance(ctx.self_address()));
    ctx.pay(acc.account, acc.fee_returned);
  }
  fees_returned_ = true;
  ctx.emit("ProcessingFeesReturned", json::object());
}

void FundContract::flag_cf(ledger::CallContext& ctx, json evidence) {
  cf_flagged_ = true;
  state_failed_ = true;
  ctx.emit("CfFlaggedDishonest", evidence);
  complaints_.push_back(std::move(evidence));
}

void FundContract::raise_complaint(ledger::CallContext& ctx, ByteReader& r) {
  auto user_pk = GroupElement::from_bytes(r.raw(32));
  auto tx_ref = r.fixed<32>();
  Scalar blind = Scalar::from_bytes(r.raw(32));
  std::uint64_t l = r.u64();
  const auto* note = ctx.contract_as<const NoteRegistry>(params_.notes_id).find(tx_ref);
  if (note == nullptr) throw Error(Errc::kUnknownTxRef, to_hex(ByteSpan(tx_ref)));
  if (!payments::verify_opening(note->note, blind, l)) throw Error(Errc::kBadOpening);
  auto idx = request_index_.find(note->note.recipient);
  if (idx == request_index_.end()) throw Error(Errc::kNoSuchRequest, "no request for the note recipient");
  auto record = QueuedRequestRecord::from_bytes(
      crypto::hybrid_unwrap(ctx.validator_key().sk, requests_[idx->second].for_validators));
  if (!(record.user_pk == user_pk)) throw Error(Errc::kNoSuchRequest, "request belongs to another user");
  if (record.amount == l) throw Error(Errc::kComplaintRejected, "payment matches the request");
  flag_cf(ctx, {{"kind", "underpayment"},
                {"addr", note->note.recipient.hex()},
                {"tx_ref", to_hex(ByteSpan(tx_ref))},
                {"expected", record.amount},
                {"paid", l},
                {"r", to_hex(ByteSpan(blind.bytes()))}});
}

bool FundContract::claim_insufficient_refund(ledger::CallContext& ctx, ByteReader& r) {
  std::string id = r.str();
  auto it = accounts_.find(id);
  if (it == accounts_.end()) throw Error(Errc::kUnknownAdvertiser, id);
  if (!refunded_) throw Error(Errc::kCampaignNotComplete);
  const AdvertiserAccount& acc = it->second;
  unsigned __int128 accounted = static_cast<unsigned __int128>(spent_by(ctx, id)) + acc.refund_paid + acc.fee_share;
  if (accounted == acc.deposit) return false;
  flag_cf(ctx, {{"kind", "insufficient_refund"},
                {"advertiser", id},
                {"deposit", acc.deposit},
                {"refund_paid", acc.refund_paid},
                {"deficit", acc.deficit}});
  return true;
}

json FundContract::storage_json() const {
  json advs = json::array();
  for (const auto& id : advertisers_) {
    const auto& a = accounts_.at(id);
    advs.push_back({{"id", id},
                    {"account", a.account.hex()},
                    {"funded", a.funded},
                    {"deposit", a.deposit},
                    {"fee_share", a.fee_share},
                    {"refund_paid", a.refund_paid},
                    {"deficit", a.deficit},
                    {"overspend", a.overspend},
                    {"fee_returned", a.fee_returned}});
  }
  json reqs = json::array();
  for (const auto& q : requests_) {
    reqs.push_back({{"addr", q.addr.hex()},
                    {"for_cf", to_hex(q.for_cf.to_bytes())},
                    {"for_validators", to_hex(q.for_validators.to_bytes())}});
  }
  json paid = json::array();
  for (const auto& a : paid_) paid.push_back(a.hex());
  json posted = json::array();
  for (const auto& [id, p] : partials_) posted.push_back(id);
  return {{"init", initialized_},
          {"advertisers", std::move(advs)},
          {"fee", params_.fee},
          {"payment_requests", std::move(reqs)},
          {"paid_requests", std::move(paid)},
          {"settlements", settlement_counter_},
          {"withdrawn", withdrawn_},
          {"aggr_clicks", aggr_clicks_},
          {"clicks_rounds", clicks_round_},
          {"clicks_final", clicks_final_},
          {"partials_posted", std::move(posted)},
          {"refunded", refunded_},
          {"refunded_at", refunded_at_},
          {"fees_paid", fees_paid_},
          {"fees_returned", fees_returned_},
          {"cf_flagged_dishonest", cf_flagged_},
          {"state_failed", state_failed_},
          {"complaints", complaints_}};
}

}  // namespace themis::contracts
