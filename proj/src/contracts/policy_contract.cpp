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

#include "themis/contracts/policy_contract.hpp"

#include <algorithm>

#include "themis/contracts/fund_contract.hpp"
#include "themis/crypto/transcript.hpp"

namespace themis::contracts {

namespace {

GroupElement point_from_hex(const json& j) {
  Bytes b = themis::from_hex(j.get<std::string>());
  return GroupElement::from_bytes(b);
}

std::string hex(const GroupElement& p) { return to_hex(ByteSpan(p.to_bytes())); }

// Policies are frozen once advertisers have verified them and staked.
void require_unlocked(const ledger::CallContext& ctx, const std::string& fsc_id) {
  bool locked = false;
  try {
    locked = ctx.contract_as<const FundContract>(fsc_id).initialized();
  } catch (const Error& e) {
    if (e.code() != Errc::kUnknownContract) throw;
  }
  if (locked) throw Error(Errc::kAlreadyInitialized, "policies are frozen after funding");
}

}  // namespace

json PoolParams::to_json() const {
  return {{"n_cp", expected_participants},
          {"registration_end", registration_end},
          {"draw_window", draw_window},
          {"k", threshold}};
}

PoolParams PoolParams::from_json(const json& j) {
  PoolParams p;
  p.expected_participants = j.value("n_cp", std::uint64_t{1});
  p.registration_end = j.value("registration_end", std::uint64_t{0});
  p.draw_window = j.value("draw_window", std::uint64_t{1});
  p.threshold = j.value("k", std::uint32_t{0});
  return p;
}

json PolicyContractParams::to_json() const {
  return {{"cf_pk", hex(cf_pk)}, {"fsc", fsc_id}, {"n_ads", n_ads}, {"pool", pool.to_json()}};
}

PolicyContractParams PolicyContractParams::from_json(const json& j) {
  try {
    PolicyContractParams p;
    p.cf_pk = point_from_hex(j.at("cf_pk"));
    p.fsc_id = j.at("fsc").get<std::string>();
    p.n_ads = j.at("n_ads").get<std::uint32_t>();
    p.pool = PoolParams::from_json(j.value("pool", json::object()));
    return p;
  } catch (const json::exception& e) {
    throw Error(Errc::kMalformedCall, e.what());
  }
}

PolicyContract::PolicyContract(ledger::CallContext& ctx, PolicyContractParams params)
    : self_id_(ctx.self_id()), params_(std::move(params)) {
  if (ctx.sender() != Address::from_pk(params_.cf_pk)) {
    throw Error(Errc::kUnauthorized, "the PSC is deployed by the CF");
  }
  if (params_.n_ads == 0) throw Error(Errc::kInvalidConfig, "empty ad catalog");
  enc_policies_.resize(params_.n_ads);
}

Bytes PolicyContract::invoke(ledger::CallContext& ctx, std::string_view method, ByteSpan args) {
  ByteReader r(args);
  if (method == "store_policy") {
    store_policy(ctx, r);
  } else if (method == "store_encrypted_keys") {
    store_encrypted_keys(ctx, r);
  } else if (method == "compute_aggregate") {
    compute_aggregate(ctx, r);
  } else if (method == "payment_request") {
    payment_request(ctx);
  } else if (method == "register_candidate") {
    register_candidate(ctx);
  } else if (method == "close_registration") {
    close_registration(ctx);
  } else if (method == "publish_draw") {
    publish_draw(ctx, r);
  } else if (method == "seal_draw") {
    return Bytes{static_cast<std::uint8_t>(seal_draw(ctx) ? 1 : 0)};
  } else if (method == "post_dealer_round") {
    post_dealer_round(ctx, r);
  } else if (method == "publish_pool_key") {
    publish_pool_key(ctx, r);
  } else {
    throw Error(Errc::kUnknownMethod, std::string(method));
  }
  r.expect_done();
  return {};
}

void PolicyContract::store_policy(ledger::CallContext& ctx, ByteReader& r) {
  if (ctx.sender() != Address::from_pk(params_.cf_pk)) throw Error(Errc::kUnauthorized, "store_policy");
  require_unlocked(ctx, params_.fsc_id);
  std::uint32_t index = r.u32();
  Bytes sealed = r.var();
  if (index >= params_.n_ads) {
    throw Error(Errc::kIndexOutOfRange, std::to_string(index) + " >= " + std::to_string(params_.n_ads));
  }
  if (sealed.empty()) throw Error(Errc::kMalformedCall, "empty policy entry");
  enc_policies_[index] = std::move(sealed);
  policy_cache_.reset();
}

void PolicyContract::store_encrypted_keys(ledger::CallContext& ctx, ByteReader& r) {
  require_unlocked(ctx, params_.fsc_id);
  std::uint32_t n = r.u32();
  if (n > r.remaining()) throw Error(Errc::kInvalidEncoding, "key count");
  std::vector<WrappedKey> keys;
  for (std::uint32_t i = 0; i < n; ++i) keys.push_back(WrappedKey::from_bytes(r.var()));
  auto sig = Signature::from_bytes(r.raw(Signature::kSize));
  if (!crypto::verify_sig(params_.cf_pk, encrypted_keys_message(self_id_, keys), sig)) {
    throw Error(Errc::kBadSignature, "encrypted keys");
  }
  if (keys.size() != params_.n_ads) {
    throw Error(Errc::kLengthMismatch, "expected " + std::to_string(params_.n_ads) + " keys");
  }
  enc_keys_ = std::move(keys);
  policy_cache_.reset();
}

const std::vector<std::uint64_t>& PolicyContract::validator_policies(
    const ledger::CallContext& ctx) const {
  if (policy_cache_) return *policy_cache_;
  if (enc_keys_.size() != params_.n_ads) throw Error(Errc::kNotInitialized, "encrypted keys");
  std::vector<std::uint64_t> policies(params_.n_ads);
  // Advertisers share one key across their ads, so unwrap each distinct
  // wrapped key once.
  std::map<Bytes, crypto::SymmetricKey> unwrapped;
  for (std::uint32_t i = 0; i < params_.n_ads; ++i) {
    if (enc_policies_[i].empty()) throw Error(Errc::kNotInitialized, "policy " + std::to_string(i));
    Bytes wrapped = enc_keys_[i].to_bytes();
    auto it = unwrapped.find(wrapped);
    if (it == unwrapped.end()) {
      Bytes raw = crypto::hybrid_unwrap(ctx.validator_key().sk, enc_keys_[i]);
      if (raw.size() != 32) throw Error(Errc::kAuthFailure, "policy key length");
      crypto::SymmetricKey key{};
      std::copy(raw.begin(), raw.end(), key.begin());
      it = unwrapped.emplace(std::move(wrapped), key).first;
    }
    policies[i] = open_policy(it->second, self_id_, i, enc_policies_[i]);
  }
  policy_cache_ = std::move(policies);
  return *policy_cache_;
}

void PolicyContract::compute_aggregate(ledger::CallContext& ctx, ByteReader& r) {
  auto user_pk = GroupElement::from_bytes(r.raw(32));
  auto enc_vec = decode_ciphertexts(r);
  auto enc_vec_prime = std::make_shared<const std::vector<Ciphertext>>(decode_ciphertexts(r));
  r.expect_done();

  auto& fsc = ctx.contract_as<FundContract>(params_.fsc_id);
  if (!fsc.initialized()) throw Error(Errc::kNotInitialized, "campaign not initialized");
  if (fsc.ended(ctx)) throw Error(Errc::kInvalidState, "campaign ended");
  if (!pk_t_) throw Error(Errc::kInvalidState, "pool key not published");
  if (!(ctx.sender_pk() == user_pk)) throw Error(Errc::kUnauthorized, "sender does not hold user_pk");
  if (enc_vec.size() != params_.n_ads || enc_vec_prime->size() != params_.n_ads) {
    throw Error(Errc::kLengthMismatch, "interaction vectors must have " +
                                           std::to_string(params_.n_ads) + " entries");
  }
  auto key = user_pk.to_bytes();
  if (aggregates_.count(key)) throw Error(Errc::kInvalidState, "aggregate already computed");

  const auto& policies = validator_policies(ctx);
  AggregateRecord rec;
  rec.aggregate = crypto::weighted_sum(policies, enc_vec);
  rec.attestation = crypto::sign(ctx.validator_key().sk, aggregate_message(self_id_, user_pk, rec.aggregate));
  aggregates_.emplace(key, rec);

  ByteWriter w;
  w.fixed(enc_vec_prime_digest_).fixed(key).raw(encode_ciphertexts(*enc_vec_prime));
  Bytes d = crypto::hash_bytes("themis/enc-vec-prime-log/v1", w.bytes(), 32);
  std::copy(d.begin(), d.end(), enc_vec_prime_digest_.begin());
  enc_vec_prime_log_.push_back(std::move(enc_vec_prime));
  ctx.emit("AggregateComputed", {{"user_pk", hex(user_pk)}});
}

const AggregateRecord* PolicyContract::aggregate(const GroupElement& user_pk) const {
  auto it = aggregates_.find(user_pk.to_bytes());
  return it == aggregates_.end() ? nullptr : &it->second;
}

void PolicyContract::payment_request(ledger::CallContext& ctx) {
  auto tuple = PaymentRequestTuple::from_bytes(ctx.private_args());
  const AggregateRecord* rec = aggregate(tuple.user_pk);
  if (rec == nullptr) throw Error(Errc::kNotFound, "no aggregate for user");
  if (!crypto::verify_sig(ctx.validator_key().pk, aggregate_message(self_id_, tuple.user_pk, rec->aggregate),
                          tuple.sign_reward)) {
    throw Error(Errc::kBadSignature, "SignReward");
  }
  if (!crypto::verify_decryption(tuple.user_pk, rec->aggregate, tuple.dec_result, tuple.proof)) {
    throw Error(Errc::kProofRejected, "decryption proof");
  }
  auto inner = ctx.nested(params_.fsc_id);
  inner.contract_as<FundContract>(params_.fsc_id)
      .enqueue_payment(inner, tuple.addr, QueuedRequestRecord{tuple.user_pk, tuple.dec_result});
}

void PolicyContract::register_candidate(ledger::CallContext& ctx) {
  if (registration_closed_ || ctx.block_height() >= params_.pool.registration_end) {
    throw Error(Errc::kRegistrationClosed);
  }
  const GroupElement& pk = ctx.sender_pk();
  if (!registrant_set_.insert(pk.to_bytes()).second) throw Error(Errc::kDuplicateAddress, "already registered");
  registrants_.push_back(pk);
  ctx.emit("CandidateRegistered", {{"vrf_pk", hex(pk)}});
}

void PolicyContract::open_draw_round(ledger::CallContext& ctx) {
  ++draw_round_;
  ByteWriter w;
  w.fixed(ctx.block_context()).u64(draw_round_).str(self_id_);
  epsilon_ = crypto::hash_bytes("themis/pool-epsilon/v1", w.bytes(), 32);
  draw_opened_at_ = ctx.block_height();
  winners_.clear();
  ctx.emit("DrawOpened", {{"round", draw_round_}, {"epsilon", to_hex(epsilon_)}});
}

void PolicyContract::close_registration(ledger::CallContext& ctx) {
  if (registration_closed_) throw Error(Errc::kInvalidState, "registration already closed");
  if (ctx.block_height() < params_.pool.registration_end) {
    throw Error(Errc::kInvalidState, "registration window still open");
  }
  if (registrants_.empty()) throw Error(Errc::kNoWinners, "no registrants");
  registration_closed_ = true;
  open_draw_round(ctx);
}

vrf::DrawConfig PolicyContract::draw_config() const {
  vrf::DrawConfig cfg;
  cfg.epsilon = epsilon_;
  cfg.expected_participants = std::min<std::uint64_t>(params_.pool.expected_participants, registrants_.size());
  cfg.pool_size = registrants_.size();
  return cfg;
}

void PolicyContract::publish_draw(ledger::CallContext& ctx, ByteReader& r) {
  if (!registration_closed_ || draw_sealed_) throw Error(Errc::kInvalidState, "no open draw");
  auto out = vrf::VrfOutput::from_bytes(r.raw(vrf::VrfOutput::kSize));
  const GroupElement& pk = ctx.sender_pk();
  if (!registrant_set_.count(pk.to_bytes())) throw Error(Errc::kUnauthorized, "not a registrant");
  if (!vrf::vrf_verify(pk, epsilon_, out)) throw Error(Errc::kProofRejected, "VRF output");
  if (!vrf::is_selected(out, draw_config())) throw Error(Errc::kNotSelected);
  if (!winners_.emplace(pk.to_bytes(), out).second) throw Error(Errc::kDuplicateAddress, "already published");
  ctx.emit("DrawPublished", {{"vrf_pk", hex(pk)}, {"rand", out.rand}});
}

bool PolicyContract::seal_draw(ledger::CallContext& ctx) {
  if (!registration_closed_ || draw_sealed_) throw Error(Errc::kInvalidState, "no open draw");
  if (ctx.block_height() < draw_opened_at_ + params_.pool.draw_window) {
    throw Error(Errc::kInvalidState, "draw window still open");
  }
  if (winners_.empty()) {
    ctx.emit("NoWinners", {{"round", draw_round_}});
    open_draw_round(ctx);
    return false;
  }
  std::vector<std::pair<std::uint64_t, GroupElement::Encoding>> order;
  for (const auto& [pk, out] : winners_) order.emplace_back(out.rand, pk);
  std::sort(order.begin(), order.end());
  members_.clear();
  for (const auto& [rand, pk] : order) members_.push_back(GroupElement::from_bytes(ByteSpan(pk)));
  auto n = static_cast<std::uint32_t>(members_.size());
  pool_cfg_ = params_.pool.threshold == 0 ? dkg::ThresholdConfig::majority(n)
                                          : dkg::ThresholdConfig{n, std::min(params_.pool.threshold, n)};
  draw_sealed_ = true;
  ctx.emit("DrawSealed", {{"members", n}, {"k", pool_cfg_.k}});
  return true;
}

std::uint32_t PolicyContract::member_id(const GroupElement& pk) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] == pk) return static_cast<std::uint32_t>(i + 1);
  }
  return 0;
}

void PolicyContract::post_dealer_round(ledger::CallContext& ctx, ByteReader& r) {
  if (!draw_sealed_ || pk_t_) throw Error(Errc::kInvalidState, "DKG not open");
  auto round = dkg::DealerRound::from_bytes(r.raw(r.remaining()));
  std::uint32_t id = member_id(ctx.sender_pk());
  if (id == 0 || id != round.participant_id) throw Error(Errc::kUnauthorized, "dealer id");
  if (round.coefficient_commitments.size() != pool_cfg_.k) {
    throw Error(Errc::kLengthMismatch, "expected " + std::to_string(pool_cfg_.k) + " commitments");
  }
  if (round.encrypted_shares.size() != pool_cfg_.n ||
      round.encrypted_shares.begin()->first != 1 ||
      round.encrypted_shares.rbegin()->first != pool_cfg_.n) {
    throw Error(Errc::kLengthMismatch, "one share per member");
  }
  if (!dealer_rounds_.emplace(id, std::move(round)).second) {
    throw Error(Errc::kInvalidState, "round already posted");
  }
}

std::set<std::uint32_t> PolicyContract::check_cosignatures(ByteSpan msg,
                                                           const std::vector<Signature>& sigs) const {
  std::set<std::uint32_t> signers;
  for (const auto& s : sigs) {
    std::uint32_t id = member_id(s.signer_pk);
    if (id != 0 && crypto::verify_sig(s.signer_pk, msg, s)) signers.insert(id);
  }
  if (!draw_sealed_ || signers.size() < pool_cfg_.k) {
    throw Error(Errc::kBadSignature, std::to_string(signers.size()) + " valid member signatures, need " +
                                         std::to_string(pool_cfg_.k));
  }
  return signers;
}

void PolicyContract::publish_pool_key(ledger::CallContext& ctx, ByteReader& r) {
  if (!draw_sealed_ || pk_t_) throw Error(Errc::kInvalidState, "DKG not open");
  std::uint32_t nd = r.u32();
  if (nd > pool_cfg_.n) throw Error(Errc::kInvalidEncoding, "disqualified count");
  std::set<std::uint32_t> disq;
  for (std::uint32_t i = 0; i < nd; ++i) disq.insert(r.u32());
  auto sigs = decode_signatures(r);

  GroupElement pk_t;
  std::vector<GroupElement> commitments(pool_cfg_.n);
  std::size_t qualified = 0;
  for (std::uint32_t d = 1; d <= pool_cfg_.n; ++d) {
    if (disq.count(d)) continue;
    auto it = dealer_rounds_.find(d);
    if (it == dealer_rounds_.end()) throw Error(Errc::kInvalidState, "missing round of dealer " + std::to_string(d));
    ++qualified;
    pk_t += it->second.coefficient_commitments[0];
    for (std::uint32_t j = 1; j <= pool_cfg_.n; ++j) {
      commitments[j - 1] += dkg::commitment_at(it->second.coefficient_commitments, j);
    }
  }
  if (qualified == 0) throw Error(Errc::kNoQualifiedDealers);
  std::vector<std::uint32_t> disq_list(disq.begin(), disq.end());
  check_cosignatures(pool_key_message(self_id_, pk_t, disq_list), sigs);
  pk_t_ = pk_t;
  share_commitments_ = std::move(commitments);
  disqualified_ = std::move(disq_list);
  ctx.emit("PoolKeyPublished", {{"pk_t", hex(pk_t)}, {"disqualified", disqualified_}});
}

Bytes PolicyContract::query(std::string_view method, ByteSpan args) const {
  ByteReader r(args);
  if (method == "get_aggregate") {
    auto pk = GroupElement::from_bytes(r.raw(32));
    r.expect_done();
    const AggregateRecord* rec = aggregate(pk);
    if (rec == nullptr) throw Error(Errc::kNotFound, "no aggregate for user");
    ByteWriter w;
    w.fixed(rec->aggregate.to_bytes()).fixed(rec->attestation.to_bytes());
    return std::move(w).bytes();
  }
  if (method == "pool_key") {
    if (!pk_t_) throw Error(Errc::kNotFound, "pool key not published");
    auto enc = pk_t_->to_bytes();
    return Bytes(enc.begin(), enc.end());
  }
  return Contract::query(method, args);
}

json PolicyContract::storage_json() const {
  json policies = json::array();
  for (const auto& p : enc_policies_) policies.push_back(to_hex(p));
  json keys = json::array();
  for (const auto& k : enc_keys_) keys.push_back(to_hex(k.to_bytes()));
  json aggs = json::object();
  for (const auto& [pk, rec] : aggregates_) {
    aggs[to_hex(ByteSpan(pk))] = {{"aggregate", to_hex(ByteSpan(rec.aggregate.to_bytes()))},
                                  {"attestation", to_hex(ByteSpan(rec.attestation.to_bytes()))}};
  }
  json pool = params_.pool.to_json();
  json regs = json::array();
  for (const auto& p : registrants_) regs.push_back(hex(p));
  json mem = json::array();
  for (const auto& p : members_) mem.push_back(hex(p));
  pool["registrants"] = regs;
  pool["registration_closed"] = registration_closed_;
  pool["draw_round"] = draw_round_;
  pool["epsilon"] = to_hex(epsilon_);
  pool["draw_sealed"] = draw_sealed_;
  pool["members"] = mem;
  pool["n"] = pool_cfg_.n;
  pool["k"] = pool_cfg_.k;
  pool["dealer_rounds"] = dealer_rounds_.size();
  pool["disqualified"] = disqualified_;
  pool["pk_t"] = pk_t_ ? json(hex(*pk_t_)) : json(nullptr);
  return {{"cf_pk", hex(params_.cf_pk)},
          {"fsc", params_.fsc_id},
          {"n_ads", params_.n_ads},
          {"enc_policies", std::move(policies)},
          {"enc_keys", std::move(keys)},
          {"aggregates", std::move(aggs)},
          {"enc_vec_prime", {{"count", enc_vec_prime_log_.size()},
                             {"digest", to_hex(ByteSpan(enc_vec_prime_digest_))}}},
          {"pool", std::move(pool)}};
}

}  // namespace themis::contracts
