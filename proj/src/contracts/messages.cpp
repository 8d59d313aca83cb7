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

#include "themis/contracts/messages.hpp"

#include "themis/error.hpp"

namespace themis::contracts {

namespace {

ByteWriter message(std::string_view domain, std::string_view contract_id) {
  ByteWriter w;
  w.str(domain).str(contract_id);
  return w;
}

Bytes policy_aad(std::string_view psc_id, std::uint32_t index) {
  ByteWriter w = message("themis/policy-entry/v1", psc_id);
  w.u32(index);
  return std::move(w).bytes();
}

}  // namespace

Bytes PaymentRequestTuple::to_bytes() const {
  ByteWriter w;
  w.fixed(user_pk.to_bytes()).u64(dec_result).fixed(sign_reward.to_bytes()).fixed(proof.to_bytes()).fixed(addr.id);
  return std::move(w).bytes();
}

PaymentRequestTuple PaymentRequestTuple::from_bytes(ByteSpan bytes) {
  ByteReader r(bytes);
  PaymentRequestTuple t;
  t.user_pk = GroupElement::from_bytes(r.raw(32));
  t.dec_result = r.u64();
  t.sign_reward = Signature::from_bytes(r.raw(Signature::kSize));
  t.proof = crypto::DecryptionProof::from_bytes(r.raw(crypto::DecryptionProof::kSize));
  t.addr.id = r.fixed<Address::kSize>();
  r.expect_done();
  return t;
}

Bytes QueuedRequestRecord::to_bytes() const {
  ByteWriter w;
  w.fixed(user_pk.to_bytes()).u64(amount);
  return std::move(w).bytes();
}

QueuedRequestRecord QueuedRequestRecord::from_bytes(ByteSpan bytes) {
  ByteReader r(bytes);
  QueuedRequestRecord q;
  q.user_pk = GroupElement::from_bytes(r.raw(32));
  q.amount = r.u64();
  r.expect_done();
  return q;
}

Bytes aggregate_message(std::string_view psc_id, const GroupElement& user_pk, const Ciphertext& agg) {
  ByteWriter w = message("themis/sign-reward/v1", psc_id);
  w.fixed(user_pk.to_bytes()).fixed(agg.to_bytes());
  return std::move(w).bytes();
}

Bytes encrypted_keys_message(std::string_view psc_id, const std::vector<WrappedKey>& keys) {
  ByteWriter w = message("themis/encrypted-keys/v1", psc_id);
  w.u32(static_cast<std::uint32_t>(keys.size()));
  for (const auto& k : keys) w.var(k.to_bytes());
  return std::move(w).bytes();
}

Bytes pool_key_message(std::string_view psc_id, const GroupElement& pk_t,
                       const std::vector<std::uint32_t>& disqualified) {
  ByteWriter w = message("themis/pool-key/v1", psc_id);
  w.fixed(pk_t.to_bytes()).u32(static_cast<std::uint32_t>(disqualified.size()));
  for (auto d : disqualified) w.u32(d);
  return std::move(w).bytes();
}

Bytes settlement_message(std::string_view fsc_id, std::uint64_t counter, std::uint64_t tau) {
  ByteWriter w = message("themis/settlement/v1", fsc_id);
  w.u64(counter).u64(tau);
  return std::move(w).bytes();
}

Bytes aggr_clicks_message(std::string_view fsc_id, std::uint64_t round,
                          const std::vector<std::uint64_t>& values, bool final_round) {
  ByteWriter w = message("themis/aggr-clicks/v1", fsc_id);
  w.u64(round).u8(final_round ? 1 : 0).u32(static_cast<std::uint32_t>(values.size()));
  for (auto v : values) w.u64(v);
  return std::move(w).bytes();
}

crypto::SymmetricKey policy_key(const Scalar& my_sk, const GroupElement& peer_pk) {
  return crypto::dh_symmetric_key(my_sk, peer_pk, "themis/policy-key/v1");
}

Bytes seal_policy(const crypto::SymmetricKey& key, std::string_view psc_id, std::uint32_t index,
                  std::uint64_t value, crypto::Rng& rng) {
  ByteWriter w;
  w.u64(value);
  return crypto::seal(key, w.bytes(), rng, policy_aad(psc_id, index));
}

std::uint64_t open_policy(const crypto::SymmetricKey& key, std::string_view psc_id,
                          std::uint32_t index, ByteSpan sealed) {
  Bytes plain = crypto::open(key, sealed, policy_aad(psc_id, index));
  if (plain.size() != 8) throw Error(Errc::kAuthFailure, "policy entry length");
  ByteReader r(plain);
  return r.u64();
}

Bytes encode_ciphertexts(const std::vector<Ciphertext>& cts) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(cts.size()));
  for (const auto& c : cts) w.fixed(c.to_bytes());
  return std::move(w).bytes();
}

std::vector<Ciphertext> decode_ciphertexts(ByteReader& r) {
  std::uint32_t n = r.u32();
  if (n > r.remaining() / Ciphertext::kSize) throw Error(Errc::kInvalidEncoding, "ciphertext count");
  std::vector<Ciphertext> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(Ciphertext::from_bytes(r.raw(Ciphertext::kSize)));
  return out;
}

Bytes encode_signatures(const std::vector<Signature>& sigs) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(sigs.size()));
  for (const auto& s : sigs) w.fixed(s.to_bytes());
  return std::move(w).bytes();
}

std::vector<Signature> decode_signatures(ByteReader& r) {
  std::uint32_t n = r.u32();
  if (n > r.remaining() / Signature::kSize) throw Error(Errc::kInvalidEncoding, "signature count");
  std::vector<Signature> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(Signature::from_bytes(r.raw(Signature::kSize)));
  return out;
}

namespace calls {

namespace {

Call make(const std::string& contract, std::string method, ByteWriter&& w) {
  return Call{contract, std::move(method), std::move(w).bytes()};
}

Call make(const std::string& contract, std::string method) {
  return Call{contract, std::move(method), {}};
}

}  // namespace

Call store_policy(const std::string& psc, std::uint32_t index, ByteSpan sealed) {
  ByteWriter w;
  w.u32(index).var(sealed);
  return make(psc, "store_policy", std::move(w));
}

Call store_encrypted_keys(const std::string& psc, const std::vector<WrappedKey>& keys,
                          const Signature& sig) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(keys.size()));
  for (const auto& k : keys) w.var(k.to_bytes());
  w.fixed(sig.to_bytes());
  return make(psc, "store_encrypted_keys", std::move(w));
}

Call compute_aggregate(const std::string& psc, const GroupElement& user_pk,
                       const std::vector<Ciphertext>& enc_vec,
                       const std::vector<Ciphertext>& enc_vec_prime) {
  ByteWriter w;
  w.fixed(user_pk.to_bytes()).raw(encode_ciphertexts(enc_vec)).raw(encode_ciphertexts(enc_vec_prime));
  return make(psc, "compute_aggregate", std::move(w));
}

Call payment_request(const std::string& psc) { return make(psc, "payment_request"); }
Call register_candidate(const std::string& psc) { return make(psc, "register_candidate"); }
Call close_registration(const std::string& psc) { return make(psc, "close_registration"); }

Call publish_draw(const std::string& psc, const vrf::VrfOutput& out) {
  ByteWriter w;
  w.raw(out.to_bytes());
  return make(psc, "publish_draw", std::move(w));
}

Call seal_draw(const std::string& psc) { return make(psc, "seal_draw"); }

Call post_dealer_round(const std::string& psc, const dkg::DealerRound& round) {
  ByteWriter w;
  w.raw(round.to_bytes());
  return make(psc, "post_dealer_round", std::move(w));
}

Call publish_pool_key(const std::string& psc, const std::vector<std::uint32_t>& disqualified,
                      const std::vector<Signature>& cosigs) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(disqualified.size()));
  for (auto d : disqualified) w.u32(d);
  w.raw(encode_signatures(cosigs));
  return make(psc, "publish_pool_key", std::move(w));
}

Call store_adv_id(const std::string& fsc, const std::string& adv_id) {
  ByteWriter w;
  w.str(adv_id);
  return make(fsc, "store_adv_id", std::move(w));
}

Call store_funds(const std::string& fsc, const std::string& adv_id, std::uint64_t amount) {
  ByteWriter w;
  w.str(adv_id).u64(amount);
  return make(fsc, "store_funds", std::move(w));
}

Call settlement_request(const std::string& fsc, std::uint64_t tau, const Signature& sig) {
  ByteWriter w;
  w.u64(tau).fixed(sig.to_bytes());
  return make(fsc, "settlement_request", std::move(w));
}

Call payment_processed(const std::string& fsc, const payments::TxRef& tx_ref, const Address& addr) {
  ByteWriter w;
  w.fixed(tx_ref).fixed(addr.id);
  return make(fsc, "payment_processed", std::move(w));
}

Call post_partials(const std::string& fsc, std::uint32_t member_id,
                   const std::vector<dkg::PartialDecryption>& partials) {
  ByteWriter w;
  w.u32(member_id).u32(static_cast<std::uint32_t>(partials.size()));
  for (const auto& p : partials) w.var(p.to_bytes());
  return make(fsc, "post_partials", std::move(w));
}

Call store_aggr_clicks(const std::string& fsc, const std::vector<std::uint64_t>& values,
                       bool final_round, const std::vector<Signature>& cosigs) {
  ByteWriter w;
  w.u8(final_round ? 1 : 0).u32(static_cast<std::uint32_t>(values.size()));
  for (auto v : values) w.u64(v);
  w.raw(encode_signatures(cosigs));
  return make(fsc, "store_aggr_clicks", std::move(w));
}

Call finalize(const std::string& fsc) { return make(fsc, "finalize"); }
Call pay_processing_fees(const std::string& fsc) { return make(fsc, "pay_processing_fees"); }
Call return_fees(const std::string& fsc) { return make(fsc, "return_fees"); }

Call raise_complaint(const std::string& fsc, const GroupElement& user_pk,
                     const payments::TxRef& tx_ref, const Scalar& r, std::uint64_t l) {
  ByteWriter w;
  w.fixed(user_pk.to_bytes()).fixed(tx_ref).fixed(r.bytes()).u64(l);
  return make(fsc, "raise_complaint", std::move(w));
}

Call claim_insufficient_refund(const std::string& fsc, const std::string& adv_id) {
  ByteWriter w;
  w.str(adv_id);
  return make(fsc, "claim_insufficient_refund", std::move(w));
}

Call deposit_batch(const std::string& notes, const payments::SettlementBatch& batch) {
  ByteWriter w;
  w.raw(batch.to_bytes());
  return make(notes, "deposit_batch", std::move(w));
}

Call redeem(const std::string& notes, const payments::TxRef& tx_ref, const Scalar& r,
            std::uint64_t amount) {
  ByteWriter w;
  w.fixed(tx_ref).fixed(r.bytes()).u64(amount);
  return make(notes, "redeem", std::move(w));
}

}  // namespace calls

}  // namespace themis::contracts
