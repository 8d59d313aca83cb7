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

#ifndef THEMIS_CONTRACTS_MESSAGES_HPP_
#define THEMIS_CONTRACTS_MESSAGES_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "themis/crypto/elgamal.hpp"
#include "themis/crypto/hybrid.hpp"
#include "themis/crypto/proofs.hpp"
#include "themis/crypto/signature.hpp"
#include "themis/dkg/dkg.hpp"
#include "themis/ledger/types.hpp"
#include "themis/payments/notes.hpp"
#include "themis/vrf/vrf.hpp"

namespace themis::contracts {

using crypto::Ciphertext;
using crypto::GroupElement;
using crypto::Scalar;
using crypto::Signature;
using crypto::WrappedKey;
using ledger::Address;
using ledger::Call;
using ledger::json;

inline constexpr std::string_view kPolicyContractKind = "themis.psc";
inline constexpr std::string_view kFundContractKind = "themis.fsc";
inline constexpr std::string_view kNoteRegistryKind = "themis.notes";

// [pk_user, Dec.Res, SignReward, proof, Addr], sent encrypted to the validators.
struct PaymentRequestTuple {
  GroupElement user_pk;
  std::uint64_t dec_result = 0;
  Signature sign_reward;
  crypto::DecryptionProof proof;
  Address addr;

  Bytes to_bytes() const;
  static PaymentRequestTuple from_bytes(ByteSpan bytes);
};

// What the FSC keeps per queued request, sealed to the validators.
struct QueuedRequestRecord {
  GroupElement user_pk;
  std::uint64_t amount = 0;

  Bytes to_bytes() const;
  static QueuedRequestRecord from_bytes(ByteSpan bytes);
};

struct AggregateRecord {
  Ciphertext aggregate;
  // Consortium signature over aggregate_message().
  Signature attestation;
};

// Messages covered by signatures. Each binds the contract id.
Bytes aggregate_message(std::string_view psc_id, const GroupElement& user_pk, const Ciphertext& agg);
Bytes encrypted_keys_message(std::string_view psc_id, const std::vector<WrappedKey>& keys);
Bytes pool_key_message(std::string_view psc_id, const GroupElement& pk_t,
                       const std::vector<std::uint32_t>& disqualified);
Bytes settlement_message(std::string_view fsc_id, std::uint64_t counter, std::uint64_t tau);
Bytes aggr_clicks_message(std::string_view fsc_id, std::uint64_t round,
                          const std::vector<std::uint64_t>& values, bool final_round);

// Policy entries are sealed with the CF/advertiser DH key; the AAD binds the
// contract and the catalog index.
crypto::SymmetricKey policy_key(const Scalar& my_sk, const GroupElement& peer_pk);
Bytes seal_policy(const crypto::SymmetricKey& key, std::string_view psc_id, std::uint32_t index,
                  std::uint64_t value, crypto::Rng& rng);
// Throws Error(kAuthFailure).
std::uint64_t open_policy(const crypto::SymmetricKey& key, std::string_view psc_id,
                          std::uint32_t index, ByteSpan sealed);

Bytes encode_ciphertexts(const std::vector<Ciphertext>& cts);
std::vector<Ciphertext> decode_ciphertexts(ByteReader& r);
Bytes encode_signatures(const std::vector<Signature>& sigs);
std::vector<Signature> decode_signatures(ByteReader& r);

// Call builders. Argument layouts are decoded by the contracts.
namespace calls {

Call store_policy(const std::string& psc, std::uint32_t index, ByteSpan sealed);
Call store_encrypted_keys(const std::string& psc, const std::vector<WrappedKey>& keys,
                          const Signature& sig);
Call compute_aggregate(const std::string& psc, const GroupElement& user_pk,
                       const std::vector<Ciphertext>& enc_vec,
                       const std::vector<Ciphertext>& enc_vec_prime);
// The tuple travels in the private envelope; public args are empty.
Call payment_request(const std::string& psc);
Call register_candidate(const std::string& psc);
Call close_registration(const std::string& psc);
Call publish_draw(const std::string& psc, const vrf::VrfOutput& out);
Call seal_draw(const std::string& psc);
Call post_dealer_round(const std::string& psc, const dkg::DealerRound& round);
Call publish_pool_key(const std::string& psc, const std::vector<std::uint32_t>& disqualified,
                      const std::vector<Signature>& cosigs);

Call store_adv_id(const std::string& fsc, const std::string& adv_id);
Call store_funds(const std::string& fsc, const std::string& adv_id, std::uint64_t amount);
Call settlement_request(const std::string& fsc, std::uint64_t tau, const Signature& sig);
Call payment_processed(const std::string& fsc, const payments::TxRef& tx_ref, const Address& addr);
Call post_partials(const std::string& fsc, std::uint32_t member_id,
                   const std::vector<dkg::PartialDecryption>& partials);
Call store_aggr_clicks(const std::string& fsc, const std::vector<std::uint64_t>& values,
                       bool final_round, const std::vector<Signature>& cosigs);
Call finalize(const std::string& fsc);
Call pay_processing_fees(const std::string& fsc);
Call return_fees(const std::string& fsc);
Call raise_complaint(const std::string& fsc, const GroupElement& user_pk,
                     const payments::TxRef& tx_ref, const Scalar& r, std::uint64_t l);
Call claim_insufficient_refund(const std::string& fsc, const std::string& adv_id);

Call deposit_batch(const std::string& notes, const payments::SettlementBatch& batch);
Call redeem(const std::string& notes, const payments::TxRef& tx_ref, const Scalar& r,
            std::uint64_t amount);

}  // namespace calls

}  // namespace themis::contracts

#endif  // THEMIS_CONTRACTS_MESSAGES_HPP_
