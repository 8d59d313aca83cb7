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

#ifndef THEMIS_TESTS_SUPPORT_STRAWMAN_HPP_
#define THEMIS_TESTS_SUPPORT_STRAWMAN_HPP_

#include <map>
#include <vector>

#include "themis/crypto/elgamal.hpp"
#include "themis/crypto/proofs.hpp"
#include "themis/crypto/signature.hpp"
#include "themis/error.hpp"

namespace themis::testing {

// Centralized baseline: a single campaign manager holds the plaintext
// policies, aggregates, signs, checks the user's decryption proof and pays.
class CampaignManager {
 public:
  CampaignManager(std::vector<std::uint64_t> policies, crypto::Rng& rng)
      : policies_(std::move(policies)), key_(crypto::keygen(rng)) {}

  const crypto::GroupElement& pk() const { return key_.pk; }

  struct Response {
    crypto::Ciphertext aggregate;
    crypto::Signature sig;
  };

  Response aggregate(const crypto::GroupElement& user_pk, const std::vector<crypto::Ciphertext>& enc) const {
    if (enc.size() != policies_.size()) throw Error(Errc::kLengthMismatch, "interaction vector");
    Response r;
    r.aggregate = crypto::weighted_sum(policies_, enc);
    r.sig = crypto::sign(key_.sk, message(user_pk, r.aggregate));
    return r;
  }

  void claim(const crypto::GroupElement& user_pk, const Response& resp, std::uint64_t reward,
             const crypto::DecryptionProof& proof) {
    if (!crypto::verify_sig(key_.pk, message(user_pk, resp.aggregate), resp.sig)) {
      throw Error(Errc::kBadSignature, "aggregate");
    }
    if (!crypto::verify_decryption(user_pk, resp.aggregate, reward, proof)) throw Error(Errc::kProofRejected);
    auto [it, fresh] = paid_.emplace(user_pk.to_bytes(), reward);
    if (!fresh) throw Error(Errc::kDuplicateAddress, "already paid");
  }

  std::uint64_t paid(const crypto::GroupElement& user_pk) const {
    auto it = paid_.find(user_pk.to_bytes());
    return it == paid_.end() ? 0 : it->second;
  }

 private:
  static Bytes message(const crypto::GroupElement& user_pk, const crypto::Ciphertext& c) {
    ByteWriter w;
    w.str("themis/strawman/v1").fixed(user_pk.to_bytes()).fixed(c.to_bytes());
    return std::move(w).bytes();
  }

  std::vector<std::uint64_t> policies_;
  crypto::KeyPair key_;
  std::map<crypto::GroupElement::Encoding, std::uint64_t> paid_;
};

// One user's full straw-man round trip; returns the amount the CM paid.
inline std::uint64_t strawman_claim(CampaignManager& cm, const std::vector<std::uint64_t>& counts,
                                    std::uint64_t max_policy, crypto::Rng& rng) {
  auto user = crypto::keygen(rng);
  crypto::VectorEncryptor enc(user.pk, 256);
  auto resp = cm.aggregate(user.pk, enc.encrypt(counts, rng));
  std::uint64_t clicks = 0;
  for (auto c : counts) clicks += c;
  std::uint64_t m = crypto::recover_plaintext(crypto::decrypt_to_element(user.sk, resp.aggregate), max_policy * clicks);
  cm.claim(user.pk, resp, m, crypto::prove_decryption(user.sk, resp.aggregate, m));
  return cm.paid(user.pk);
}

}  // namespace themis::testing

#endif  // THEMIS_TESTS_SUPPORT_STRAWMAN_HPP_
