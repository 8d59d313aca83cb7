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

#ifndef THEMIS_DKG_DKG_HPP_
#define THEMIS_DKG_DKG_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "themis/bytes.hpp"
#include "themis/crypto/elgamal.hpp"
#include "themis/crypto/hybrid.hpp"
#include "themis/crypto/proofs.hpp"
#include "themis/crypto/rng.hpp"

namespace themis::dkg {

using crypto::Ciphertext;
using crypto::GroupElement;
using crypto::Scalar;

// Participants are numbered 1..n; shares are polynomial evaluations at the id.
struct ThresholdConfig {
  std::uint32_t n = 1;
  std::uint32_t k = 1;

  // Throws Error(kInvalidConfig) unless 1 <= k <= n.
  void validate() const;
  // floor(n/2) + 1.
  static ThresholdConfig majority(std::uint32_t n);
};

struct DealerRound {
  std::uint32_t participant_id = 0;
  std::vector<GroupElement> coefficient_commitments;
  std::map<std::uint32_t, crypto::WrappedKey> encrypted_shares;

  Bytes to_bytes() const;
  static DealerRound from_bytes(ByteSpan bytes);
};

struct ThresholdKeyMaterial {
  std::uint32_t participant_id = 0;
  GroupElement pk_t;
  Scalar share;
  // share_commitments[j - 1] = g^{sk_j}.
  std::vector<GroupElement> share_commitments;
};

struct PartialDecryption {
  std::uint32_t participant_id = 0;
  GroupElement d;
  crypto::DleqProof proof;

  Bytes to_bytes() const;
  static PartialDecryption from_bytes(ByteSpan bytes);
};

// recipient_pks[j - 1] is the encryption key of participant j.
DealerRound dkg_deal(const ThresholdConfig& cfg, std::uint32_t participant_id,
                     std::span<const GroupElement> recipient_pks, crypto::Rng& rng);
// Same, with caller-chosen polynomial coefficients (constant term first).
// `share_override` replaces the share sent to the given recipients, which is
// how misbehaving dealers are simulated.
DealerRound dkg_deal_polynomial(const ThresholdConfig& cfg, std::uint32_t participant_id,
                                std::span<const Scalar> coefficients,
                                std::span<const GroupElement> recipient_pks, crypto::Rng& rng,
                                const std::map<std::uint32_t, Scalar>& share_override = {});

Scalar eval_polynomial(std::span<const Scalar> coefficients, std::uint32_t x);

// Decrypts the share addressed to my_id. Throws Error(kNotFound) if there is
// none, Error(kAuthFailure) if it does not open, Error(kInvalidEncoding) if it
// is not a scalar.
Scalar dkg_open_share(const DealerRound& round, std::uint32_t my_id, const Scalar& my_sk);

// g^{my_share} == prod_t commitments[t]^{my_id^t}.
bool dkg_verify_share(const DealerRound& round, std::uint32_t my_id, const Scalar& my_share);

// Feldman evaluation of a dealer's commitments at x.
GroupElement commitment_at(std::span<const GroupElement> commitments, std::uint32_t x);

// Combines the qualified dealers' contributions for one participant.
// `received[d]` is the share that dealer d sent to my_id. Throws
// Error(kNoQualifiedDealers) when every dealer is disqualified.
ThresholdKeyMaterial dkg_finalize(const ThresholdConfig& cfg,
                                  std::span<const DealerRound> rounds,
                                  const std::set<std::uint32_t>& disqualified,
                                  std::uint32_t my_id,
                                  const std::map<std::uint32_t, Scalar>& received);

// Lagrange coefficient for `id` over `ids`, evaluated at 0.
Scalar lagrange_at_zero(std::span<const std::uint32_t> ids, std::uint32_t id);

PartialDecryption partial_decrypt(std::uint32_t participant_id, const Scalar& share,
                                  const Ciphertext& c);
bool verify_partial(const Ciphertext& c, const PartialDecryption& partial,
                    const GroupElement& share_commitment);

// Returns g^m. Uses the first k partials with distinct ids. Throws
// Error(kInvalidPartial) on a failing proof, unknown or repeated id and
// Error(kInsufficientShares) when fewer than k remain.
GroupElement combine_partials(const ThresholdConfig& cfg, const Ciphertext& c,
                              std::span<const PartialDecryption> partials,
                              std::span<const GroupElement> share_commitments);

// Lagrange combination of every given partial, without checking proofs. For
// callers that verified the partials when they were posted.
GroupElement interpolate_partials(const Ciphertext& c, std::span<const PartialDecryption> partials);

// Synchronous driver for a whole DKG among participants holding the given
// encryption keys. Shares that fail to open or verify produce a complaint and
// disqualify the dealer.
struct DkgOutcome {
  GroupElement pk_t;
  std::vector<GroupElement> share_commitments;
  std::vector<ThresholdKeyMaterial> materials;
  std::set<std::uint32_t> disqualified;
  std::vector<DealerRound> rounds;
};

struct DealerMisbehavior {
  // dealer id -> recipients that get a corrupted share.
  std::map<std::uint32_t, std::set<std::uint32_t>> bad_shares;
};

DkgOutcome run_dkg(const ThresholdConfig& cfg, std::span<const crypto::KeyPair> participants,
                   crypto::Rng& rng, const DealerMisbehavior& misbehavior = {});

}  // namespace themis::dkg

#endif  // THEMIS_DKG_DKG_HPP_
