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

#include "themis/dkg/dkg.hpp"

#include "themis/error.hpp"

namespace themis::dkg {

namespace {

constexpr std::string_view kPartialDomain = "themis/partial-decryption/v1";

Bytes partial_context(const Ciphertext& c, std::uint32_t id) {
  ByteWriter w;
  w.fixed(c.to_bytes()).u32(id);
  return std::move(w).bytes();
}

}  // namespace

void ThresholdConfig::validate() const {
  if (k < 1 || k > n) throw Error(Errc::kInvalidConfig, "threshold must satisfy 1 <= k <= n");
}

ThresholdConfig ThresholdConfig::majority(std::uint32_t n) { return ThresholdConfig{n, n / 2 + 1}; }

Bytes DealerRound::to_bytes() const {
  ByteWriter w;
  w.u32(participant_id).u32(static_cast<std::uint32_t>(coefficient_commitments.size()));
  for (const auto& c : coefficient_commitments) w.fixed(c.to_bytes());
  w.u32(static_cast<std::uint32_t>(encrypted_shares.size()));
  for (const auto& [id, wk] : encrypted_shares) w.u32(id).var(wk.to_bytes());
  return std::move(w).bytes();
}

DealerRound DealerRound::from_bytes(ByteSpan bytes) {
  ByteReader r(bytes);
  DealerRound out;
  out.participant_id = r.u32();
  std::uint32_t nc = r.u32();
  if (nc > r.remaining() / 32) throw Error(Errc::kInvalidEncoding, "commitment count");
  for (std::uint32_t i = 0; i < nc; ++i) {
    out.coefficient_commitments.push_back(GroupElement::from_bytes(r.raw(32)));
  }
  std::uint32_t ns = r.u32();
  for (std::uint32_t i = 0; i < ns; ++i) {
    std::uint32_t id = r.u32();
    out.encrypted_shares[id] = crypto::WrappedKey::from_bytes(r.var());
  }
  r.expect_done();
  return out;
}

Bytes PartialDecryption::to_bytes() const {
  ByteWriter w;
  w.u32(participant_id).fixed(d.to_bytes()).fixed(proof.to_bytes());
  return std::move(w).bytes();
}

PartialDecryption PartialDecryption::from_bytes(ByteSpan bytes) {
  ByteReader r(bytes);
  PartialDecryption out;
  out.participant_id = r.u32();
  out.d = GroupElement::from_bytes(r.raw(32));
  out.proof = crypto::DleqProof::from_bytes(r.raw(crypto::DleqProof::kSize));
  r.expect_done();
  return out;
}

Scalar eval_polynomial(std::span<const Scalar> coefficients, std::uint32_t x) {
  Scalar xs = Scalar::from_u64(x);
  Scalar acc;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * xs + *it;
  return acc;
}

GroupElement commitment_at(std::span<const GroupElement> commitments, std::uint32_t x) {
  GroupElement acc;
  for (auto it = commitments.rbegin(); it != commitments.rend(); ++it) {
    acc = acc * static_cast<std::uint64_t>(x) + *it;
  }
  return acc;
}

DealerRound dkg_deal_polynomial(const ThresholdConfig& cfg, std::uint32_t participant_id,
                                std::span<const Scalar> coefficients,
                                std::span<const GroupElement> recipient_pks, crypto::Rng& rng,
                                const std::map<std::uint32_t, Scalar>& share_override) {
  cfg.validate();
  if (participant_id < 1 || participant_id > cfg.n) {
    throw Error(Errc::kInvalidConfig, "dealer id out of range");
  }
  if (coefficients.size() != cfg.k) throw Error(Errc::kInvalidConfig, "polynomial degree");
  if (recipient_pks.size() != cfg.n) throw Error(Errc::kInvalidConfig, "recipient count");
  DealerRound round;
  round.participant_id = participant_id;
  for (const auto& a : coefficients) round.coefficient_commitments.push_back(GroupElement::base_mul(a));
  for (std::uint32_t j = 1; j <= cfg.n; ++j) {
    auto it = share_override.find(j);
    Scalar s = it != share_override.end() ? it->second : eval_polynomial(coefficients, j);
    round.encrypted_shares[j] = crypto::hybrid_wrap(recipient_pks[j - 1], ByteSpan(s.bytes()), rng);
  }
  return round;
}

DealerRound dkg_deal(const ThresholdConfig& cfg, std::uint32_t participant_id,
                     std::span<const GroupElement> recipient_pks, crypto::Rng& rng) {
  cfg.validate();
  std::vector<Scalar> coeffs(cfg.k);
  for (auto& a : coeffs) a = rng.scalar();
  return dkg_deal_polynomial(cfg, participant_id, coeffs, recipient_pks, rng);
}

Scalar dkg_open_share(const DealerRound& round, std::uint32_t my_id, const Scalar& my_sk) {
  auto it = round.encrypted_shares.find(my_id);
  if (it == round.encrypted_shares.end()) throw Error(Errc::kNotFound, "no share for recipient");
  Bytes plain = crypto::hybrid_unwrap(my_sk, it->second);
  return Scalar::from_bytes(plain);
}

bool dkg_verify_share(const DealerRound& round, std::uint32_t my_id, const Scalar& my_share) {
  if (round.coefficient_commitments.empty()) return false;
  return GroupElement::base_mul(my_share) == commitment_at(round.coefficient_commitments, my_id);
}

ThresholdKeyMaterial dkg_finalize(const ThresholdConfig& cfg,
                                  std::span<const DealerRound> rounds,
                                  const std::set<std::uint32_t>& disqualified,
                                  std::uint32_t my_id,
                                  const std::map<std::uint32_t, Scalar>& received) {
  cfg.validate();
  ThresholdKeyMaterial out;
  out.participant_id = my_id;
  out.share_commitments.assign(cfg.n, GroupElement::identity());
  std::size_t qualified = 0;
  for (const auto& round : rounds) {
    if (disqualified.count(round.participant_id)) continue;
    if (round.coefficient_commitments.size() != cfg.k) {
      throw Error(Errc::kInvalidConfig, "dealer commitment count");
    }
    auto it = received.find(round.participant_id);
    if (it == received.end()) throw Error(Errc::kNotFound, "missing share from qualified dealer");
    ++qualified;
    out.pk_t += round.coefficient_commitments[0];
    out.share = out.share + it->second;
    for (std::uint32_t j = 1; j <= cfg.n; ++j) {
      out.share_commitments[j - 1] += commitment_at(round.coefficient_commitments, j);
    }
  }
  if (qualified == 0) throw Error(Errc::kNoQualifiedDealers);
  return out;
}

Scalar lagrange_at_zero(std::span<const std::uint32_t> ids, std::uint32_t id) {
  Scalar num = Scalar::one();
  Scalar den = Scalar::one();
  Scalar xi = Scalar::from_u64(id);
  for (std::uint32_t j : ids) {
    if (j == id) continue;
    Scalar xj = Scalar::from_u64(j);
    num *= xj;
    den *= xj - xi;
  }
  return num * den.inverse();
}

PartialDecryption partial_decrypt(std::uint32_t participant_id, const Scalar& share,
                                  const Ciphertext& c) {
  PartialDecryption out;
  out.participant_id = participant_id;
  out.d = c.c1 * share;
  crypto::DleqStatement st{GroupElement::generator(), GroupElement::base_mul(share), c.c1, out.d};
  Bytes ctx = partial_context(c, participant_id);
  out.proof = crypto::prove_dleq(kPartialDomain, share, st, ctx);
  return out;
}

bool verify_partial(const Ciphertext& c, const PartialDecryption& partial,
                    const GroupElement& share_commitment) {
  crypto::DleqStatement st{GroupElement::generator(), share_commitment, c.c1, partial.d};
  Bytes ctx = partial_context(c, partial.participant_id);
  return crypto::verify_dleq(kPartialDomain, st, partial.proof, ctx);
}

GroupElement combine_partials(const ThresholdConfig& cfg, const Ciphertext& c,
                              std::span<const PartialDecryption> partials,
                              std::span<const GroupElement> share_commitments) {
  cfg.validate();
  if (share_commitments.size() != cfg.n) throw Error(Errc::kInvalidConfig, "share commitments");
  std::vector<const PartialDecryption*> used;
  std::set<std::uint32_t> seen;
  for (const auto& p : partials) {
    if (p.participant_id < 1 || p.participant_id > cfg.n) {
      throw Error(Errc::kInvalidPartial, "participant id out of range");
    }
    if (!seen.insert(p.participant_id).second) {
      throw Error(Errc::kInvalidPartial, "repeated participant id");
    }
    if (!verify_partial(c, p, share_commitments[p.participant_id - 1])) {
      throw Error(Errc::kInvalidPartial, "proof rejected for participant " +
                                             std::to_string(p.participant_id));
    }
    if (used.size() < cfg.k) used.push_back(&p);
  }
  if (used.size() < cfg.k) {
    throw Error(Errc::kInsufficientShares,
                std::to_string(used.size()) + " of " + std::to_string(cfg.k));
  }
  std::vector<PartialDecryption> chosen;
  for (const auto* p : used) chosen.push_back(*p);
  return interpolate_partials(c, chosen);
}

GroupElement interpolate_partials(const Ciphertext& c, std::span<const PartialDecryption> partials) {
  std::vector<std::uint32_t> ids;
  for (const auto& p : partials) ids.push_back(p.participant_id);
  GroupElement acc;
  for (const auto& p : partials) acc += p.d * lagrange_at_zero(ids, p.participant_id);
  return c.c2 - acc;
}

DkgOutcome run_dkg(const ThresholdConfig& cfg, std::span<const crypto::KeyPair> participants,
                   crypto::Rng& rng, const DealerMisbehavior& misbehavior) {
  cfg.validate();
  if (participants.size() != cfg.n) throw Error(Errc::kInvalidConfig, "participant count");
  std::vector<GroupElement> pks;
  for (const auto& p : participants) pks.push_back(p.pk);

  DkgOutcome out;
  for (std::uint32_t d = 1; d <= cfg.n; ++d) {
    crypto::Rng dealer_rng = rng.fork("dealer-" + std::to_string(d));
    std::vector<Scalar> coeffs(cfg.k);
    for (auto& a : coeffs) a = dealer_rng.scalar();
    std::map<std::uint32_t, Scalar> overrides;
    if (auto it = misbehavior.bad_shares.find(d); it != misbehavior.bad_shares.end()) {
      for (std::uint32_t j : it->second) overrides[j] = eval_polynomial(coeffs, j) + Scalar::one();
    }
    out.rounds.push_back(dkg_deal_polynomial(cfg, d, coeffs, pks, dealer_rng, overrides));
  }

  // Complaint round: every recipient checks every share.
  std::vector<std::map<std::uint32_t, Scalar>> received(cfg.n);
  for (std::uint32_t j = 1; j <= cfg.n; ++j) {
    for (const auto& round : out.rounds) {
      bool ok = false;
      try {
        Scalar s = dkg_open_share(round, j, participants[j - 1].sk);
        ok = dkg_verify_share(round, j, s);
        if (ok) received[j - 1][round.participant_id] = s;
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) out.disqualified.insert(round.participant_id);
    }
  }

  for (std::uint32_t j = 1; j <= cfg.n; ++j) {
    out.materials.push_back(dkg_finalize(cfg, out.rounds, out.disqualified, j, received[j - 1]));
  }
  out.pk_t = out.materials.front().pk_t;
  out.share_commitments = out.materials.front().share_commitments;
  return out;
}

}  // namespace themis::dkg
