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

#include "themis/crypto/proofs.hpp"

#include <algorithm>

#include "themis/crypto/transcript.hpp"
#include "themis/error.hpp"

namespace themis::crypto {

namespace {

constexpr std::string_view kDecryptionDomain = "themis/decryption-proof/v1";

Transcript statement_transcript(std::string_view domain, const DleqStatement& st,
                                ByteSpan context) {
  Transcript t(domain);
  t.append("base1", st.base1)
      .append("point1", st.point1)
      .append("base2", st.base2)
      .append("point2", st.point2)
      .append("context", context);
  return t;
}

Scalar derive_nonce(const Transcript& statement, const Scalar& secret) {
  Transcript t = statement;
  t.append("nonce-secret", secret);
  return t.challenge_scalar("nonce");
}

Scalar challenge_for(Transcript t, const GroupElement& a, const GroupElement& b) {
  t.append("commitment_a", a).append("commitment_b", b);
  return t.challenge_scalar("challenge");
}

}  // namespace

std::array<std::uint8_t, DleqProof::kSize> DleqProof::to_bytes() const {
  std::array<std::uint8_t, kSize> out{};
  auto a = commitment_a.to_bytes();
  auto b = commitment_b.to_bytes();
  std::copy(a.begin(), a.end(), out.begin());
  std::copy(b.begin(), b.end(), out.begin() + 32);
  std::copy(challenge.bytes().begin(), challenge.bytes().end(), out.begin() + 64);
  std::copy(response.bytes().begin(), response.bytes().end(), out.begin() + 96);
  return out;
}

DleqProof DleqProof::from_bytes(ByteSpan bytes) {
  if (bytes.size() != kSize) throw Error(Errc::kInvalidEncoding, "dleq proof length");
  return DleqProof{GroupElement::from_bytes(bytes.subspan(0, 32)),
                   GroupElement::from_bytes(bytes.subspan(32, 32)),
                   Scalar::from_bytes(bytes.subspan(64, 32)),
                   Scalar::from_bytes(bytes.subspan(96, 32))};
}

std::array<std::uint8_t, CompactDleqProof::kSize> CompactDleqProof::to_bytes() const {
  std::array<std::uint8_t, kSize> out{};
  std::copy(challenge.bytes().begin(), challenge.bytes().end(), out.begin());
  std::copy(response.bytes().begin(), response.bytes().end(), out.begin() + 32);
  return out;
}

CompactDleqProof CompactDleqProof::from_bytes(ByteSpan bytes) {
  if (bytes.size() != kSize) throw Error(Errc::kInvalidEncoding, "compact proof length");
  return CompactDleqProof{Scalar::from_bytes(bytes.subspan(0, 32)),
                          Scalar::from_bytes(bytes.subspan(32, 32))};
}

DleqProof prove_dleq(std::string_view domain, const Scalar& secret, const DleqStatement& st,
                     ByteSpan context) {
  Transcript t = statement_transcript(domain, st, context);
  Scalar w = derive_nonce(t, secret);
  GroupElement a = st.base1 * w;
  GroupElement b = st.base2 * w;
  Scalar c = challenge_for(t, a, b);
  return DleqProof{a, b, c, w + c * secret};
}

bool verify_dleq(std::string_view domain, const DleqStatement& st, const DleqProof& proof,
                 ByteSpan context) {
  Transcript t = statement_transcript(domain, st, context);
  if (!(challenge_for(t, proof.commitment_a, proof.commitment_b) == proof.challenge)) {
    return false;
  }
  if (!(st.base1 * proof.response == proof.commitment_a + st.point1 * proof.challenge)) {
    return false;
  }
  return st.base2 * proof.response == proof.commitment_b + st.point2 * proof.challenge;
}

CompactDleqProof prove_dleq_compact(std::string_view domain, const Scalar& secret,
                                    const DleqStatement& st, ByteSpan context) {
  DleqProof full = prove_dleq(domain, secret, st, context);
  return CompactDleqProof{full.challenge, full.response};
}

bool verify_dleq_compact(std::string_view domain, const DleqStatement& st,
                         const CompactDleqProof& proof, ByteSpan context) {
  GroupElement a = st.base1 * proof.response - st.point1 * proof.challenge;
  GroupElement b = st.base2 * proof.response - st.point2 * proof.challenge;
  Transcript t = statement_transcript(domain, st, context);
  return challenge_for(t, a, b) == proof.challenge;
}

namespace {

DleqStatement decryption_statement(const GroupElement& pk, const Ciphertext& c,
                                   std::uint64_t m) {
  return DleqStatement{GroupElement::generator(), pk, c.c1,
                       c.c2 - GroupElement::base_mul(m)};
}

Bytes decryption_context(const Ciphertext& c, std::uint64_t m) {
  // c2 and g^m individually, not only their difference.
  ByteWriter w;
  w.fixed(c.c2.to_bytes()).fixed(GroupElement::base_mul(m).to_bytes()).u64(m);
  return std::move(w).bytes();
}

}  // namespace

DecryptionProof prove_decryption(const Scalar& sk, const Ciphertext& c, std::uint64_t m) {
  GroupElement pk = GroupElement::base_mul(sk);
  Bytes ctx = decryption_context(c, m);
  return prove_dleq(kDecryptionDomain, sk, decryption_statement(pk, c, m), ByteSpan(ctx));
}

bool verify_decryption(const GroupElement& pk, const Ciphertext& c, std::uint64_t m,
                       const DecryptionProof& proof) {
  Bytes ctx = decryption_context(c, m);
  return verify_dleq(kDecryptionDomain, decryption_statement(pk, c, m), proof, ByteSpan(ctx));
}

}  // namespace themis::crypto
