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

#ifndef THEMIS_CRYPTO_PROOFS_HPP_
#define THEMIS_CRYPTO_PROOFS_HPP_

#include <array>
#include <cstdint>
#include <string_view>

#include "themis/bytes.hpp"
#include "themis/crypto/elgamal.hpp"
#include "themis/crypto/group.hpp"

namespace themis::crypto {

// Chaum-Pedersen proof that log_{base1}(point1) == log_{base2}(point2).
// Verification checks the challenge against the transcript as well as both
// commitment equations, so every field is load-bearing.
struct DleqProof {
  static constexpr std::size_t kSize = 128;

  GroupElement commitment_a;
  GroupElement commitment_b;
  Scalar challenge;
  Scalar response;

  std::array<std::uint8_t, kSize> to_bytes() const;
  static DleqProof from_bytes(ByteSpan bytes);
  bool operator==(const DleqProof&) const = default;
};

// Same relation, commitments recomputed by the verifier.
struct CompactDleqProof {
  static constexpr std::size_t kSize = 64;

  Scalar challenge;
  Scalar response;

  std::array<std::uint8_t, kSize> to_bytes() const;
  static CompactDleqProof from_bytes(ByteSpan bytes);
  bool operator==(const CompactDleqProof&) const = default;
};

struct DleqStatement {
  GroupElement base1;
  GroupElement point1;
  GroupElement base2;
  GroupElement point2;
};

// `context` is absorbed into the transcript after the statement; `domain`
// separates proof types.
DleqProof prove_dleq(std::string_view domain, const Scalar& secret,
                     const DleqStatement& st, ByteSpan context = {});
bool verify_dleq(std::string_view domain, const DleqStatement& st, const DleqProof& proof,
                 ByteSpan context = {});

CompactDleqProof prove_dleq_compact(std::string_view domain, const Scalar& secret,
                                    const DleqStatement& st, ByteSpan context = {});
bool verify_dleq_compact(std::string_view domain, const DleqStatement& st,
                         const CompactDleqProof& proof, ByteSpan context = {});

using DecryptionProof = DleqProof;

// Proves that c decrypts to m under the key sk, i.e. log_g(pk) equals
// log_{c1}(c2 - g^m). The transcript binds (pk, c1, c2, g^m).
DecryptionProof prove_decryption(const Scalar& sk, const Ciphertext& c, std::uint64_t m);
bool verify_decryption(const GroupElement& pk, const Ciphertext& c, std::uint64_t m,
                       const DecryptionProof& proof);

}  // namespace themis::crypto

#endif  // THEMIS_CRYPTO_PROOFS_HPP_
