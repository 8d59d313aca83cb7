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

#ifndef THEMIS_CRYPTO_SIGNATURE_HPP_
#define THEMIS_CRYPTO_SIGNATURE_HPP_

#include <array>
#include <cstdint>

#include "themis/bytes.hpp"
#include "themis/crypto/group.hpp"

namespace themis::crypto {

// Schnorr signature in (challenge, response) form. The signer key travels
// with the signature; verify_sig still takes the expected key explicitly.
struct Signature {
  static constexpr std::size_t kSize = 96;

  Scalar challenge;
  Scalar response;
  GroupElement signer_pk;

  std::array<std::uint8_t, kSize> to_bytes() const;
  static Signature from_bytes(ByteSpan bytes);
  bool operator==(const Signature& o) const {
    return challenge == o.challenge && response == o.response && signer_pk == o.signer_pk;
  }
};

// Nonce is derived from (sk, msg), so signing is deterministic.
Signature sign(const Scalar& sk, ByteSpan msg);
bool verify_sig(const GroupElement& pk, ByteSpan msg, const Signature& sig);

}  // namespace themis::crypto

#endif  // THEMIS_CRYPTO_SIGNATURE_HPP_
