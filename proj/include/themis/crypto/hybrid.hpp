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

#ifndef THEMIS_CRYPTO_HYBRID_HPP_
#define THEMIS_CRYPTO_HYBRID_HPP_

#include <array>
#include <cstdint>
#include <string_view>

#include "themis/bytes.hpp"
#include "themis/crypto/elgamal.hpp"
#include "themis/crypto/group.hpp"
#include "themis/crypto/rng.hpp"

namespace themis::crypto {

using SymmetricKey = std::array<std::uint8_t, 32>;

// ElGamal-encrypted random group element K plus an AEAD box keyed by
// KDF(K). The KEM ciphertext is the associated data of the box.
struct WrappedKey {
  Ciphertext kem_ciphertext;
  Bytes sealed_payload;

  Bytes to_bytes() const;
  static WrappedKey from_bytes(ByteSpan bytes);
  bool operator==(const WrappedKey&) const = default;
};

// Throws Error(kInvalidConfig) for an empty payload.
WrappedKey hybrid_wrap(const GroupElement& recipient_pk, ByteSpan payload, Rng& rng);
WrappedKey hybrid_wrap(const GroupElement& recipient_pk, ByteSpan payload, ByteSpan rng_seed);
// Throws Error(kAuthFailure) on tampering or a wrong key.
Bytes hybrid_unwrap(const Scalar& recipient_sk, const WrappedKey& wrapped);

// XChaCha20-Poly1305 with a 24-byte nonce prepended to the output.
Bytes seal(const SymmetricKey& key, ByteSpan plaintext, Rng& rng, ByteSpan aad = {});
// Throws Error(kAuthFailure).
Bytes open(const SymmetricKey& key, ByteSpan sealed, ByteSpan aad = {});

// Symmetric key from the Diffie-Hellman point sk * peer_pk. Both sides get
// the same key for the same context.
SymmetricKey dh_symmetric_key(const Scalar& sk, const GroupElement& peer_pk,
                              std::string_view context);

}  // namespace themis::crypto

#endif  // THEMIS_CRYPTO_HYBRID_HPP_
