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

#include "themis/crypto/hybrid.hpp"

#include <sodium.h>

#include <algorithm>

#include "themis/crypto/sodium.hpp"
#include "themis/crypto/transcript.hpp"
#include "themis/error.hpp"

namespace themis::crypto {

namespace {

constexpr std::size_t kNonceSize = crypto_aead_xchacha20poly1305_ietf_NPUBBYTES;
constexpr std::size_t kTagSize = crypto_aead_xchacha20poly1305_ietf_ABYTES;

SymmetricKey kdf(std::string_view domain, const GroupElement& shared, ByteSpan extra) {
  Transcript t(domain);
  t.append("shared", shared).append("extra", extra);
  auto d = t.digest("key");
  SymmetricKey key{};
  std::copy_n(d.begin(), key.size(), key.begin());
  return key;
}

Bytes aead_seal(const SymmetricKey& key, const std::uint8_t* nonce, ByteSpan pt, ByteSpan aad) {
  Bytes out(pt.size() + kTagSize);
  unsigned long long len = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt(out.data(), &len, pt.data(), pt.size(),
                                             aad.data(), aad.size(), nullptr, nonce,
                                             key.data());
  out.resize(len);
  return out;
}

Bytes aead_open(const SymmetricKey& key, const std::uint8_t* nonce, ByteSpan ct, ByteSpan aad) {
  if (ct.size() < kTagSize) throw Error(Errc::kAuthFailure, "ciphertext too short");
  Bytes out(ct.size() - kTagSize);
  unsigned long long len = 0;
  if (crypto_aead_xchacha20poly1305_ietf_decrypt(out.data(), &len, nullptr, ct.data(),
                                                 ct.size(), aad.data(), aad.size(), nonce,
                                                 key.data()) != 0) {
    throw Error(Errc::kAuthFailure);
  }
  out.resize(len);
  return out;
}

}  // namespace

Bytes WrappedKey::to_bytes() const {
  ByteWriter w;
  w.fixed(kem_ciphertext.to_bytes()).var(sealed_payload);
  return std::move(w).bytes();
}

WrappedKey WrappedKey::from_bytes(ByteSpan bytes) {
  ByteReader r(bytes);
  WrappedKey out;
  out.kem_ciphertext = Ciphertext::from_bytes(r.raw(Ciphertext::kSize));
  out.sealed_payload = r.var();
  r.expect_done();
  return out;
}

WrappedKey hybrid_wrap(const GroupElement& recipient_pk, ByteSpan payload, Rng& rng) {
  ensure_sodium();
  if (payload.empty()) throw Error(Errc::kInvalidConfig, "empty payload");
  GroupElement k = GroupElement::base_mul(rng.nonzero_scalar());
  Scalar r = rng.nonzero_scalar();
  Ciphertext kem{GroupElement::base_mul(r), k + recipient_pk * r};
  auto kem_bytes = kem.to_bytes();
  // Fresh key per wrap, so a fixed nonce is safe.
  SymmetricKey key = kdf("themis/hybrid-kem/v1", k, kem_bytes);
  std::array<std::uint8_t, kNonceSize> nonce{};
  return WrappedKey{kem, aead_seal(key, nonce.data(), payload, kem_bytes)};
}

WrappedKey hybrid_wrap(const GroupElement& recipient_pk, ByteSpan payload, ByteSpan rng_seed) {
  Rng rng(rng_seed);
  return hybrid_wrap(recipient_pk, payload, rng);
}

Bytes hybrid_unwrap(const Scalar& recipient_sk, const WrappedKey& wrapped) {
  ensure_sodium();
  GroupElement k = wrapped.kem_ciphertext.c2 - wrapped.kem_ciphertext.c1 * recipient_sk;
  auto kem_bytes = wrapped.kem_ciphertext.to_bytes();
  SymmetricKey key = kdf("themis/hybrid-kem/v1", k, kem_bytes);
  std::array<std::uint8_t, kNonceSize> nonce{};
  return aead_open(key, nonce.data(), wrapped.sealed_payload, kem_bytes);
}

Bytes seal(const SymmetricKey& key, ByteSpan plaintext, Rng& rng, ByteSpan aad) {
  ensure_sodium();
  std::array<std::uint8_t, kNonceSize> nonce{};
  rng.fill(nonce.data(), nonce.size());
  Bytes out(kNonceSize + plaintext.size() + kTagSize);
  std::copy(nonce.begin(), nonce.end(), out.begin());
  unsigned long long len = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt(out.data() + kNonceSize, &len, plaintext.data(),
                                             plaintext.size(), aad.data(), aad.size(), nullptr,
                                             nonce.data(), key.data());
  out.resize(kNonceSize + len);
  return out;
}

Bytes open(const SymmetricKey& key, ByteSpan sealed, ByteSpan aad) {
  ensure_sodium();
  if (sealed.size() < kNonceSize + kTagSize) throw Error(Errc::kAuthFailure, "too short");
  return aead_open(key, sealed.data(), sealed.subspan(kNonceSize), aad);
}

SymmetricKey dh_symmetric_key(const Scalar& sk, const GroupElement& peer_pk,
                              std::string_view context) {
  return kdf("themis/dh-key/v1", peer_pk * sk, as_bytes(context));
}

}  // namespace themis::crypto
