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

#include "themis/crypto/elgamal.hpp"

#include <algorithm>

#include "themis/error.hpp"

namespace themis::crypto {

KeyPair keypair_from_secret(const Scalar& sk) {
  return KeyPair{sk, GroupElement::base_mul(sk)};
}

KeyPair keygen(Rng& rng) { return keypair_from_secret(rng.nonzero_scalar()); }

KeyPair keygen(ByteSpan rng_seed) {
  Rng rng(rng_seed);
  return keygen(rng);
}

std::array<std::uint8_t, Ciphertext::kSize> Ciphertext::to_bytes() const {
  std::array<std::uint8_t, kSize> out{};
  auto a = c1.to_bytes();
  auto b = c2.to_bytes();
  std::copy(a.begin(), a.end(), out.begin());
  std::copy(b.begin(), b.end(), out.begin() + 32);
  return out;
}

Ciphertext Ciphertext::from_bytes(ByteSpan bytes) {
  if (bytes.size() != kSize) throw Error(Errc::kInvalidEncoding, "ciphertext length");
  return Ciphertext{GroupElement::from_bytes(bytes.subspan(0, 32)),
                    GroupElement::from_bytes(bytes.subspan(32, 32))};
}

Ciphertext encrypt(const GroupElement& pk, std::uint64_t m, const Scalar& r,
                   std::uint64_t max_plaintext) {
  if (m > max_plaintext) throw Error(Errc::kPlaintextTooLarge, std::to_string(m));
  return Ciphertext{GroupElement::base_mul(r), GroupElement::base_mul(m) + pk * r};
}

Ciphertext add_ciphertexts(const Ciphertext& a, const Ciphertext& b) {
  return Ciphertext{a.c1 + b.c1, a.c2 + b.c2};
}

Ciphertext scalar_mul_ciphertext(const Ciphertext& a, std::uint64_t k) {
  return Ciphertext{a.c1 * k, a.c2 * k};
}

GroupElement decrypt_to_element(const Scalar& sk, const Ciphertext& c) {
  return c.c2 - c.c1 * sk;
}

VectorEncryptor::VectorEncryptor(const GroupElement& pk, std::uint64_t max_plaintext)
    : pk_table_(pk), max_plaintext_(max_plaintext) {}

Ciphertext VectorEncryptor::encrypt(std::uint64_t m, const Scalar& r) const {
  if (m > max_plaintext_) throw Error(Errc::kPlaintextTooLarge, std::to_string(m));
  return Ciphertext{GroupElement::base_mul(r), GroupElement::base_mul(m) + pk_table_.mul(r)};
}

std::vector<Ciphertext> VectorEncryptor::encrypt(std::span<const std::uint64_t> values,
                                                 Rng& rng) const {
  std::vector<Ciphertext> out;
  out.reserve(values.size());
  for (std::uint64_t m : values) out.push_back(encrypt(m, rng.nonzero_scalar()));
  return out;
}

Ciphertext weighted_sum(std::span<const std::uint64_t> weights,
                        std::span<const Ciphertext> cts) {
  if (weights.size() != cts.size()) throw Error(Errc::kLengthMismatch, "weighted_sum");
  Ciphertext acc;
  for (std::size_t i = 0; i < cts.size(); ++i) {
    if (weights[i] == 0) continue;
    acc = acc + scalar_mul_ciphertext(cts[i], weights[i]);
  }
  return acc;
}

}  // namespace themis::crypto
