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

#ifndef THEMIS_CRYPTO_ELGAMAL_HPP_
#define THEMIS_CRYPTO_ELGAMAL_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "themis/bytes.hpp"
#include "themis/crypto/group.hpp"
#include "themis/crypto/rng.hpp"

namespace themis::crypto {

// Largest plaintext accepted by encrypt() unless a caller passes its own bound.
inline constexpr std::uint64_t kDefaultMaxPlaintext = std::uint64_t{1} << 20;

struct KeyPair {
  Scalar sk;
  GroupElement pk;
};

// pk = g^sk.
KeyPair keypair_from_secret(const Scalar& sk);
// sk is drawn from [1, q); zero draws are resampled.
KeyPair keygen(Rng& rng);
KeyPair keygen(ByteSpan rng_seed);

// Exponential ElGamal: (g^r, g^m pk^r).
struct Ciphertext {
  static constexpr std::size_t kSize = 64;

  GroupElement c1;
  GroupElement c2;

  std::array<std::uint8_t, kSize> to_bytes() const;
  static Ciphertext from_bytes(ByteSpan bytes);

  bool operator==(const Ciphertext& o) const { return c1 == o.c1 && c2 == o.c2; }
};

// Throws Error(kPlaintextTooLarge) when m > max_plaintext.
Ciphertext encrypt(const GroupElement& pk, std::uint64_t m, const Scalar& r,
                   std::uint64_t max_plaintext = kDefaultMaxPlaintext);

Ciphertext add_ciphertexts(const Ciphertext& a, const Ciphertext& b);
Ciphertext scalar_mul_ciphertext(const Ciphertext& a, std::uint64_t k);
inline Ciphertext operator+(const Ciphertext& a, const Ciphertext& b) {
  return add_ciphertexts(a, b);
}

// Returns g^m.
GroupElement decrypt_to_element(const Scalar& sk, const Ciphertext& c);

// Recovers m from g^m with 0 <= m <= bound by baby-step/giant-step.
// Throws Error(kNotInRange) if no such m exists. Tables are cached per size
// and shared between threads.
std::uint64_t recover_plaintext(const GroupElement& elem, std::uint64_t bound);

// Encrypts many values under one key, amortizing a fixed-base table for pk.
class VectorEncryptor {
 public:
  explicit VectorEncryptor(const GroupElement& pk,
                           std::uint64_t max_plaintext = kDefaultMaxPlaintext);

  Ciphertext encrypt(std::uint64_t m, const Scalar& r) const;
  std::vector<Ciphertext> encrypt(std::span<const std::uint64_t> values, Rng& rng) const;

 private:
  FixedBaseTable pk_table_;
  std::uint64_t max_plaintext_;
};

// Sum_i weights[i] * cts[i], homomorphically. Sizes must match.
Ciphertext weighted_sum(std::span<const std::uint64_t> weights,
                        std::span<const Ciphertext> cts);

}  // namespace themis::crypto

#endif  // THEMIS_CRYPTO_ELGAMAL_HPP_
