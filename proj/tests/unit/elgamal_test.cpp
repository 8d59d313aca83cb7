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

#include <gtest/gtest.h>
#include <sodium.h>

#include <set>
#include <vector>

#include "themis/crypto/elgamal.hpp"
#include "themis/crypto/rng.hpp"
#include "themis/crypto/sodium.hpp"
#include "themis/error.hpp"

namespace themis::crypto {
namespace {

// g^m computed by libsodium, independent of the in-house tables.
GroupElement oracle_pow(std::uint64_t m) {
  if (m == 0) return GroupElement::identity();
  GroupElement::Encoding out{};
  EXPECT_EQ(crypto_scalarmult_ristretto255_base(out.data(), Scalar::from_u64(m).bytes().data()),
            0);
  return GroupElement::from_bytes(ByteSpan(out));
}

std::uint64_t decrypt(const Scalar& sk, const Ciphertext& c,
                      std::uint64_t bound = kDefaultMaxPlaintext) {
  return recover_plaintext(decrypt_to_element(sk, c), bound);
}

class ElGamalTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ensure_sodium();
    kp_ = keygen(rng_);
  }
  Rng rng_{"elgamal-test"};
  KeyPair kp_;
};

TEST_F(ElGamalTest, KeygenFromOneIsGenerator) {
  EXPECT_EQ(keypair_from_secret(Scalar::one()).pk, GroupElement::generator());
}

TEST_F(ElGamalTest, KeygenDeterministicAndNonzero) {
  auto a = keygen(as_bytes("seed-a"));
  auto b = keygen(as_bytes("seed-a"));
  EXPECT_EQ(a.sk, b.sk);
  EXPECT_FALSE(a.sk.is_zero());
  EXPECT_EQ(a.pk, oracle_pow(1) * a.sk);
}

TEST_F(ElGamalTest, DistinctSeedsGiveDistinctKeys) {
  std::set<std::array<std::uint8_t, 32>> seen;
  for (int i = 0; i < 1000; ++i) {
    std::string seed = "seed-" + std::to_string(i);
    seen.insert(keygen(as_bytes(seed)).sk.bytes());
  }
  EXPECT_EQ(seen.size(), 1000u);
}

TEST_F(ElGamalTest, EncryptZero) {
  Ciphertext c = encrypt(kp_.pk, 0, rng_.scalar());
  EXPECT_TRUE(decrypt_to_element(kp_.sk, c).is_identity());
  EXPECT_EQ(decrypt(kp_.sk, c), 0u);
}

TEST_F(ElGamalTest, CiphertextShape) {
  Scalar r = rng_.scalar();
  Ciphertext c = encrypt(kp_.pk, 9, r);
  EXPECT_EQ(c.c1, oracle_pow(1) * r);
  EXPECT_EQ(c.c2, oracle_pow(9) + kp_.pk * r);
  EXPECT_EQ(Ciphertext::from_bytes(ByteSpan(c.to_bytes())), c);
}

TEST_F(ElGamalTest, AddAndScale) {
  auto a = encrypt(kp_.pk, 5, rng_.scalar());
  auto b = encrypt(kp_.pk, 7, rng_.scalar());
  EXPECT_EQ(decrypt(kp_.sk, add_ciphertexts(a, b)), 12u);
  auto c = encrypt(kp_.pk, 3, rng_.scalar());
  EXPECT_EQ(decrypt(kp_.sk, scalar_mul_ciphertext(c, 4)), 12u);
  EXPECT_EQ(decrypt(kp_.sk, scalar_mul_ciphertext(c, 0)), 0u);
  EXPECT_EQ(decrypt(kp_.sk, scalar_mul_ciphertext(c, 1)), 3u);
  auto z = encrypt(kp_.pk, 0, rng_.scalar());
  EXPECT_EQ(decrypt(kp_.sk, scalar_mul_ciphertext(z, 20)), 0u);
  EXPECT_EQ(decrypt(kp_.sk, a + z), 5u);
}

TEST_F(ElGamalTest, PlaintextTooLarge) {
  try {
    encrypt(kp_.pk, kDefaultMaxPlaintext + 1, rng_.scalar());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kPlaintextTooLarge);
  }
  EXPECT_NO_THROW(encrypt(kp_.pk, kDefaultMaxPlaintext, rng_.scalar()));
  EXPECT_NO_THROW(encrypt(kp_.pk, 5000, rng_.scalar(), 5000));
  EXPECT_THROW(encrypt(kp_.pk, 5001, rng_.scalar(), 5000), Error);
}

TEST_F(ElGamalTest, DecryptToElement) {
  auto c = encrypt(kp_.pk, 42, rng_.scalar());
  EXPECT_EQ(decrypt_to_element(kp_.sk, c), oracle_pow(42));
  auto other = keygen(rng_);
  EXPECT_FALSE(decrypt_to_element(other.sk, c) == oracle_pow(42));
}

TEST_F(ElGamalTest, HomomorphismProperty) {
  const std::uint64_t half = kDefaultMaxPlaintext / 2;
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t m1 = rng_.range(0, half);
    std::uint64_t m2 = rng_.range(0, half);
    auto c = encrypt(kp_.pk, m1, rng_.scalar()) + encrypt(kp_.pk, m2, rng_.scalar());
    ASSERT_EQ(decrypt(kp_.sk, c), m1 + m2) << m1 << " + " << m2;
  }
}

TEST_F(ElGamalTest, LinearityProperty) {
  VectorEncryptor enc(kp_.pk);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = rng_.range(1, 64);
    std::vector<std::uint64_t> ms(n), ks(n);
    std::uint64_t expect = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ms[i] = rng_.range(0, 40);
      ks[i] = rng_.range(0, 300);
      expect += ms[i] * ks[i];
    }
    auto cts = enc.encrypt(ms, rng_);
    ASSERT_EQ(decrypt(kp_.sk, weighted_sum(ks, cts)), expect);
  }
  std::vector<std::uint64_t> w(3, 1);
  std::vector<Ciphertext> two(2);
  EXPECT_THROW(weighted_sum(w, two), Error);
}

TEST_F(ElGamalTest, VectorEncryptorMatchesEncrypt) {
  VectorEncryptor enc(kp_.pk);
  Scalar r = rng_.scalar();
  EXPECT_EQ(enc.encrypt(17, r), encrypt(kp_.pk, 17, r));
}

TEST_F(ElGamalTest, RecoveryMatchesBruteForce) {
  const std::uint64_t bound = 1 << 12;
  GroupElement acc = GroupElement::identity();
  for (std::uint64_t m = 0; m <= bound; ++m) {
    // Linear scan oracle: acc = g + g + ... + g (m times).
    ASSERT_EQ(recover_plaintext(acc, bound), m);
    acc += GroupElement::generator();
  }
}

TEST_F(ElGamalTest, RecoverLargeValue) {
  EXPECT_EQ(recover_plaintext(GroupElement::identity(), kDefaultMaxPlaintext), 0u);
  EXPECT_EQ(recover_plaintext(oracle_pow(1000000), kDefaultMaxPlaintext), 1000000u);
  EXPECT_EQ(recover_plaintext(oracle_pow(kDefaultMaxPlaintext), kDefaultMaxPlaintext),
            kDefaultMaxPlaintext);
}

TEST_F(ElGamalTest, RecoverOutOfRange) {
  for (std::uint64_t bound : {std::uint64_t{100}, std::uint64_t{1} << 12, kDefaultMaxPlaintext}) {
    try {
      recover_plaintext(oracle_pow(bound + 1), bound);
      FAIL() << bound;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kNotInRange);
    }
  }
  EXPECT_THROW(recover_plaintext(GroupElement::pedersen_h(), 1000), Error);
}

}  // namespace
}  // namespace themis::crypto
