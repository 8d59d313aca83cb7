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

#include <array>

#include "themis/crypto/group.hpp"
#include "themis/crypto/rng.hpp"
#include "themis/crypto/sodium.hpp"
#include "themis/error.hpp"

namespace themis::crypto {
namespace {

// libsodium's ristretto255 API is used as an independent oracle for the
// in-house extended-coordinate arithmetic.
GroupElement::Encoding sodium_base_mul(const Scalar& s) {
  GroupElement::Encoding out{};
  EXPECT_EQ(crypto_scalarmult_ristretto255_base(out.data(), s.bytes().data()), 0);
  return out;
}

class GroupTest : public ::testing::Test {
 protected:
  void SetUp() override { ensure_sodium(); }
  Rng rng_{"group-test"};
};

TEST_F(GroupTest, GeneratorMatchesSodiumBasepoint) {
  EXPECT_EQ(GroupElement::generator().to_bytes(), sodium_base_mul(Scalar::one()));
  EXPECT_EQ(GroupElement::base_mul(Scalar::one()), GroupElement::generator());
}

TEST_F(GroupTest, IdentityEncodesToZero) {
  GroupElement::Encoding zero{};
  EXPECT_EQ(GroupElement::identity().to_bytes(), zero);
  auto decoded = GroupElement::from_bytes(ByteSpan(zero));
  EXPECT_TRUE(decoded.is_identity());
  EXPECT_TRUE(GroupElement::base_mul(Scalar::zero()).is_identity());
}

TEST_F(GroupTest, FixedBaseMatchesSodium) {
  for (int i = 0; i < 200; ++i) {
    Scalar s = rng_.nonzero_scalar();
    EXPECT_EQ(GroupElement::base_mul(s).to_bytes(), sodium_base_mul(s));
  }
}

TEST_F(GroupTest, VariableBaseMatchesSodium) {
  for (int i = 0; i < 100; ++i) {
    Scalar a = rng_.nonzero_scalar();
    Scalar b = rng_.nonzero_scalar();
    GroupElement p = GroupElement::base_mul(a);
    GroupElement::Encoding expected{};
    auto penc = p.to_bytes();
    ASSERT_EQ(crypto_scalarmult_ristretto255(expected.data(), b.bytes().data(), penc.data()), 0);
    EXPECT_EQ((p * b).to_bytes(), expected);
  }
}

TEST_F(GroupTest, AdditionAndSubtractionMatchSodium) {
  for (int i = 0; i < 200; ++i) {
    auto p = GroupElement::base_mul(rng_.scalar());
    auto q = GroupElement::base_mul(rng_.scalar());
    auto pe = p.to_bytes();
    auto qe = q.to_bytes();
    GroupElement::Encoding sum{}, diff{};
    crypto_core_ristretto255_add(sum.data(), pe.data(), qe.data());
    crypto_core_ristretto255_sub(diff.data(), pe.data(), qe.data());
    EXPECT_EQ((p + q).to_bytes(), sum);
    EXPECT_EQ((p - q).to_bytes(), diff);
    EXPECT_EQ(p.dbl(), p + p);
  }
}

TEST_F(GroupTest, DecodeAgreesWithSodiumValidity) {
  int valid = 0;
  for (int i = 0; i < 2000; ++i) {
    Bytes raw = rng_.bytes(32);
    if (raw[31] & 0x80) {
      // libsodium 1.0.18 ignores the top bit; canonical encodings never set it.
      EXPECT_FALSE(GroupElement::try_from_bytes(ByteSpan(raw)).has_value());
      raw[31] &= 0x7f;
    }
    bool ours = GroupElement::try_from_bytes(ByteSpan(raw)).has_value();
    bool theirs = crypto_core_ristretto255_is_valid_point(raw.data()) == 1;
    EXPECT_EQ(ours, theirs) << to_hex(ByteSpan(raw));
    valid += ours;
  }
  EXPECT_GT(valid, 0);
}

TEST_F(GroupTest, EncodingRoundTrips) {
  for (int i = 0; i < 100; ++i) {
    auto p = GroupElement::base_mul(rng_.scalar()) * std::uint64_t{3};
    auto enc = p.to_bytes();
    auto q = GroupElement::from_bytes(ByteSpan(enc));
    EXPECT_EQ(p, q);
    EXPECT_EQ(q.to_bytes(), enc);
  }
}

TEST_F(GroupTest, RejectsNonCanonicalFieldEncoding) {
  // p itself (2^255 - 19) is a non-canonical encoding of zero.
  std::array<std::uint8_t, 32> p_bytes{};
  p_bytes.fill(0xff);
  p_bytes[0] = 0xed;
  p_bytes[31] = 0x7f;
  EXPECT_FALSE(GroupElement::try_from_bytes(ByteSpan(p_bytes)).has_value());
  EXPECT_THROW(GroupElement::from_bytes(ByteSpan(p_bytes)), Error);
}

TEST_F(GroupTest, SmallMultipliersAgreeWithScalarPath) {
  const auto& g = GroupElement::generator();
  GroupElement acc;
  for (std::uint64_t k = 0; k < 300; ++k) {
    EXPECT_EQ(g * k, acc);
    EXPECT_EQ(g * Scalar::from_u64(k), acc);
    EXPECT_EQ(GroupElement::base_mul(k), acc);
    acc += g;
  }
  std::uint64_t big = 0xfedcba9876543210ULL;
  EXPECT_EQ(g * big, GroupElement::base_mul(Scalar::from_u64(big)));
}

TEST_F(GroupTest, PedersenGeneratorIsIndependentAndStable) {
  const auto& h = GroupElement::pedersen_h();
  EXPECT_FALSE(h.is_identity());
  EXPECT_FALSE(h == GroupElement::generator());
  EXPECT_EQ(h, GroupElement::hash_to_group("themis/pedersen-h", {}));
  Scalar s = rng_.scalar();
  EXPECT_EQ(GroupElement::h_mul(s), h * s);
}

TEST_F(GroupTest, HashToGroupIsDomainSeparated) {
  Bytes msg = {1, 2, 3};
  auto a = GroupElement::hash_to_group("a", ByteSpan(msg));
  auto b = GroupElement::hash_to_group("b", ByteSpan(msg));
  EXPECT_FALSE(a == b);
  EXPECT_EQ(a, GroupElement::hash_to_group("a", ByteSpan(msg)));
}

TEST_F(GroupTest, FixedBaseTableForArbitraryBase) {
  auto base = GroupElement::base_mul(rng_.nonzero_scalar());
  FixedBaseTable table(base);
  for (int i = 0; i < 50; ++i) {
    Scalar s = rng_.scalar();
    EXPECT_EQ(table.mul(s), base * s);
  }
}

TEST_F(GroupTest, ScalarArithmetic) {
  Scalar a = rng_.scalar();
  Scalar b = rng_.nonzero_scalar();
  EXPECT_EQ(a + b - b, a);
  EXPECT_EQ(a * b * b.inverse(), a);
  EXPECT_EQ(a + (-a), Scalar::zero());
  EXPECT_EQ(Scalar::from_u64(7) * Scalar::from_u64(6), Scalar::from_u64(42));
  EXPECT_EQ(Scalar::from_u64(42).to_u64(), 42u);
  EXPECT_FALSE((-Scalar::one()).to_u64().has_value());
  EXPECT_THROW(Scalar::zero().inverse(), Error);
  // Homomorphism g^(a+b) = g^a g^b.
  EXPECT_EQ(GroupElement::base_mul(a + b), GroupElement::base_mul(a) + GroupElement::base_mul(b));
}

TEST_F(GroupTest, ScalarFromBytesRejectsOrderAndAbove) {
  // q little-endian.
  Bytes q = from_hex("edd3f55c1a631258d69cf7a2def9de1400000000000000000000000000000010");
  EXPECT_THROW(Scalar::from_bytes(ByteSpan(q)), Error);
  q[0] -= 1;
  EXPECT_NO_THROW(Scalar::from_bytes(ByteSpan(q)));
  EXPECT_EQ(Scalar::from_bytes(ByteSpan(q)) + Scalar::one(), Scalar::zero());
}

}  // namespace
}  // namespace themis::crypto
