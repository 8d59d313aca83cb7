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

#ifndef THEMIS_CRYPTO_GROUP_HPP_
#define THEMIS_CRYPTO_GROUP_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "themis/bytes.hpp"
#include "themis/crypto/detail/edwards.hpp"

namespace themis::crypto {

// Integer modulo the ristretto255 group order
// q = 2^252 + 27742317777372353535851937790883648493.
// Stored as its canonical 32-byte little-endian encoding.
class Scalar {
 public:
  static constexpr std::size_t kSize = 32;

  Scalar() = default;

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return from_u64(1); }
  static Scalar from_u64(std::uint64_t v);
  // Rejects non-canonical encodings (value >= q).
  static Scalar from_bytes(ByteSpan bytes);
  // Reduces 64 uniformly random bytes mod q.
  static Scalar reduce_wide(ByteSpan bytes64);

  const std::array<std::uint8_t, kSize>& bytes() const { return bytes_; }
  bool is_zero() const;
  // Present when the value fits in 64 bits.
  std::optional<std::uint64_t> to_u64() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  // Throws Error(kInvalidConfig) for zero.
  Scalar inverse() const;

  bool operator==(const Scalar& o) const = default;

  // 4-bit digit i (0 = least significant).
  unsigned nibble(unsigned i) const {
    return (bytes_[i / 2] >> (4 * (i % 2))) & 0xf;
  }

 private:
  std::array<std::uint8_t, kSize> bytes_{};
};

// Element of the prime-order ristretto255 group, written additively:
// "g^m" in multiplicative notation is `Scalar m * g` here.
class GroupElement {
 public:
  static constexpr std::size_t kSize = 32;
  using Encoding = std::array<std::uint8_t, kSize>;

  GroupElement() : p_(detail::ext_identity()) {}

  static GroupElement identity() { return GroupElement(); }
  // Standard ristretto255 base point g.
  static const GroupElement& generator();
  // Second generator h with no known discrete log relative to g, derived by
  // hashing to the group.
  static const GroupElement& pedersen_h();

  // Throws Error(kInvalidEncoding) on a non-canonical or invalid encoding.
  static GroupElement from_bytes(ByteSpan bytes);
  static std::optional<GroupElement> try_from_bytes(ByteSpan bytes);
  // Domain-separated hash to a uniformly distributed element.
  static GroupElement hash_to_group(std::string_view domain, ByteSpan msg);

  // Fixed-base multiples of g and h use precomputed tables.
  static GroupElement base_mul(const Scalar& s);
  static GroupElement base_mul(std::uint64_t m);
  static GroupElement h_mul(const Scalar& s);

  Encoding to_bytes() const { return detail::ristretto_encode(p_); }
  bool is_identity() const;

  GroupElement operator+(const GroupElement& o) const {
    return GroupElement(detail::ext_add(p_, o.p_));
  }
  GroupElement operator-(const GroupElement& o) const {
    return GroupElement(detail::ext_sub(p_, o.p_));
  }
  GroupElement operator-() const { return GroupElement(detail::ext_neg(p_)); }
  GroupElement& operator+=(const GroupElement& o) { return *this = *this + o; }
  GroupElement& operator-=(const GroupElement& o) { return *this = *this - o; }
  GroupElement dbl() const { return GroupElement(detail::ext_dbl(p_)); }

  // Variable-base multiplication. Work is proportional to the bit length of
  // the multiplier, so small multipliers are cheap.
  GroupElement operator*(const Scalar& s) const;
  GroupElement operator*(std::uint64_t k) const;

  bool operator==(const GroupElement& o) const { return detail::ristretto_eq(p_, o.p_); }

  const detail::ExtPoint& point() const { return p_; }
  explicit GroupElement(const detail::ExtPoint& p) : p_(p) {}

 private:
  detail::ExtPoint p_;
};

inline GroupElement operator*(const Scalar& s, const GroupElement& p) { return p * s; }

// Radix-16 precomputation for repeated multiplication of one base point:
// 64 rows of 16 multiples, one addition per nonzero digit.
class FixedBaseTable {
 public:
  explicit FixedBaseTable(const GroupElement& base);

  GroupElement mul(const Scalar& s) const;
  const GroupElement& base() const { return base_; }

 private:
  GroupElement base_;
  std::vector<detail::CachedPoint> rows_;  // 64 * 16
};

}  // namespace themis::crypto

#endif  // THEMIS_CRYPTO_GROUP_HPP_
