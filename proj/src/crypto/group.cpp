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

#include "themis/crypto/group.hpp"

#include <sodium.h>

#include <cstring>
#include <mutex>

#include "themis/crypto/sodium.hpp"
#include "themis/error.hpp"

namespace themis::crypto {

using detail::CachedPoint;
using detail::ExtPoint;

Scalar Scalar::from_u64(std::uint64_t v) {
  Scalar s;
  for (int i = 0; i < 8; ++i) s.bytes_[i] = static_cast<std::uint8_t>(v >> (8 * i));
  return s;
}

Scalar Scalar::from_bytes(ByteSpan bytes) {
  if (bytes.size() != kSize) throw Error(Errc::kInvalidEncoding, "scalar length");
  ensure_sodium();
  std::uint8_t wide[64] = {};
  std::memcpy(wide, bytes.data(), kSize);
  Scalar s;
  crypto_core_ristretto255_scalar_reduce(s.bytes_.data(), wide);
  if (std::memcmp(s.bytes_.data(), bytes.data(), kSize) != 0) {
    throw Error(Errc::kInvalidEncoding, "non-canonical scalar");
  }
  return s;
}

Scalar Scalar::reduce_wide(ByteSpan bytes64) {
  if (bytes64.size() != 64) throw Error(Errc::kInvalidEncoding, "wide scalar length");
  ensure_sodium();
  Scalar s;
  crypto_core_ristretto255_scalar_reduce(s.bytes_.data(), bytes64.data());
  return s;
}

bool Scalar::is_zero() const {
  std::uint8_t acc = 0;
  for (auto b : bytes_) acc |= b;
  return acc == 0;
}

std::optional<std::uint64_t> Scalar::to_u64() const {
  for (std::size_t i = 8; i < kSize; ++i) {
    if (bytes_[i] != 0) return std::nullopt;
  }
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes_[i];
  return v;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r;
  crypto_core_ristretto255_scalar_add(r.bytes_.data(), bytes_.data(), o.bytes_.data());
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r;
  crypto_core_ristretto255_scalar_sub(r.bytes_.data(), bytes_.data(), o.bytes_.data());
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r;
  crypto_core_ristretto255_scalar_mul(r.bytes_.data(), bytes_.data(), o.bytes_.data());
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r;
  crypto_core_ristretto255_scalar_negate(r.bytes_.data(), bytes_.data());
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(Errc::kInvalidConfig, "inverse of zero");
  Scalar r;
  crypto_core_ristretto255_scalar_invert(r.bytes_.data(), bytes_.data());
  return r;
}

namespace {

constexpr std::uint8_t kBasepoint[32] = {
    0xe2, 0xf2, 0xae, 0x0a, 0x6a, 0xbc, 0x4e, 0x71, 0xa8, 0x84, 0xa9,
    0x61, 0xc5, 0x00, 0x51, 0x5f, 0x58, 0xe3, 0x0b, 0x6a, 0xa5, 0x82,
    0xdd, 0x8d, 0xb6, 0xa6, 0x59, 0x45, 0xe0, 0x8d, 0x2d, 0x76};

const FixedBaseTable& g_table() {
  static const FixedBaseTable table(GroupElement::generator());
  return table;
}

const FixedBaseTable& h_table() {
  static const FixedBaseTable table(GroupElement::pedersen_h());
  return table;
}

}  // namespace

const GroupElement& GroupElement::generator() {
  static const GroupElement g = from_bytes(ByteSpan(kBasepoint, 32));
  return g;
}

const GroupElement& GroupElement::pedersen_h() {
  static const GroupElement h = hash_to_group("themis/pedersen-h", {});
  return h;
}

std::optional<GroupElement> GroupElement::try_from_bytes(ByteSpan bytes) {
  if (bytes.size() != kSize) return std::nullopt;
  auto p = detail::ristretto_decode(bytes.data());
  if (!p) return std::nullopt;
  return GroupElement(*p);
}

GroupElement GroupElement::from_bytes(ByteSpan bytes) {
  auto e = try_from_bytes(bytes);
  if (!e) throw Error(Errc::kInvalidEncoding, "invalid group element");
  return *e;
}

GroupElement GroupElement::hash_to_group(std::string_view domain, ByteSpan msg) {
  ensure_sodium();
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, 64);
  std::uint8_t len[4];
  for (int i = 0; i < 4; ++i) len[i] = static_cast<std::uint8_t>(domain.size() >> (8 * i));
  crypto_generichash_update(&st, len, 4);
  crypto_generichash_update(&st, reinterpret_cast<const std::uint8_t*>(domain.data()),
                            domain.size());
  crypto_generichash_update(&st, msg.data(), msg.size());
  std::uint8_t digest[64];
  crypto_generichash_final(&st, digest, 64);
  std::uint8_t enc[32];
  crypto_core_ristretto255_from_hash(enc, digest);
  return from_bytes(ByteSpan(enc, 32));
}

GroupElement GroupElement::base_mul(const Scalar& s) { return g_table().mul(s); }

GroupElement GroupElement::base_mul(std::uint64_t m) { return generator() * m; }

GroupElement GroupElement::h_mul(const Scalar& s) { return h_table().mul(s); }

bool GroupElement::is_identity() const { return *this == identity(); }

namespace {

// Left-to-right fixed-window multiplication starting at the top nonzero digit.
template <typename DigitFn>
ExtPoint window_mul(const ExtPoint& base, unsigned num_digits, DigitFn digit) {
  int top = static_cast<int>(num_digits) - 1;
  while (top >= 0 && digit(top) == 0) --top;
  if (top < 0) return detail::ext_identity();

  CachedPoint table[16];
  ExtPoint acc = detail::ext_identity();
  table[0] = detail::cached_identity();
  for (int j = 1; j < 16; ++j) {
    acc = detail::add_cached(acc, detail::to_cached(base));
    table[j] = detail::to_cached(acc);
  }

  acc = detail::ext_identity();
  for (int i = top; i >= 0; --i) {
    if (i != top) {
      acc = detail::ext_dbl(acc);
      acc = detail::ext_dbl(acc);
      acc = detail::ext_dbl(acc);
      acc = detail::ext_dbl(acc);
    }
    unsigned d = digit(i);
    if (d != 0) acc = detail::add_cached(acc, table[d]);
  }
  return acc;
}

}  // namespace

GroupElement GroupElement::operator*(const Scalar& s) const {
  return GroupElement(window_mul(p_, 64, [&](int i) { return s.nibble(i); }));
}

GroupElement GroupElement::operator*(std::uint64_t k) const {
  if (k == 0) return identity();
  if (k == 1) return *this;
  if (k < (1u << 12)) {
    // Plain double-and-add beats building a window table for short multipliers.
    CachedPoint base = detail::to_cached(p_);
    ExtPoint acc = p_;
    for (int bit = 62 - __builtin_clzll(k); bit >= 0; --bit) {
      acc = detail::ext_dbl(acc);
      if ((k >> bit) & 1) acc = detail::add_cached(acc, base);
    }
    return GroupElement(acc);
  }
  return GroupElement(window_mul(p_, 16, [&](int i) {
    return static_cast<unsigned>((k >> (4 * i)) & 0xf);
  }));
}

FixedBaseTable::FixedBaseTable(const GroupElement& base) : base_(base), rows_(64 * 16) {
  ExtPoint row_base = base.point();
  for (int i = 0; i < 64; ++i) {
    ExtPoint acc = detail::ext_identity();
    CachedPoint step = detail::to_cached(row_base);
    for (int j = 0; j < 16; ++j) {
      rows_[i * 16 + j] = detail::to_cached(acc);
      acc = detail::add_cached(acc, step);
    }
    row_base = acc;
  }
}

GroupElement FixedBaseTable::mul(const Scalar& s) const {
  ExtPoint acc = detail::ext_identity();
  for (unsigned i = 0; i < 64; ++i) {
    unsigned d = s.nibble(i);
    if (d != 0) acc = detail::add_cached(acc, rows_[i * 16 + d]);
  }
  return GroupElement(acc);
}

}  // namespace themis::crypto
