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

#include "themis/crypto/rng.hpp"

#include <sodium.h>

#include <algorithm>

#include "themis/crypto/sodium.hpp"
#include "themis/error.hpp"

namespace themis::crypto {

Rng::Rng(ByteSpan seed) {
  ensure_sodium();
  static constexpr char kContext[] = "themis/rng/v1";
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, key_.size());
  crypto_generichash_update(&st, reinterpret_cast<const std::uint8_t*>(kContext),
                            sizeof(kContext) - 1);
  crypto_generichash_update(&st, seed.data(), seed.size());
  crypto_generichash_final(&st, key_.data(), key_.size());
}

Rng Rng::from_u64(std::uint64_t seed) {
  ByteWriter w;
  w.u64(seed);
  return Rng(ByteSpan(w.bytes()));
}

void Rng::refill() {
  std::uint8_t ctr[8];
  for (int i = 0; i < 8; ++i) ctr[i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
  ++counter_;
  crypto_generichash(block_.data(), block_.size(), ctr, sizeof(ctr), key_.data(),
                     key_.size());
  used_ = 0;
}

void Rng::fill(std::uint8_t* out, std::size_t n) {
  while (n > 0) {
    if (used_ == block_.size()) refill();
    std::size_t take = std::min(n, block_.size() - used_);
    std::copy_n(block_.data() + used_, take, out);
    used_ += take;
    out += take;
    n -= take;
  }
}

Bytes Rng::bytes(std::size_t n) {
  Bytes out(n);
  fill(out.data(), n);
  return out;
}

std::uint64_t Rng::next_u64() {
  std::uint8_t b[8];
  fill(b, 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw Error(Errc::kInvalidConfig, "uniform bound is zero");
  std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v <= limit) return v % bound;
  }
}

std::uint64_t Rng::range(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw Error(Errc::kInvalidConfig, "empty range");
  if (lo == 0 && hi == UINT64_MAX) return next_u64();
  return lo + uniform(hi - lo + 1);
}

Scalar Rng::scalar() {
  std::uint8_t wide[64];
  fill(wide, 64);
  return Scalar::reduce_wide(ByteSpan(wide, 64));
}

Scalar Rng::nonzero_scalar() {
  for (;;) {
    Scalar s = scalar();
    if (!s.is_zero()) return s;
  }
}

Rng Rng::fork(std::string_view label) {
  ByteWriter w;
  w.raw(ByteSpan(bytes(32))).str(label);
  return Rng(ByteSpan(w.bytes()));
}

std::array<std::uint8_t, 32> Rng::seed32() {
  std::array<std::uint8_t, 32> out{};
  fill(out.data(), out.size());
  return out;
}

}  // namespace themis::crypto
