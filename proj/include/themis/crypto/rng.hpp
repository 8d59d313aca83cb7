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

#ifndef THEMIS_CRYPTO_RNG_HPP_
#define THEMIS_CRYPTO_RNG_HPP_

#include <array>
#include <cstdint>
#include <string_view>

#include "themis/bytes.hpp"
#include "themis/crypto/group.hpp"

namespace themis::crypto {

// Deterministic byte stream: block i is BLAKE2b-512(key, i), with the key
// derived from the seed. Every randomized operation in the library draws from
// one of these so scenarios replay exactly.
class Rng {
 public:
  explicit Rng(ByteSpan seed);
  explicit Rng(std::string_view seed) : Rng(as_bytes(seed)) {}
  static Rng from_u64(std::uint64_t seed);

  void fill(std::uint8_t* out, std::size_t n);
  Bytes bytes(std::size_t n);
  std::uint64_t next_u64();
  // Uniform in [0, bound) by rejection; bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi);
  Scalar scalar();
  Scalar nonzero_scalar();
  // Independent child stream labelled by `label`.
  Rng fork(std::string_view label);
  std::array<std::uint8_t, 32> seed32();

 private:
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, 64> block_{};
  std::size_t used_ = 64;
};

}  // namespace themis::crypto

#endif  // THEMIS_CRYPTO_RNG_HPP_
