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

#ifndef THEMIS_CRYPTO_TRANSCRIPT_HPP_
#define THEMIS_CRYPTO_TRANSCRIPT_HPP_

#include <array>
#include <cstdint>
#include <string_view>

#include <sodium.h>

#include "themis/bytes.hpp"
#include "themis/crypto/group.hpp"

namespace themis::crypto {

// Fiat-Shamir transcript. Each proof type uses its own domain string so a
// proof produced for one statement type never verifies as another.
class Transcript {
 public:
  explicit Transcript(std::string_view domain);

  Transcript& append(std::string_view label, ByteSpan data);
  Transcript& append(std::string_view label, const GroupElement& e);
  Transcript& append(std::string_view label, const Scalar& s);
  Transcript& append_u64(std::string_view label, std::uint64_t v);

  // Finalizes a copy of the state; the transcript may keep absorbing.
  Scalar challenge_scalar(std::string_view label) const;
  std::array<std::uint8_t, 64> digest(std::string_view label) const;

 private:
  crypto_generichash_state state_;
};

// BLAKE2b of arbitrary length (16..64 bytes) over domain-prefixed input.
Bytes hash_bytes(std::string_view domain, ByteSpan data, std::size_t out_len = 32);

}  // namespace themis::crypto

#endif  // THEMIS_CRYPTO_TRANSCRIPT_HPP_
