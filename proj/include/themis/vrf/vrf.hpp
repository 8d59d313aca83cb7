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

#ifndef THEMIS_VRF_VRF_HPP_
#define THEMIS_VRF_VRF_HPP_

#include <cstdint>
#include <string>

#include "themis/bytes.hpp"
#include "themis/crypto/elgamal.hpp"
#include "themis/crypto/proofs.hpp"

namespace themis::vrf {

using crypto::GroupElement;
using crypto::Scalar;
using Uint128 = unsigned __int128;

// Size of the draw space. 2^64 does not fit in 64 bits, hence the wider type.
inline constexpr Uint128 kOutputSpace = Uint128{1} << 64;

using VrfKeyPair = crypto::KeyPair;

struct VrfOutput {
  static constexpr std::size_t kSize = 8 + 32 + crypto::CompactDleqProof::kSize;

  std::uint64_t rand = 0;
  GroupElement gamma;
  crypto::CompactDleqProof proof;

  // rand (big-endian) || gamma || challenge || response.
  Bytes to_bytes() const;
  static VrfOutput from_bytes(ByteSpan bytes);
  bool operator==(const VrfOutput& o) const {
    return rand == o.rand && gamma == o.gamma && proof == o.proof;
  }
};

struct DrawConfig {
  Bytes epsilon;
  std::uint64_t expected_participants = 0;
  std::uint64_t pool_size = 0;
  Uint128 output_space = kOutputSpace;
};

VrfOutput vrf_rand_gen(const Scalar& sk, ByteSpan epsilon);
bool vrf_verify(const GroupElement& pk, ByteSpan epsilon, const VrfOutput& out);

// floor(expected_participants * output_space / pool_size).
// Throws Error(kInvalidConfig) for an empty pool, n_cp > pool, or p outside
// [1, 2^64].
Uint128 max_draw(const DrawConfig& cfg);
// rand is reduced into [0, p) before the comparison when p < 2^64.
bool is_selected(const VrfOutput& out, const DrawConfig& cfg);

std::string to_decimal(Uint128 v);

}  // namespace themis::vrf

#endif  // THEMIS_VRF_VRF_HPP_
