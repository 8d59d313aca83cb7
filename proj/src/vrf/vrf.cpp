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

#include "themis/vrf/vrf.hpp"

#include <algorithm>

#include "themis/crypto/transcript.hpp"
#include "themis/error.hpp"

namespace themis::vrf {

namespace {

constexpr std::string_view kProofDomain = "themis/vrf/v1";

GroupElement hash_input(ByteSpan epsilon) {
  return GroupElement::hash_to_group("themis/vrf-input/v1", epsilon);
}

std::uint64_t output_from_gamma(const GroupElement& gamma) {
  auto enc = gamma.to_bytes();
  Bytes h = crypto::hash_bytes("themis/vrf-output/v1", ByteSpan(enc), 32);
  ByteReader r(h);
  return r.u64_be();
}

crypto::DleqStatement statement(const GroupElement& pk, const GroupElement& h,
                                const GroupElement& gamma) {
  return crypto::DleqStatement{GroupElement::generator(), pk, h, gamma};
}

}  // namespace

Bytes VrfOutput::to_bytes() const {
  ByteWriter w;
  w.u64_be(rand).fixed(gamma.to_bytes()).fixed(proof.to_bytes());
  return std::move(w).bytes();
}

VrfOutput VrfOutput::from_bytes(ByteSpan bytes) {
  if (bytes.size() != kSize) throw Error(Errc::kInvalidEncoding, "vrf output length");
  ByteReader r(bytes);
  VrfOutput out;
  out.rand = r.u64_be();
  out.gamma = GroupElement::from_bytes(r.raw(32));
  out.proof = crypto::CompactDleqProof::from_bytes(r.raw(crypto::CompactDleqProof::kSize));
  return out;
}

VrfOutput vrf_rand_gen(const Scalar& sk, ByteSpan epsilon) {
  GroupElement pk = GroupElement::base_mul(sk);
  GroupElement h = hash_input(epsilon);
  GroupElement gamma = h * sk;
  VrfOutput out;
  out.gamma = gamma;
  out.rand = output_from_gamma(gamma);
  out.proof = crypto::prove_dleq_compact(kProofDomain, sk, statement(pk, h, gamma), epsilon);
  return out;
}

bool vrf_verify(const GroupElement& pk, ByteSpan epsilon, const VrfOutput& out) {
  if (out.rand != output_from_gamma(out.gamma)) return false;
  return crypto::verify_dleq_compact(kProofDomain, statement(pk, hash_input(epsilon), out.gamma),
                                     out.proof, epsilon);
}

Uint128 max_draw(const DrawConfig& cfg) {
  if (cfg.pool_size == 0) throw Error(Errc::kInvalidConfig, "empty draw pool");
  if (cfg.expected_participants > cfg.pool_size) {
    throw Error(Errc::kInvalidConfig, "expected participants exceed pool size");
  }
  if (cfg.output_space == 0 || cfg.output_space > kOutputSpace) {
    throw Error(Errc::kInvalidConfig, "output space");
  }
  // n_cp < 2^64 and p <= 2^64, so the product fits in 128 bits.
  return Uint128{cfg.expected_participants} * cfg.output_space / cfg.pool_size;
}

bool is_selected(const VrfOutput& out, const DrawConfig& cfg) {
  Uint128 rand = out.rand;
  if (cfg.output_space < kOutputSpace) rand %= cfg.output_space;
  return rand < max_draw(cfg);
}

std::string to_decimal(Uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace themis::vrf
