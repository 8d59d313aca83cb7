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

#include "themis/crypto/signature.hpp"

#include <algorithm>

#include "themis/crypto/transcript.hpp"
#include "themis/error.hpp"

namespace themis::crypto {

namespace {

constexpr std::string_view kSigDomain = "themis/schnorr/v1";

Scalar sig_challenge(const GroupElement& pk, const GroupElement& r, ByteSpan msg) {
  Transcript t(kSigDomain);
  t.append("pk", pk).append("R", r).append("msg", msg);
  return t.challenge_scalar("c");
}

}  // namespace

std::array<std::uint8_t, Signature::kSize> Signature::to_bytes() const {
  std::array<std::uint8_t, kSize> out{};
  std::copy(challenge.bytes().begin(), challenge.bytes().end(), out.begin());
  std::copy(response.bytes().begin(), response.bytes().end(), out.begin() + 32);
  auto pk = signer_pk.to_bytes();
  std::copy(pk.begin(), pk.end(), out.begin() + 64);
  return out;
}

Signature Signature::from_bytes(ByteSpan bytes) {
  if (bytes.size() != kSize) throw Error(Errc::kInvalidEncoding, "signature length");
  return Signature{Scalar::from_bytes(bytes.subspan(0, 32)),
                   Scalar::from_bytes(bytes.subspan(32, 32)),
                   GroupElement::from_bytes(bytes.subspan(64, 32))};
}

Signature sign(const Scalar& sk, ByteSpan msg) {
  GroupElement pk = GroupElement::base_mul(sk);
  Transcript nt("themis/schnorr-nonce/v1");
  nt.append("sk", sk).append("msg", msg);
  Scalar k = nt.challenge_scalar("k");
  if (k.is_zero()) k = Scalar::one();
  GroupElement r = GroupElement::base_mul(k);
  Scalar c = sig_challenge(pk, r, msg);
  return Signature{c, k + c * sk, pk};
}

bool verify_sig(const GroupElement& pk, ByteSpan msg, const Signature& sig) {
  if (!(sig.signer_pk == pk)) return false;
  GroupElement r = GroupElement::base_mul(sig.response) - pk * sig.challenge;
  return sig_challenge(pk, r, msg) == sig.challenge;
}

}  // namespace themis::crypto
