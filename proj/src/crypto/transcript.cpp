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

#include "themis/crypto/transcript.hpp"

#include "themis/crypto/sodium.hpp"

namespace themis::crypto {

namespace {

void absorb_labelled(crypto_generichash_state& st, std::string_view label, ByteSpan data) {
  ByteWriter w;
  w.str(label).u32(static_cast<std::uint32_t>(data.size()));
  crypto_generichash_update(&st, w.bytes().data(), w.bytes().size());
  crypto_generichash_update(&st, data.data(), data.size());
}

}  // namespace

Transcript::Transcript(std::string_view domain) {
  ensure_sodium();
  crypto_generichash_init(&state_, nullptr, 0, 64);
  absorb_labelled(state_, "domain", as_bytes(domain));
}

Transcript& Transcript::append(std::string_view label, ByteSpan data) {
  absorb_labelled(state_, label, data);
  return *this;
}

Transcript& Transcript::append(std::string_view label, const GroupElement& e) {
  auto enc = e.to_bytes();
  return append(label, ByteSpan(enc));
}

Transcript& Transcript::append(std::string_view label, const Scalar& s) {
  return append(label, ByteSpan(s.bytes()));
}

Transcript& Transcript::append_u64(std::string_view label, std::uint64_t v) {
  ByteWriter w;
  w.u64(v);
  return append(label, ByteSpan(w.bytes()));
}

std::array<std::uint8_t, 64> Transcript::digest(std::string_view label) const {
  crypto_generichash_state st = state_;
  absorb_labelled(st, "challenge", as_bytes(label));
  std::array<std::uint8_t, 64> out{};
  crypto_generichash_final(&st, out.data(), out.size());
  return out;
}

Scalar Transcript::challenge_scalar(std::string_view label) const {
  auto d = digest(label);
  return Scalar::reduce_wide(ByteSpan(d));
}

Bytes hash_bytes(std::string_view domain, ByteSpan data, std::size_t out_len) {
  ensure_sodium();
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, out_len);
  absorb_labelled(st, "domain", as_bytes(domain));
  crypto_generichash_update(&st, data.data(), data.size());
  Bytes out(out_len);
  crypto_generichash_final(&st, out.data(), out_len);
  return out;
}

}  // namespace themis::crypto
