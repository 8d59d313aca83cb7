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

#include "themis/ledger/types.hpp"

#include "themis/crypto/transcript.hpp"

namespace themis::ledger {

Address Address::from_pk(const crypto::GroupElement& pk) {
  auto enc = pk.to_bytes();
  Bytes h = crypto::hash_bytes("themis/address/v1", ByteSpan(enc), kSize + 12);
  Address a;
  std::copy_n(h.begin(), kSize, a.id.begin());
  return a;
}

Address Address::for_contract(std::string_view contract_id) {
  Bytes h = crypto::hash_bytes("themis/contract-address/v1", as_bytes(contract_id), kSize + 12);
  Address a;
  std::copy_n(h.begin(), kSize, a.id.begin());
  return a;
}

Address Address::from_hex(std::string_view hex) {
  Bytes b = themis::from_hex(hex);
  if (b.size() != kSize) throw Error(Errc::kInvalidEncoding, "address length");
  Address a;
  std::copy(b.begin(), b.end(), a.id.begin());
  return a;
}

std::string Address::hex() const { return to_hex(ByteSpan(id)); }

Bytes Transaction::signing_bytes() const {
  ByteWriter w;
  w.str("themis/tx/v1").u64(sequence_no).fixed(sender.id).str(call.contract).str(call.method)
      .var(call.args);
  if (private_envelope) {
    w.u8(1).var(private_envelope->to_bytes());
  } else {
    w.u8(0);
  }
  return std::move(w).bytes();
}

std::array<std::uint8_t, 32> Transaction::hash() const {
  ByteWriter w;
  w.var(signing_bytes()).fixed(signature.to_bytes());
  Bytes h = crypto::hash_bytes("themis/tx-hash/v1", w.bytes(), 32);
  std::array<std::uint8_t, 32> out{};
  std::copy(h.begin(), h.end(), out.begin());
  return out;
}

json Transaction::to_json() const {
  json j;
  j["seq"] = sequence_no;
  j["sender"] = sender.hex();
  j["contract"] = call.contract;
  j["method"] = call.method;
  j["args"] = to_hex(call.args);
  j["envelope"] = private_envelope ? json(to_hex(private_envelope->to_bytes())) : json(nullptr);
  j["signature"] = to_hex(ByteSpan(signature.to_bytes()));
  return j;
}

Transaction Transaction::from_json(const json& j) {
  try {
    Transaction tx;
    tx.sequence_no = j.at("seq").get<std::uint64_t>();
    tx.sender = Address::from_hex(j.at("sender").get<std::string>());
    tx.call.contract = j.at("contract").get<std::string>();
    tx.call.method = j.at("method").get<std::string>();
    tx.call.args = themis::from_hex(j.at("args").get<std::string>());
    if (!j.at("envelope").is_null()) {
      tx.private_envelope =
          crypto::WrappedKey::from_bytes(themis::from_hex(j.at("envelope").get<std::string>()));
    }
    tx.signature = crypto::Signature::from_bytes(themis::from_hex(j.at("signature").get<std::string>()));
    return tx;
  } catch (const json::exception& e) {
    throw Error(Errc::kInvalidEncoding, e.what());
  }
}

Transaction Transaction::make(const crypto::KeyPair& key, std::uint64_t sequence_no, Call call,
                              std::optional<crypto::WrappedKey> envelope) {
  Transaction tx;
  tx.sequence_no = sequence_no;
  tx.sender = Address::from_pk(key.pk);
  tx.call = std::move(call);
  tx.private_envelope = std::move(envelope);
  tx.signature = crypto::sign(key.sk, tx.signing_bytes());
  return tx;
}

json Receipt::to_json(bool include_timing) const {
  json j;
  j["seq"] = sequence_no;
  j["success"] = success;
  j["error"] = error ? json(std::string(to_string(*error))) : json(nullptr);
  j["revert_reason"] = revert_reason;
  json ev = json::array();
  for (const auto& e : events) ev.push_back({{"name", e.name}, {"data", e.data}});
  j["events"] = ev;
  j["output"] = to_hex(output);
  if (include_timing) j["exec_seconds"] = exec_seconds;
  return j;
}

const Receipt& Receipt::expect_ok() const {
  if (!success) throw Error(error.value_or(Errc::kInvalidState), revert_reason);
  return *this;
}

}  // namespace themis::ledger
