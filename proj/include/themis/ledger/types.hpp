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

#ifndef THEMIS_LEDGER_TYPES_HPP_
#define THEMIS_LEDGER_TYPES_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "themis/bytes.hpp"
#include "themis/crypto/elgamal.hpp"
#include "themis/crypto/hybrid.hpp"
#include "themis/crypto/signature.hpp"
#include "themis/error.hpp"

namespace themis::ledger {

using nlohmann::json;

struct Address {
  static constexpr std::size_t kSize = 20;
  std::array<std::uint8_t, kSize> id{};

  static Address from_pk(const crypto::GroupElement& pk);
  // Account owned by a deployed contract.
  static Address for_contract(std::string_view contract_id);
  static Address from_hex(std::string_view hex);
  std::string hex() const;

  auto operator<=>(const Address&) const = default;
};

// An empty contract id addresses the ledger's native methods:
// "transfer", "deploy" and "tick".
struct Call {
  std::string contract;
  std::string method;
  Bytes args;
};

struct Transaction {
  std::uint64_t sequence_no = 0;
  Address sender;
  Call call;
  // Arguments encrypted to the validator consortium key.
  std::optional<crypto::WrappedKey> private_envelope;
  crypto::Signature signature;

  // Everything except the signature.
  Bytes signing_bytes() const;
  std::array<std::uint8_t, 32> hash() const;

  json to_json() const;
  static Transaction from_json(const json& j);

  static Transaction make(const crypto::KeyPair& key, std::uint64_t sequence_no, Call call,
                          std::optional<crypto::WrappedKey> envelope = std::nullopt);
};

struct Event {
  std::string name;
  json data;
};

struct Receipt {
  std::uint64_t sequence_no = 0;
  bool success = false;
  std::optional<Errc> error;
  std::string revert_reason;
  std::vector<Event> events;
  Bytes output;
  double exec_seconds = 0;

  // Timing is excluded unless requested, so receipts compare across runs.
  json to_json(bool include_timing = false) const;
  // Throws the recorded error if the transaction reverted.
  const Receipt& expect_ok() const;
};

}  // namespace themis::ledger

#endif  // THEMIS_LEDGER_TYPES_HPP_
