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

#ifndef THEMIS_PAYMENTS_NOTES_HPP_
#define THEMIS_PAYMENTS_NOTES_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "themis/crypto/group.hpp"
#include "themis/ledger/types.hpp"

namespace themis::payments {

using crypto::GroupElement;
using crypto::Scalar;
using ledger::Address;
using ledger::json;

inline constexpr std::uint64_t kDefaultRangeTag = std::uint64_t{1} << 40;

using TxRef = std::array<std::uint8_t, 32>;

// g^amount * h^r.
GroupElement commit(std::uint64_t amount, const Scalar& r);

struct NoteOpening {
  Scalar r;
  std::uint64_t amount = 0;
};

struct PaymentNote {
  TxRef tx_ref{};
  Address recipient;
  GroupElement commitment;
  std::uint64_t range_tag = kDefaultRangeTag;

  Bytes to_bytes() const;
  static PaymentNote from_bytes(ByteSpan bytes);
  // Public note log entry; never contains the opening.
  json to_json() const;
  // tx_ref == hash(commitment || recipient).
  bool well_formed() const;
};

// Throws Error(kAmountOutOfRange) if amount > range_tag.
PaymentNote make_note(const Address& recipient, std::uint64_t amount, const Scalar& r,
                      std::uint64_t range_tag = kDefaultRangeTag);
bool verify_opening(const PaymentNote& note, const Scalar& r, std::uint64_t l);

struct BatchProof {
  // R = sum of the note blinding factors.
  Scalar blinding_sum;
  // Fiat-Shamir challenge binding every note, the total and R.
  Scalar challenge;
};

struct SettlementBatch {
  std::vector<PaymentNote> notes;
  std::uint64_t total = 0;
  BatchProof proof;

  Bytes to_bytes() const;
  static SettlementBatch from_bytes(ByteSpan bytes);
};

struct NoteWithOpening {
  PaymentNote note;
  NoteOpening opening;
};

// Throws Error(kTotalMismatch) if the openings do not sum to total, and
// Error(kBadOpening) if an opening does not match its note.
SettlementBatch settle_batch(std::span<const NoteWithOpening> notes, std::uint64_t total);
// prod commitments == g^total * h^R, plus the transcript check.
bool verify_batch(const SettlementBatch& batch);

// The payer's private record of every note it issued, so that recipients
// can be handed their openings.
class PayerLedger {
 public:
  void record(const PaymentNote& note, const NoteOpening& opening);
  std::optional<NoteOpening> opening_for(const TxRef& tx_ref) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<TxRef, std::pair<Address, NoteOpening>> entries_;
};

}  // namespace themis::payments

#endif  // THEMIS_PAYMENTS_NOTES_HPP_
