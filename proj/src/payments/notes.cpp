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

#include "themis/payments/notes.hpp"

#include "themis/crypto/transcript.hpp"
#include "themis/error.hpp"

namespace themis::payments {

namespace {

constexpr std::string_view kBatchDomain = "themis/settlement-batch/v1";

TxRef note_ref(const GroupElement::Encoding& commitment, const Address& recipient) {
  ByteWriter w;
  w.fixed(commitment).fixed(recipient.id);
  Bytes h = crypto::hash_bytes("themis/note-ref/v1", w.bytes(), 32);
  TxRef out{};
  std::copy(h.begin(), h.end(), out.begin());
  return out;
}

// Encodes every commitment once; returns false if any tx_ref is inconsistent.
bool batch_challenge(const SettlementBatch& batch, Scalar& out) {
  crypto::Transcript t(kBatchDomain);
  t.append_u64("count", batch.notes.size());
  for (const auto& n : batch.notes) {
    auto enc = n.commitment.to_bytes();
    if (note_ref(enc, n.recipient) != n.tx_ref) return false;
    t.append("tx_ref", ByteSpan(n.tx_ref))
        .append("recipient", ByteSpan(n.recipient.id))
        .append("commitment", ByteSpan(enc))
        .append_u64("range_tag", n.range_tag);
  }
  t.append_u64("total", batch.total).append("R", batch.proof.blinding_sum);
  out = t.challenge_scalar("challenge");
  return true;
}

}  // namespace

GroupElement commit(std::uint64_t amount, const Scalar& r) {
  return GroupElement::base_mul(amount) + GroupElement::h_mul(r);
}

Bytes PaymentNote::to_bytes() const {
  ByteWriter w;
  w.fixed(tx_ref).fixed(recipient.id).fixed(commitment.to_bytes()).u64(range_tag);
  return std::move(w).bytes();
}

PaymentNote PaymentNote::from_bytes(ByteSpan bytes) {
  ByteReader r(bytes);
  PaymentNote n;
  n.tx_ref = r.fixed<32>();
  n.recipient.id = r.fixed<Address::kSize>();
  n.commitment = GroupElement::from_bytes(r.raw(32));
  n.range_tag = r.u64();
  r.expect_done();
  return n;
}

json PaymentNote::to_json() const {
  return {{"tx_ref", to_hex(ByteSpan(tx_ref))},
          {"recipient", recipient.hex()},
          {"commitment", to_hex(ByteSpan(commitment.to_bytes()))},
          {"range_tag", range_tag}};
}

bool PaymentNote::well_formed() const { return note_ref(commitment.to_bytes(), recipient) == tx_ref; }

PaymentNote make_note(const Address& recipient, std::uint64_t amount, const Scalar& r,
                      std::uint64_t range_tag) {
  if (amount > range_tag) {
    throw Error(Errc::kAmountOutOfRange,
                std::to_string(amount) + " exceeds " + std::to_string(range_tag));
  }
  PaymentNote n;
  n.recipient = recipient;
  n.commitment = commit(amount, r);
  n.range_tag = range_tag;
  n.tx_ref = note_ref(n.commitment.to_bytes(), recipient);
  return n;
}

bool verify_opening(const PaymentNote& note, const Scalar& r, std::uint64_t l) {
  if (l > note.range_tag) return false;
  return commit(l, r) == note.commitment;
}

Bytes SettlementBatch::to_bytes() const {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(notes.size()));
  for (const auto& n : notes) w.raw(n.to_bytes());
  w.u64(total).fixed(proof.blinding_sum.bytes()).fixed(proof.challenge.bytes());
  return std::move(w).bytes();
}

SettlementBatch SettlementBatch::from_bytes(ByteSpan bytes) {
  constexpr std::size_t kNoteSize = 32 + Address::kSize + 32 + 8;
  ByteReader r(bytes);
  SettlementBatch b;
  std::uint32_t count = r.u32();
  if (count > r.remaining() / kNoteSize) throw Error(Errc::kInvalidEncoding, "note count");
  b.notes.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) b.notes.push_back(PaymentNote::from_bytes(r.raw(kNoteSize)));
  b.total = r.u64();
  b.proof.blinding_sum = Scalar::from_bytes(r.raw(32));
  b.proof.challenge = Scalar::from_bytes(r.raw(32));
  r.expect_done();
  return b;
}

SettlementBatch settle_batch(std::span<const NoteWithOpening> notes, std::uint64_t total) {
  SettlementBatch batch;
  batch.total = total;
  unsigned __int128 sum = 0;
  for (const auto& n : notes) {
    if (!verify_opening(n.note, n.opening.r, n.opening.amount)) {
      throw Error(Errc::kBadOpening, "note " + to_hex(ByteSpan(n.note.tx_ref)));
    }
    sum += n.opening.amount;
    batch.proof.blinding_sum += n.opening.r;
    batch.notes.push_back(n.note);
  }
  if (sum != total) throw Error(Errc::kTotalMismatch, "openings do not sum to " + std::to_string(total));
  if (!batch_challenge(batch, batch.proof.challenge)) throw Error(Errc::kInvalidEncoding, "note tx_ref");
  return batch;
}

bool verify_batch(const SettlementBatch& batch) {
  Scalar challenge;
  if (!batch_challenge(batch, challenge) || !(challenge == batch.proof.challenge)) return false;
  GroupElement product;
  for (const auto& n : batch.notes) product += n.commitment;
  return product == commit(batch.total, batch.proof.blinding_sum);
}

void PayerLedger::record(const PaymentNote& note, const NoteOpening& opening) {
  entries_[note.tx_ref] = {note.recipient, opening};
}

std::optional<NoteOpening> PayerLedger::opening_for(const TxRef& tx_ref) const {
  auto it = entries_.find(tx_ref);
  if (it == entries_.end()) return std::nullopt;
  return it->second.second;
}

}  // namespace themis::payments
