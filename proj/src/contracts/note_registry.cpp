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

#include "themis/contracts/note_registry.hpp"

#include <set>

namespace themis::contracts {

Bytes NoteRegistry::invoke(ledger::CallContext& ctx, std::string_view method, ByteSpan args) {
  if (method == "deposit_batch") {
    auto batch = payments::SettlementBatch::from_bytes(args);
    if (!payments::verify_batch(batch)) throw Error(Errc::kProofRejected, "settlement batch");
    std::set<payments::TxRef> fresh;
    for (const auto& n : batch.notes) {
      if (notes_.count(n.tx_ref) || !fresh.insert(n.tx_ref).second) {
        throw Error(Errc::kDuplicateAddress, "note " + to_hex(ByteSpan(n.tx_ref)));
      }
    }
    ctx.collect(batch.total);
    for (const auto& n : batch.notes) {
      notes_.emplace(n.tx_ref, Entry{n, ctx.sender(), false});
      order_.push_back(n.tx_ref);
    }
    ++batches_;
    ctx.emit("BatchDeposited", {{"notes", batch.notes.size()}, {"total", batch.total}});
    return {};
  }
  if (method == "redeem") {
    ByteReader r(args);
    auto tx_ref = r.fixed<32>();
    Scalar blind = Scalar::from_bytes(r.raw(32));
    std::uint64_t amount = r.u64();
    r.expect_done();
    auto it = notes_.find(tx_ref);
    if (it == notes_.end()) throw Error(Errc::kUnknownTxRef, to_hex(ByteSpan(tx_ref)));
    Entry& e = it->second;
    if (ctx.sender() != e.note.recipient) throw Error(Errc::kUnauthorized, "not the note recipient");
    if (e.redeemed) throw Error(Errc::kInvalidState, "note already redeemed");
    if (!payments::verify_opening(e.note, blind, amount)) throw Error(Errc::kBadOpening);
    e.redeemed = true;
    ctx.pay(e.note.recipient, amount);
    ctx.emit("NoteRedeemed", {{"tx_ref", to_hex(ByteSpan(tx_ref))}});
    return {};
  }
  throw Error(Errc::kUnknownMethod, std::string(method));
}

Bytes NoteRegistry::query(std::string_view method, ByteSpan args) const {
  if (method != "note") return Contract::query(method, args);
  ByteReader r(args);
  auto tx_ref = r.fixed<32>();
  r.expect_done();
  const Entry* e = find(tx_ref);
  if (e == nullptr) throw Error(Errc::kUnknownTxRef, to_hex(ByteSpan(tx_ref)));
  return e->note.to_bytes();
}

const NoteRegistry::Entry* NoteRegistry::find(const payments::TxRef& tx_ref) const {
  auto it = notes_.find(tx_ref);
  return it == notes_.end() ? nullptr : &it->second;
}

std::vector<json> NoteRegistry::note_log() const {
  std::vector<json> out;
  for (const auto& ref : order_) out.push_back(notes_.at(ref).note.to_json());
  return out;
}

json NoteRegistry::storage_json() const {
  json notes = json::array();
  for (const auto& ref : order_) {
    const Entry& e = notes_.at(ref);
    json j = e.note.to_json();
    j["depositor"] = e.depositor.hex();
    j["redeemed"] = e.redeemed;
    notes.push_back(std::move(j));
  }
  return {{"batches", batches_}, {"notes", std::move(notes)}};
}

}  // namespace themis::contracts
