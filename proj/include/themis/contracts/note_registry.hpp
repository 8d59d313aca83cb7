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

#ifndef THEMIS_CONTRACTS_NOTE_REGISTRY_HPP_
#define THEMIS_CONTRACTS_NOTE_REGISTRY_HPP_

#include <map>
#include <optional>

#include "themis/contracts/messages.hpp"
#include "themis/ledger/contract.hpp"

namespace themis::contracts {

// On-chain side of confidential settlement: accepts verified batches of
// payment notes backed by the depositor's tokens, and pays a note out to its
// recipient against a valid opening.
class NoteRegistry : public ledger::Contract {
 public:
  struct Entry {
    payments::PaymentNote note;
    Address depositor;
    bool redeemed = false;
  };

  std::string_view kind() const override { return kNoteRegistryKind; }
  std::unique_ptr<Contract> clone() const override { return std::make_unique<NoteRegistry>(*this); }
  Bytes invoke(ledger::CallContext& ctx, std::string_view method, ByteSpan args) override;
  Bytes query(std::string_view method, ByteSpan args) const override;
  json storage_json() const override;

  const Entry* find(const payments::TxRef& tx_ref) const;
  std::size_t size() const { return notes_.size(); }
  // Public note log, one JSON object per note in deposit order.
  std::vector<json> note_log() const;

 private:
  std::map<payments::TxRef, Entry> notes_;
  std::vector<payments::TxRef> order_;
  std::uint64_t batches_ = 0;
};

}  // namespace themis::contracts

#endif  // THEMIS_CONTRACTS_NOTE_REGISTRY_HPP_
