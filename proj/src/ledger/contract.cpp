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

#include "themis/ledger/contract.hpp"

#include "themis/ledger/ledger.hpp"

namespace themis::ledger {

Bytes Contract::query(std::string_view method, ByteSpan) const {
  throw Error(Errc::kUnknownMethod, std::string(kind()) + "." + std::string(method));
}

void ContractRegistry::add(std::string kind, ContractFactory factory) {
  factories_[std::move(kind)] = std::move(factory);
}

std::unique_ptr<Contract> ContractRegistry::create(std::string_view kind, CallContext& ctx,
                                                   const json& params) const {
  auto it = factories_.find(kind);
  if (it == factories_.end()) throw Error(Errc::kUnknownContract, "kind " + std::string(kind));
  return it->second(ctx, params);
}

bool ContractRegistry::contains(std::string_view kind) const {
  return factories_.find(kind) != factories_.end();
}

const Address& CallContext::sender() const { return tx_->sender; }
const crypto::GroupElement& CallContext::sender_pk() const { return tx_->signature.signer_pk; }
std::uint64_t CallContext::sequence_no() const { return tx_->sequence_no; }

std::uint64_t CallContext::block_height() const {
  return tx_->sequence_no / ledger_->genesis_.block_size + ledger_->state_.tick_offset;
}

const std::array<std::uint8_t, 32>& CallContext::block_context() const { return ledger_->head_; }
const std::string& CallContext::chain_id() const { return ledger_->genesis_.chain_id; }

CallContext CallContext::nested(std::string_view callee_id) const {
  CallContext c = *this;
  c.caller_contract_ = self_id_;
  c.self_id_ = std::string(callee_id);
  return c;
}

bool CallContext::has_private_args() const { return tx_->private_envelope.has_value(); }

Bytes CallContext::private_args() const { return ledger_->open_private_inputs(*tx_); }

void CallContext::pay(const Address& to, std::uint64_t amount) {
  ledger_->move_tokens(self_address(), to, amount);
}

void CallContext::collect(std::uint64_t amount) {
  ledger_->move_tokens(tx_->sender, self_address(), amount);
}

std::uint64_t CallContext::balance(const Address& a) const {
  auto it = ledger_->state_.balances.find(a);
  return it == ledger_->state_.balances.end() ? 0 : it->second;
}

void CallContext::emit(std::string name, json data) {
  events_->push_back(Event{std::move(name), std::move(data)});
}

const crypto::KeyPair& CallContext::validator_key() const { return ledger_->validator_; }

Contract& CallContext::contract(std::string_view id) {
  auto it = ledger_->state_.contracts.find(id);
  if (it == ledger_->state_.contracts.end()) {
    throw Error(Errc::kUnknownContract, std::string(id));
  }
  return *it->second;
}

const Contract& CallContext::contract(std::string_view id) const {
  auto it = ledger_->state_.contracts.find(id);
  if (it == ledger_->state_.contracts.end()) {
    throw Error(Errc::kUnknownContract, std::string(id));
  }
  return *it->second;
}

}  // namespace themis::ledger
