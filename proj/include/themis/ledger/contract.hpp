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

#ifndef THEMIS_LEDGER_CONTRACT_HPP_
#define THEMIS_LEDGER_CONTRACT_HPP_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "themis/ledger/types.hpp"

namespace themis::ledger {

class Ledger;
class CallContext;

// Contract methods run inside the ledger's serialized executor. Throwing an
// Error reverts the whole transaction.
class Contract {
 public:
  virtual ~Contract() = default;

  virtual std::string_view kind() const = 0;
  virtual std::unique_ptr<Contract> clone() const = 0;
  virtual Bytes invoke(CallContext& ctx, std::string_view method, ByteSpan args) = 0;
  // Read-only calls, answered from public storage.
  virtual Bytes query(std::string_view method, ByteSpan args) const;
  // Public storage. Also the input to the ledger state hash.
  virtual json storage_json() const = 0;
};

using ContractFactory =
    std::function<std::unique_ptr<Contract>(CallContext& ctx, const json& params)>;

class ContractRegistry {
 public:
  void add(std::string kind, ContractFactory factory);
  std::unique_ptr<Contract> create(std::string_view kind, CallContext& ctx,
                                   const json& params) const;
  bool contains(std::string_view kind) const;

 private:
  std::map<std::string, ContractFactory, std::less<>> factories_;
};

// Execution environment handed to a contract method.
class CallContext {
 public:
  const Address& sender() const;
  const crypto::GroupElement& sender_pk() const;
  std::uint64_t sequence_no() const;
  std::uint64_t block_height() const;
  // Running hash of all previously sequenced transactions.
  const std::array<std::uint8_t, 32>& block_context() const;
  const std::string& chain_id() const;

  // The executing contract and, for nested calls, the contract that called it.
  const std::string& self_id() const { return self_id_; }
  Address self_address() const { return Address::for_contract(self_id_); }
  const std::string& caller_contract() const { return caller_contract_; }
  CallContext nested(std::string_view callee_id) const;

  bool has_private_args() const;
  // Decrypts the private envelope with the consortium key. Throws
  // Error(kNotPrivate) or Error(kAuthFailure).
  Bytes private_args() const;

  // Moves tokens out of the executing contract's account.
  void pay(const Address& to, std::uint64_t amount);
  // Moves tokens from the transaction sender into the contract's account.
  void collect(std::uint64_t amount);
  std::uint64_t balance(const Address& a) const;

  void emit(std::string name, json data);

  // Validator-side access to the consortium key; used only for private
  // inputs and aggregate attestation.
  const crypto::KeyPair& validator_key() const;

  Contract& contract(std::string_view id);
  template <class T>
  T& contract_as(std::string_view id) {
    auto* p = dynamic_cast<T*>(&contract(id));
    if (p == nullptr) throw Error(Errc::kUnknownContract, std::string(id));
    return *p;
  }
  const Contract& contract(std::string_view id) const;
  template <class T>
  const T& contract_as(std::string_view id) const {
    auto* p = dynamic_cast<const T*>(&contract(id));
    if (p == nullptr) throw Error(Errc::kUnknownContract, std::string(id));
    return *p;
  }

 private:
  friend class Ledger;
  CallContext(Ledger& ledger, const Transaction& tx, std::vector<Event>& events,
              std::string self_id)
      : ledger_(&ledger), tx_(&tx), events_(&events), self_id_(std::move(self_id)) {}

  Ledger* ledger_;
  const Transaction* tx_;
  std::vector<Event>* events_;
  std::string self_id_;
  std::string caller_contract_;
};

}  // namespace themis::ledger

#endif  // THEMIS_LEDGER_CONTRACT_HPP_
