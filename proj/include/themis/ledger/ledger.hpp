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

#ifndef THEMIS_LEDGER_LEDGER_HPP_
#define THEMIS_LEDGER_LEDGER_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "themis/ledger/contract.hpp"
#include "themis/ledger/types.hpp"

namespace themis::ledger {

struct Deployment {
  std::string id;
  std::string kind;
  Address deployer;
  json params;
};

struct GenesisConfig {
  std::string chain_id = "themis-0";
  std::string validator_seed = "validator";
  std::map<Address, std::uint64_t> balances;
  std::vector<Deployment> deployments;
  // Transactions per block; blocks only matter for timing and epochs.
  std::uint32_t block_size = 50;

  json to_json() const;
  static GenesisConfig from_json(const json& j);
};

// Single-sequencer ledger. All mutation goes through submit(), which is
// serialized by an internal mutex; distinct Ledger objects share nothing.
class Ledger {
 public:
  Ledger(GenesisConfig genesis, std::shared_ptr<const ContractRegistry> registry);
  Ledger(const Ledger&) = delete;
  Ledger& operator=(const Ledger&) = delete;

  // Throws Error(kBadSignature) or Error(kBadSequence) for transactions that
  // are not sequenced. Contract failures are sequenced and reported in the
  // receipt with the pre-transaction state restored.
  Receipt submit(const Transaction& tx);

  // Client helpers: assign the next sequence number and sign under the lock.
  Receipt execute(const crypto::KeyPair& signer, Call call);
  Receipt execute_private(const crypto::KeyPair& signer, Call call,
                          const crypto::WrappedKey& envelope);
  Receipt transfer(const crypto::KeyPair& from, const Address& to, std::uint64_t amount);
  Receipt deploy(const crypto::KeyPair& deployer, const std::string& id, const std::string& kind,
                 const json& params);
  // Advances the block height by n with a validator-signed transaction.
  Receipt advance_blocks(std::uint64_t n);

  // Validator-side decryption of a private envelope. Throws Error(kNotPrivate)
  // or Error(kAuthFailure).
  Bytes open_private_inputs(const Transaction& tx) const;
  crypto::WrappedKey seal_private_inputs(ByteSpan args, crypto::Rng& rng) const;

  Bytes query(const std::string& contract_id, const std::string& method, ByteSpan args) const;

  std::uint64_t balance(const Address& a) const;
  std::uint64_t total_supply() const;
  std::map<Address, std::uint64_t> balances() const;
  const crypto::GroupElement& validator_pk() const { return validator_.pk; }
  const std::string& chain_id() const { return genesis_.chain_id; }
  const GenesisConfig& genesis() const { return genesis_; }
  std::uint64_t last_sequence() const;
  std::uint64_t block_height() const;

  // Unsynchronized read access; callers must not race with submit(). A
  // reverted transaction restores a snapshot, which invalidates references.
  const Contract& contract(const std::string& id) const;
  template <class T>
  const T& contract_as(const std::string& id) const {
    auto* p = dynamic_cast<const T*>(&contract(id));
    if (p == nullptr) throw Error(Errc::kUnknownContract, id);
    return *p;
  }
  bool has_contract(const std::string& id) const;

  std::vector<Transaction> tx_log() const;
  std::vector<Receipt> receipts() const;
  void write_tx_log(std::ostream& out) const;
  static std::vector<Transaction> read_tx_log(std::istream& in);

  std::array<std::uint8_t, 32> state_hash() const;
  json state_json() const;

  // Rebuilds a ledger from genesis and a transaction log.
  static std::unique_ptr<Ledger> replay(const GenesisConfig& genesis,
                                        std::shared_ptr<const ContractRegistry> registry,
                                        const std::vector<Transaction>& txs);

 private:
  friend class CallContext;

  struct State {
    std::map<Address, std::uint64_t> balances;
    std::map<std::string, std::unique_ptr<Contract>, std::less<>> contracts;
    std::uint64_t tick_offset = 0;

    State clone() const;
  };

  Receipt submit_locked(const Transaction& tx);
  Bytes run_native(CallContext& ctx, const Transaction& tx);
  void move_tokens(const Address& from, const Address& to, std::uint64_t amount);
  std::uint64_t block_height_locked() const;

  GenesisConfig genesis_;
  std::shared_ptr<const ContractRegistry> registry_;
  crypto::KeyPair validator_;
  State state_;
  std::uint64_t last_sequence_ = 0;
  std::array<std::uint8_t, 32> head_{};
  std::vector<Transaction> log_;
  std::vector<Receipt> receipts_;
  mutable std::recursive_mutex mu_;
};

}  // namespace themis::ledger

#endif  // THEMIS_LEDGER_LEDGER_HPP_
