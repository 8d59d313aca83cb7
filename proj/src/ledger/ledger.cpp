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

#include "themis/ledger/ledger.hpp"

#include <chrono>
#include <istream>
#include <ostream>
#include <string>

#include "themis/crypto/transcript.hpp"

namespace themis::ledger {

json GenesisConfig::to_json() const {
  json j;
  j["chain_id"] = chain_id;
  j["validator_seed"] = validator_seed;
  j["block_size"] = block_size;
  json b = json::object();
  for (const auto& [a, v] : balances) b[a.hex()] = v;
  j["balances"] = b;
  json d = json::array();
  for (const auto& dep : deployments) {
    d.push_back({{"id", dep.id}, {"kind", dep.kind}, {"deployer", dep.deployer.hex()},
                 {"params", dep.params}});
  }
  j["deployments"] = d;
  return j;
}

GenesisConfig GenesisConfig::from_json(const json& j) {
  try {
    GenesisConfig g;
    g.chain_id = j.at("chain_id").get<std::string>();
    g.validator_seed = j.at("validator_seed").get<std::string>();
    g.block_size = j.value("block_size", 50u);
    if (g.block_size == 0) throw Error(Errc::kInvalidConfig, "block_size must be positive");
    const json balances = j.value("balances", json::object());
    for (const auto& [k, v] : balances.items()) {
      g.balances[Address::from_hex(k)] = v.get<std::uint64_t>();
    }
    const json deployments = j.value("deployments", json::array());
    for (const auto& d : deployments) {
      g.deployments.push_back(Deployment{d.at("id").get<std::string>(),
                                         d.at("kind").get<std::string>(),
                                         Address::from_hex(d.at("deployer").get<std::string>()),
                                         d.value("params", json::object())});
    }
    return g;
  } catch (const json::exception& e) {
    throw Error(Errc::kInvalidConfig, e.what());
  }
}

Ledger::State Ledger::State::clone() const {
  State s;
  s.balances = balances;
  for (const auto& [id, c] : contracts) s.contracts.emplace(id, c->clone());
  s.tick_offset = tick_offset;
  return s;
}

Ledger::Ledger(GenesisConfig genesis, std::shared_ptr<const ContractRegistry> registry)
    : genesis_(std::move(genesis)), registry_(std::move(registry)) {
  if (genesis_.block_size == 0) throw Error(Errc::kInvalidConfig, "block_size must be positive");
  if (!registry_) registry_ = std::make_shared<ContractRegistry>();
  validator_ = crypto::keygen(as_bytes("themis/validator/" + genesis_.chain_id + "/" +
                                       genesis_.validator_seed));
  state_.balances = genesis_.balances;
  Bytes h = crypto::hash_bytes("themis/genesis/v1", as_bytes(genesis_.to_json().dump()), 32);
  std::copy(h.begin(), h.end(), head_.begin());

  for (const auto& dep : genesis_.deployments) {
    Transaction synthetic;
    synthetic.sender = dep.deployer;
    std::vector<Event> events;
    CallContext ctx(*this, synthetic, events, dep.id);
    if (state_.contracts.count(dep.id)) throw Error(Errc::kDuplicateAddress, dep.id);
    state_.contracts.emplace(dep.id, registry_->create(dep.kind, ctx, dep.params));
  }
}

void Ledger::move_tokens(const Address& from, const Address& to, std::uint64_t amount) {
  if (amount == 0) return;
  auto it = state_.balances.find(from);
  if (it == state_.balances.end() || it->second < amount) {
    throw Error(Errc::kInsufficientFunds, "account " + from.hex() + " needs " +
                                              std::to_string(amount));
  }
  it->second -= amount;
  state_.balances[to] += amount;
}

std::uint64_t Ledger::block_height_locked() const {
  return last_sequence_ / genesis_.block_size + state_.tick_offset;
}

Bytes Ledger::run_native(CallContext& ctx, const Transaction& tx) {
  ByteReader r(tx.call.args);
  const std::string& m = tx.call.method;
  if (m == "transfer") {
    Address to;
    to.id = r.fixed<Address::kSize>();
    std::uint64_t amount = r.u64();
    r.expect_done();
    move_tokens(tx.sender, to, amount);
    ctx.emit("Transfer", {{"from", tx.sender.hex()}, {"to", to.hex()}, {"amount", amount}});
    return {};
  }
  if (m == "deploy") {
    std::string id = r.str();
    std::string kind = r.str();
    std::string params = r.str();
    r.expect_done();
    if (id.empty()) throw Error(Errc::kMalformedCall, "empty contract id");
    if (state_.contracts.count(id)) throw Error(Errc::kDuplicateAddress, id);
    json p;
    try {
      p = json::parse(params);
    } catch (const json::exception& e) {
      throw Error(Errc::kMalformedCall, e.what());
    }
    CallContext inner = ctx.nested(id);
    state_.contracts.emplace(id, registry_->create(kind, inner, p));
    ctx.emit("Deployed", {{"id", id}, {"kind", kind}});
    return {};
  }
  if (m == "tick") {
    std::uint64_t n = r.u64();
    r.expect_done();
    if (tx.sender != Address::from_pk(validator_.pk)) {
      throw Error(Errc::kUnauthorized, "only validators advance blocks");
    }
    state_.tick_offset += n;
    return {};
  }
  throw Error(Errc::kUnknownMethod, m);
}

Receipt Ledger::submit(const Transaction& tx) {
  std::lock_guard lock(mu_);
  return submit_locked(tx);
}

Receipt Ledger::submit_locked(const Transaction& tx) {
  if (Address::from_pk(tx.signature.signer_pk) != tx.sender ||
      !crypto::verify_sig(tx.signature.signer_pk, tx.signing_bytes(), tx.signature)) {
    throw Error(Errc::kBadSignature, "transaction " + std::to_string(tx.sequence_no));
  }
  if (tx.sequence_no != last_sequence_ + 1) {
    throw Error(Errc::kBadSequence, "expected " + std::to_string(last_sequence_ + 1) + ", got " +
                                        std::to_string(tx.sequence_no));
  }

  auto start = std::chrono::steady_clock::now();
  Receipt receipt;
  receipt.sequence_no = tx.sequence_no;
  State snapshot = state_.clone();
  std::vector<Event> events;
  try {
    CallContext ctx(*this, tx, events, tx.call.contract);
    if (tx.call.contract.empty()) {
      receipt.output = run_native(ctx, tx);
    } else {
      auto it = state_.contracts.find(tx.call.contract);
      if (it == state_.contracts.end()) throw Error(Errc::kUnknownContract, tx.call.contract);
      receipt.output = it->second->invoke(ctx, tx.call.method, tx.call.args);
    }
    receipt.success = true;
    receipt.events = std::move(events);
  } catch (const Error& e) {
    state_ = std::move(snapshot);
    receipt.error = e.code();
    receipt.revert_reason = e.detail();
  } catch (const std::exception& e) {
    state_ = std::move(snapshot);
    receipt.error = Errc::kInvalidState;
    receipt.revert_reason = e.what();
  }
  receipt.exec_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  last_sequence_ = tx.sequence_no;
  ByteWriter w;
  w.fixed(head_).fixed(tx.hash());
  Bytes h = crypto::hash_bytes("themis/head/v1", w.bytes(), 32);
  std::copy(h.begin(), h.end(), head_.begin());
  log_.push_back(tx);
  receipts_.push_back(receipt);
  return receipt;
}

Receipt Ledger::execute(const crypto::KeyPair& signer, Call call) {
  std::lock_guard lock(mu_);
  return submit_locked(Transaction::make(signer, last_sequence_ + 1, std::move(call)));
}

Receipt Ledger::execute_private(const crypto::KeyPair& signer, Call call,
                                const crypto::WrappedKey& envelope) {
  std::lock_guard lock(mu_);
  return submit_locked(Transaction::make(signer, last_sequence_ + 1, std::move(call), envelope));
}

Receipt Ledger::transfer(const crypto::KeyPair& from, const Address& to, std::uint64_t amount) {
  ByteWriter w;
  w.fixed(to.id).u64(amount);
  return execute(from, Call{"", "transfer", std::move(w).bytes()});
}

Receipt Ledger::deploy(const crypto::KeyPair& deployer, const std::string& id,
                       const std::string& kind, const json& params) {
  ByteWriter w;
  w.str(id).str(kind).str(params.dump());
  return execute(deployer, Call{"", "deploy", std::move(w).bytes()});
}

Receipt Ledger::advance_blocks(std::uint64_t n) {
  ByteWriter w;
  w.u64(n);
  return execute(validator_, Call{"", "tick", std::move(w).bytes()});
}

Bytes Ledger::open_private_inputs(const Transaction& tx) const {
  if (!tx.private_envelope) throw Error(Errc::kNotPrivate, "transaction has no private envelope");
  return crypto::hybrid_unwrap(validator_.sk, *tx.private_envelope);
}

crypto::WrappedKey Ledger::seal_private_inputs(ByteSpan args, crypto::Rng& rng) const {
  return crypto::hybrid_wrap(validator_.pk, args, rng);
}

Bytes Ledger::query(const std::string& contract_id, const std::string& method,
                    ByteSpan args) const {
  std::lock_guard lock(mu_);
  return contract(contract_id).query(method, args);
}

std::uint64_t Ledger::balance(const Address& a) const {
  std::lock_guard lock(mu_);
  auto it = state_.balances.find(a);
  return it == state_.balances.end() ? 0 : it->second;
}

std::uint64_t Ledger::total_supply() const {
  std::lock_guard lock(mu_);
  std::uint64_t total = 0;
  for (const auto& [a, v] : state_.balances) total += v;
  return total;
}

std::map<Address, std::uint64_t> Ledger::balances() const {
  std::lock_guard lock(mu_);
  return state_.balances;
}

std::uint64_t Ledger::last_sequence() const {
  std::lock_guard lock(mu_);
  return last_sequence_;
}

std::uint64_t Ledger::block_height() const {
  std::lock_guard lock(mu_);
  return block_height_locked();
}

const Contract& Ledger::contract(const std::string& id) const {
  auto it = state_.contracts.find(id);
  if (it == state_.contracts.end()) throw Error(Errc::kUnknownContract, id);
  return *it->second;
}

bool Ledger::has_contract(const std::string& id) const {
  std::lock_guard lock(mu_);
  return state_.contracts.count(id) > 0;
}

std::vector<Transaction> Ledger::tx_log() const {
  std::lock_guard lock(mu_);
  return log_;
}

std::vector<Receipt> Ledger::receipts() const {
  std::lock_guard lock(mu_);
  return receipts_;
}

void Ledger::write_tx_log(std::ostream& out) const {
  std::lock_guard lock(mu_);
  for (const auto& tx : log_) out << tx.to_json().dump() << '\n';
}

std::vector<Transaction> Ledger::read_tx_log(std::istream& in) {
  std::vector<Transaction> txs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      txs.push_back(Transaction::from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(Errc::kInvalidEncoding, e.what());
    }
  }
  return txs;
}

json Ledger::state_json() const {
  std::lock_guard lock(mu_);
  json j;
  j["chain_id"] = genesis_.chain_id;
  j["last_sequence"] = last_sequence_;
  j["block_height"] = block_height_locked();
  j["head"] = to_hex(ByteSpan(head_));
  json b = json::object();
  for (const auto& [a, v] : state_.balances) b[a.hex()] = v;
  j["balances"] = b;
  json c = json::object();
  for (const auto& [id, contract] : state_.contracts) {
    c[id] = {{"kind", std::string(contract->kind())}, {"storage", contract->storage_json()}};
  }
  j["contracts"] = c;
  return j;
}

std::array<std::uint8_t, 32> Ledger::state_hash() const {
  Bytes h = crypto::hash_bytes("themis/state/v1", as_bytes(state_json().dump()), 32);
  std::array<std::uint8_t, 32> out{};
  std::copy(h.begin(), h.end(), out.begin());
  return out;
}

std::unique_ptr<Ledger> Ledger::replay(const GenesisConfig& genesis,
                                       std::shared_ptr<const ContractRegistry> registry,
                                       const std::vector<Transaction>& txs) {
  auto ledger = std::make_unique<Ledger>(genesis, std::move(registry));
  for (const auto& tx : txs) ledger->submit(tx);
  return ledger;
}

}  // namespace themis::ledger
