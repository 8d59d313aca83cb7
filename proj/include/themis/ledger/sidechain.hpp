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

#ifndef THEMIS_LEDGER_SIDECHAIN_HPP_
#define THEMIS_LEDGER_SIDECHAIN_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "themis/ledger/ledger.hpp"

namespace themis::ledger {

struct ChainRunReport {
  std::size_t chain_index = 0;
  std::uint64_t units_processed = 0;
  double elapsed_seconds = 0;
};

struct ParallelRunReport {
  std::vector<ChainRunReport> chains;
  std::uint64_t total_units = 0;
  double wall_seconds = 0;
  double units_per_second = 0;

  json to_json() const;
};

// Independent ledgers, one per sidechain. Each chain gets its own genesis
// (chain id suffixed with the index) and its own validator key.
class SidechainSet {
 public:
  using Workload = std::function<std::uint64_t(Ledger& chain, std::size_t index)>;

  SidechainSet(std::size_t chains, const GenesisConfig& base,
               std::shared_ptr<const ContractRegistry> registry);

  std::size_t size() const { return chains_.size(); }
  Ledger& chain(std::size_t i) { return *chains_.at(i); }

  // Runs the workload on every chain concurrently, one thread per chain.
  // The workload returns the number of units (e.g. users) it processed.
  ParallelRunReport run_parallel(const Workload& workload);

 private:
  std::vector<std::unique_ptr<Ledger>> chains_;
};

}  // namespace themis::ledger

#endif  // THEMIS_LEDGER_SIDECHAIN_HPP_
