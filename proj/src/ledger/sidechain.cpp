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

#include "themis/ledger/sidechain.hpp"

#include <chrono>
#include <exception>
#include <thread>

namespace themis::ledger {

json ParallelRunReport::to_json() const {
  json per = json::array();
  for (const auto& c : chains) {
    per.push_back({{"chain", c.chain_index},
                   {"units", c.units_processed},
                   {"elapsed_s", c.elapsed_seconds}});
  }
  return {{"chains", per},
          {"total_units", total_units},
          {"wall_s", wall_seconds},
          {"units_per_second", units_per_second}};
}

SidechainSet::SidechainSet(std::size_t chains, const GenesisConfig& base,
                           std::shared_ptr<const ContractRegistry> registry) {
  if (chains == 0) throw Error(Errc::kInvalidConfig, "at least one chain");
  for (std::size_t i = 0; i < chains; ++i) {
    GenesisConfig g = base;
    g.chain_id = base.chain_id + "-" + std::to_string(i);
    chains_.push_back(std::make_unique<Ledger>(std::move(g), registry));
  }
}

ParallelRunReport SidechainSet::run_parallel(const Workload& workload) {
  ParallelRunReport report;
  report.chains.resize(chains_.size());
  std::vector<std::exception_ptr> errors(chains_.size());
  auto wall_start = std::chrono::steady_clock::now();
  {
    std::vector<std::jthread> threads;
    for (std::size_t i = 0; i < chains_.size(); ++i) {
      threads.emplace_back([&, i] {
        auto start = std::chrono::steady_clock::now();
        try {
          report.chains[i].units_processed = workload(*chains_[i], i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
        report.chains[i].chain_index = i;
        report.chains[i].elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      });
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& c : report.chains) report.total_units += c.units_processed;
  report.units_per_second = report.wall_seconds > 0 ? report.total_units / report.wall_seconds : 0;
  return report;
}

}  // namespace themis::ledger
