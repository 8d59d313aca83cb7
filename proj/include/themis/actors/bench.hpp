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

#ifndef THEMIS_ACTORS_BENCH_HPP_
#define THEMIS_ACTORS_BENCH_HPP_

#include <cstdint>
#include <vector>

#include "themis/actors/campaign.hpp"

namespace themis::actors {

// Least-squares fit y = a + b x.
struct LinearFit {
  double intercept = 0;
  double slope = 0;
  double r2 = 0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);
double median(std::vector<double> v);

// Interaction vectors used by the benchmarks: each ad is clicked with
// probability `density`, between 1 and `max_clicks` times.
InteractionVector bench_interactions(std::size_t n_ads, Rng& rng, double density = 0.3,
                                     std::uint64_t max_clicks = 8);

struct ClientRow {
  std::size_t catalog_size = 0;
  double interaction_encryption_s = 0;  // median
  double request_generation_s = 0;      // median: decrypt, recover, prove
};
struct ClientBench {
  std::vector<ClientRow> rows;
  std::size_t runs = 0;
  LinearFit encryption_fit;
  LinearFit request_fit;
  json to_json() const;
};
ClientBench bench_client(const std::vector<std::size_t>& sizes, std::size_t runs, std::uint64_t seed);

struct SettlementRow {
  std::size_t batch = 0;
  double batch_proof_gen_s = 0;  // median: notes plus batch proof
  double batch_verify_s = 0;     // median
};
struct SettlementBench {
  std::vector<SettlementRow> rows;
  std::size_t runs = 0;
  // Largest batch over the smallest batch above one note.
  double verify_ratio = 0;
  double gen_ratio = 0;
  json to_json() const;
};
SettlementBench bench_settlement(const std::vector<std::size_t>& batches, std::size_t runs, std::uint64_t seed);

struct CohortRow {
  std::size_t users = 0;
  double end_to_end_claim_s = 0;  // median over runs
  CohortTiming breakdown;         // of the median run
};
struct ChainRow {
  std::size_t chains = 0;
  std::uint64_t users_processed = 0;
  double wall_seconds = 0;
  double users_per_second = 0;
};
struct ConcurrentBench {
  std::size_t catalog_size = 0;
  std::size_t runs = 0;
  double budget_seconds = 0;
  unsigned hardware_threads = 0;
  std::vector<CohortRow> cohorts;
  std::vector<ChainRow> chains;
  // Throughput per chain relative to one chain, fitted over the chain counts.
  LinearFit scaling_fit;
  json to_json() const;
};
// Cohort latency for each user count, then users processed per chain count
// within `budget_seconds` of wall-clock time, cohorts of `chain_cohort` users.
ConcurrentBench bench_concurrent(const std::vector<std::size_t>& users, std::size_t catalog_size,
                                 const std::vector<std::size_t>& chains, std::size_t runs,
                                 double budget_seconds, std::uint64_t seed, std::size_t chain_cohort = 10);

}  // namespace themis::actors

#endif  // THEMIS_ACTORS_BENCH_HPP_
