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

#include "themis/actors/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "themis/contracts/registry.hpp"
#include "themis/ledger/sidechain.hpp"
#include "themis/log.hpp"

namespace themis::actors {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

constexpr std::uint64_t kBenchImpressions = 100000;

CampaignPlan bench_plan(std::size_t n_ads, Rng& rng) {
  CampaignPlan plan;
  for (std::size_t i = 0; i < n_ads; ++i) {
    plan.catalog.entries.push_back({"ad-" + std::to_string(i), "adv-" + std::to_string(i % 2), kBenchImpressions});
    plan.policies.push_back(rng.range(1, plan.max_policy));
  }
  plan.fee = 10;
  return plan;
}

// A campaign ready for claims: set up and with a published pool key.
struct ReadyCampaign {
  ReadyCampaign(const CampaignPlan& plan, std::uint64_t seed)
      : ledger(Campaign::genesis_for(plan, seed), contracts::default_registry()),
        campaign(ledger, plan, {}, seed) {
    campaign.phase1_setup();
    campaign.pool_selection();
  }
  Ledger ledger;
  Campaign campaign;
};

json fit_json(const LinearFit& f) {
  return {{"intercept", f.intercept}, {"slope", f.slope}, {"r2", f.r2}};
}

}  // namespace

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit f;
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return f;
  const double mx = std::accumulate(x.begin(), x.begin() + n, 0.0) / n;
  const double my = std::accumulate(y.begin(), y.begin() + n, 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += e * e;
  }
  f.r2 = syy == 0 ? 1.0 : 1.0 - ss_res / syy;
  return f;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

InteractionVector bench_interactions(std::size_t n_ads, Rng& rng, double density, std::uint64_t max_clicks) {
  InteractionVector iv;
  iv.counts.resize(n_ads);
  const auto threshold = static_cast<std::uint64_t>(density * 1000000);
  for (auto& c : iv.counts) {
    if (rng.uniform(1000000) < threshold) c = rng.range(1, max_clicks);
  }
  return iv;
}

json ClientBench::to_json() const {
  json rows_j = json::array();
  for (const auto& r : rows) {
    rows_j.push_back({{"catalog_size", r.catalog_size},
                      {"interaction_encryption_s", r.interaction_encryption_s},
                      {"request_generation_s", r.request_generation_s}});
  }
  return {{"rows", rows_j},
          {"runs", runs},
          {"interaction_encryption_fit", fit_json(encryption_fit)},
          {"request_generation_fit", fit_json(request_fit)}};
}

ClientBench bench_client(const std::vector<std::size_t>& sizes, std::size_t runs, std::uint64_t seed) {
  ClientBench out;
  out.runs = runs;
  Rng rng = Rng::from_u64(seed).fork("bench-client");
  std::vector<double> xs, enc_y, req_y;
  for (std::size_t n : sizes) {
    ReadyCampaign rc(bench_plan(n, rng), seed);
    const auto& plan = rc.campaign.plan();
    const auto& ids = rc.campaign.ids();
    auto pk_t = GroupElement::from_bytes(rc.ledger.query(ids.psc, "pool_key", {}));
    std::vector<double> enc, req;
    for (std::size_t r = 0; r < runs; ++r) {
      auto session = UserSession::create(bench_interactions(n, rng), rng);
      auto t0 = Clock::now();
      auto v = encrypt_interactions(session, pk_t, plan.interaction_cap, rng);
      enc.push_back(since(t0));
      user_claim(rc.ledger, ids, session, plan.interaction_cap, rng);
      t0 = Clock::now();
      [[maybe_unused]] auto tuple = build_payment_request(session, plan.max_policy);
      req.push_back(since(t0));
    }
    ClientRow row{n, median(enc), median(req)};
    log::info("bench client n=" + std::to_string(n) + " enc=" + std::to_string(row.interaction_encryption_s) +
              "s req=" + std::to_string(row.request_generation_s) + "s");
    out.rows.push_back(row);
    xs.push_back(static_cast<double>(n));
    enc_y.push_back(row.interaction_encryption_s);
    req_y.push_back(row.request_generation_s);
  }
  out.encryption_fit = linear_fit(xs, enc_y);
  out.request_fit = linear_fit(xs, req_y);
  return out;
}

json SettlementBench::to_json() const {
  json rows_j = json::array();
  for (const auto& r : rows) {
    rows_j.push_back(
        {{"batch", r.batch}, {"batch_proof_gen_s", r.batch_proof_gen_s}, {"batch_verify_s", r.batch_verify_s}});
  }
  return {{"rows", rows_j}, {"runs", runs}, {"verify_ratio", verify_ratio}, {"gen_ratio", gen_ratio}};
}

SettlementBench bench_settlement(const std::vector<std::size_t>& batches, std::size_t runs, std::uint64_t seed) {
  SettlementBench out;
  out.runs = runs;
  Rng rng = Rng::from_u64(seed).fork("bench-settlement");
  for (std::size_t b : batches) {
    std::vector<double> gen, ver;
    for (std::size_t r = 0; r < runs; ++r) {
      std::vector<std::pair<Address, std::uint64_t>> payees;
      for (std::size_t i = 0; i < b; ++i) {
        payees.emplace_back(Address::from_pk(crypto::keygen(rng).pk), rng.range(0, 65536));
      }
      std::vector<Scalar> rs;
      for (std::size_t i = 0; i < b; ++i) rs.push_back(rng.scalar());
      auto t0 = Clock::now();
      std::vector<payments::NoteWithOpening> notes;
      std::uint64_t total = 0;
      for (std::size_t i = 0; i < b; ++i) {
        const auto& [addr, amount] = payees[i];
        notes.push_back({payments::make_note(addr, amount, rs[i]), {rs[i], amount}});
        total += amount;
      }
      auto batch = payments::settle_batch(notes, total);
      gen.push_back(since(t0));
      t0 = Clock::now();
      const bool ok = payments::verify_batch(batch);
      ver.push_back(since(t0));
      if (!ok) throw Error(Errc::kProofRejected, "benchmark batch failed to verify");
    }
    out.rows.push_back({b, median(gen), median(ver)});
    log::info("bench settlement batch=" + std::to_string(b) + " gen=" + std::to_string(out.rows.back().batch_proof_gen_s) +
              "s verify=" + std::to_string(out.rows.back().batch_verify_s) + "s");
  }
  const SettlementRow* lo = nullptr;
  const SettlementRow* hi = nullptr;
  for (const auto& r : out.rows) {
    if (r.batch > 1 && (!lo || r.batch < lo->batch)) lo = &r;
    if (!hi || r.batch > hi->batch) hi = &r;
  }
  if (lo && hi && lo != hi) {
    if (lo->batch_verify_s > 0) out.verify_ratio = hi->batch_verify_s / lo->batch_verify_s;
    if (lo->batch_proof_gen_s > 0) out.gen_ratio = hi->batch_proof_gen_s / lo->batch_proof_gen_s;
  }
  return out;
}

json ConcurrentBench::to_json() const {
  json cohorts_j = json::array();
  for (const auto& c : cohorts) {
    cohorts_j.push_back({{"users", c.users},
                         {"end_to_end_claim_s", c.end_to_end_claim_s},
                         {"breakdown",
                          {{"client_encrypt_s", c.breakdown.client_encrypt},
                           {"aggregate_s", c.breakdown.aggregate},
                           {"client_request_s", c.breakdown.client_request},
                           {"payment_request_s", c.breakdown.payment_request}}}});
  }
  json chains_j = json::array();
  for (const auto& c : chains) {
    chains_j.push_back({{"sidechain_count", c.chains},
                        {"users_processed", c.users_processed},
                        {"wall_seconds", c.wall_seconds},
                        {"users_per_second", c.users_per_second},
                        {"users_per_day", c.users_per_second * 86400.0},
                        {"users_per_month", c.users_per_second * 86400.0 * 30.0}});
  }
  return {{"catalog_size", catalog_size},
          {"runs", runs},
          {"budget_seconds", budget_seconds},
          {"hardware_threads", hardware_threads},
          {"cohorts", cohorts_j},
          {"sidechains", chains_j},
          {"scaling_fit", fit_json(scaling_fit)},
          {"extrapolation_basis", "users_per_second measured over the wall-clock budget, scaled linearly to a day "
                                  "(86400 s) and a month (30 days)"}};
}

ConcurrentBench bench_concurrent(const std::vector<std::size_t>& users, std::size_t catalog_size,
                                 const std::vector<std::size_t>& chains, std::size_t runs, double budget_seconds,
                                 std::uint64_t seed, std::size_t chain_cohort) {
  ConcurrentBench out;
  out.catalog_size = catalog_size;
  out.runs = runs;
  out.budget_seconds = budget_seconds;
  out.hardware_threads = std::thread::hardware_concurrency();
  Rng rng = Rng::from_u64(seed).fork("bench-concurrent");
  const CampaignPlan plan = bench_plan(catalog_size, rng);

  for (std::size_t n : users) {
    std::vector<std::pair<double, CohortTiming>> samples;
    for (std::size_t r = 0; r < runs; ++r) {
      ReadyCampaign rc(plan, seed + r);
      std::vector<UserSession> sessions;
      for (std::size_t u = 0; u < n; ++u) sessions.push_back(UserSession::create(bench_interactions(catalog_size, rng), rng));
      Rng cohort_rng = rng.fork("cohort");
      auto t0 = Clock::now();
      auto timing = process_cohort(rc.ledger, rc.campaign.ids(), sessions, plan, cohort_rng);
      samples.emplace_back(since(t0), timing);
    }
    std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const auto& mid = samples[samples.size() / 2];
    out.cohorts.push_back({n, mid.first, mid.second});
    log::info("bench cohort users=" + std::to_string(n) + " " + std::to_string(mid.first) + "s");
  }

  std::vector<double> xs, ys;
  double base = 0;
  for (std::size_t c : chains) {
    ledger::SidechainSet set(c, Campaign::genesis_for(plan, seed), contracts::default_registry());
    std::vector<std::unique_ptr<Campaign>> campaigns;
    std::vector<Rng> rngs;
    for (std::size_t i = 0; i < c; ++i) {
      campaigns.push_back(std::make_unique<Campaign>(set.chain(i), plan, std::vector<InteractionVector>{}, seed));
      campaigns.back()->phase1_setup();
      campaigns.back()->pool_selection();
      rngs.push_back(rng.fork("chain/" + std::to_string(i)));
    }
    auto report = set.run_parallel([&](Ledger& chain, std::size_t i) -> std::uint64_t {
      auto& crng = rngs[i];
      std::uint64_t done = 0;
      const auto start = Clock::now();
      while (since(start) < budget_seconds) {
        std::vector<UserSession> sessions;
        for (std::size_t u = 0; u < chain_cohort; ++u) {
          sessions.push_back(UserSession::create(bench_interactions(plan.catalog.size(), crng), crng));
        }
        process_cohort(chain, campaigns[i]->ids(), sessions, plan, crng);
        done += sessions.size();
      }
      return done;
    });
    ChainRow row{c, report.total_units, report.wall_seconds, report.units_per_second};
    out.chains.push_back(row);
    if (base == 0) base = row.users_per_second;
    xs.push_back(static_cast<double>(c));
    ys.push_back(base > 0 ? row.users_per_second / base : 0);
    log::info("bench sidechains=" + std::to_string(c) + " users/s=" + std::to_string(row.users_per_second));
  }
  out.scaling_fit = linear_fit(xs, ys);
  return out;
}

}  // namespace themis::actors
