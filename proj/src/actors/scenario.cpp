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

#include "themis/actors/scenario.hpp"

#include <chrono>
#include <cmath>
#include <set>

namespace themis::actors {

namespace {

// Ad i interacts with probability p_i; counts are uniform in [1, max_clicks].
std::vector<InteractionVector> generate_users(Rng& rng, std::size_t count, std::size_t n_ads,
                                              std::uint64_t max_clicks, double density,
                                              const std::string& distribution) {
  std::vector<double> p(n_ads, density);
  if (distribution == "zipf") {
    double h = 0;
    for (std::size_t i = 0; i < n_ads; ++i) h += 1.0 / static_cast<double>(i + 1);
    for (std::size_t i = 0; i < n_ads; ++i) {
      p[i] = std::min(1.0, density * static_cast<double>(n_ads) / (h * static_cast<double>(i + 1)));
    }
  } else if (distribution != "uniform") {
    throw Error(Errc::kInvalidConfig, "unknown distribution " + distribution);
  }
  constexpr std::uint64_t kScale = std::uint64_t{1} << 32;
  std::vector<InteractionVector> users(count);
  for (auto& u : users) {
    u.counts.resize(n_ads);
    for (std::size_t i = 0; i < n_ads; ++i) {
      bool hit = static_cast<double>(rng.uniform(kScale)) < p[i] * static_cast<double>(kScale);
      u.counts[i] = hit && max_clicks > 0 ? rng.range(1, max_clicks) : 0;
    }
  }
  return users;
}

// Impressions leave a little headroom over the clicks actually delivered.
void auto_impressions(CampaignPlan& plan, const std::vector<InteractionVector>& users) {
  for (std::size_t i = 0; i < plan.catalog.size(); ++i) {
    std::uint64_t total = 0;
    for (const auto& u : users) total += u.counts[i];
    plan.catalog.entries[i].impressions = total + total / 10 + 1;
  }
}

Misbehavior parse_misbehavior(const json& j) {
  Misbehavior m;
  if (j.contains("cf_underpay")) {
    const auto& u = j.at("cf_underpay");
    m.cf_underpay = Misbehavior::Underpay{u.value("user", std::size_t{0}), u.value("delta", std::uint64_t{1})};
  }
  if (j.contains("cf_overwithdraw")) m.cf_overwithdraw = j.at("cf_overwithdraw").get<std::uint64_t>();
  if (j.contains("tamper_policy")) m.tamper_policy = j.at("tamper_policy").get<std::uint32_t>();
  if (j.contains("dkg_bad_shares")) {
    for (const auto& [dealer, victims] : j.at("dkg_bad_shares").items()) {
      auto& set = m.dkg.bad_shares[static_cast<std::uint32_t>(std::stoul(dealer))];
      for (const auto& v : victims) set.insert(v.get<std::uint32_t>());
    }
  }
  return m;
}

json misbehavior_json(const Misbehavior& m) {
  json j = json::object();
  if (m.cf_underpay) j["cf_underpay"] = {{"user", m.cf_underpay->user}, {"delta", m.cf_underpay->delta}};
  if (m.cf_overwithdraw) j["cf_overwithdraw"] = *m.cf_overwithdraw;
  if (m.tamper_policy) j["tamper_policy"] = *m.tamper_policy;
  if (!m.dkg.bad_shares.empty()) {
    json d = json::object();
    for (const auto& [dealer, victims] : m.dkg.bad_shares) d[std::to_string(dealer)] = victims;
    j["dkg_bad_shares"] = d;
  }
  return j;
}

}  // namespace

Scenario Scenario::from_json(const json& j, std::optional<std::uint64_t> seed_override) {
  try {
    if (!j.is_object()) throw Error(Errc::kInvalidConfig, "scenario must be an object");
    Scenario s;
    s.name = j.value("name", std::string("scenario"));
    s.seed = seed_override.value_or(j.value("seed", std::uint64_t{1}));
    Rng rng = Rng::from_u64(s.seed).fork("scenario");
    CampaignPlan& plan = s.plan;

    bool auto_imp = false;
    const json& cat = j.at("catalog");
    if (cat.is_array()) {
      for (const auto& e : cat) {
        plan.catalog.entries.push_back({e.value("ad", "ad-" + std::to_string(plan.catalog.size())),
                                        e.at("advertiser").get<std::string>(),
                                        e.at("impressions").get<std::uint64_t>()});
      }
    } else {
      auto n_ads = cat.at("ads").get<std::size_t>();
      auto n_adv = cat.value("advertisers", std::size_t{1});
      if (n_adv == 0 || n_adv > n_ads) throw Error(Errc::kInvalidConfig, "advertisers must be in [1, ads]");
      auto imp = cat.value("impressions", json("auto"));
      auto_imp = imp.is_string();
      if (auto_imp && imp.get<std::string>() != "auto") throw Error(Errc::kInvalidConfig, "impressions");
      for (std::size_t i = 0; i < n_ads; ++i) {
        plan.catalog.entries.push_back({"ad-" + std::to_string(i), "adv-" + std::to_string(i % n_adv),
                                        auto_imp ? 0 : imp.get<std::uint64_t>()});
      }
    }

    plan.max_policy = j.value("max_policy", plan.max_policy);
    plan.interaction_cap = j.value("interaction_cap", plan.interaction_cap);
    plan.advertiser_slack = j.value("advertiser_slack", plan.advertiser_slack);
    plan.fee = j.value("fee", std::uint64_t{0});

    const json& pol = j.at("policies");
    if (pol.is_array()) {
      plan.policies = pol.get<std::vector<std::uint64_t>>();
    } else {
      const json& r = pol.at("random");
      auto lo = r.value("min", std::uint64_t{1});
      auto hi = r.value("max", plan.max_policy);
      if (lo == 0 || lo > hi) throw Error(Errc::kInvalidConfig, "policy range");
      for (std::size_t i = 0; i < plan.catalog.size(); ++i) plan.policies.push_back(rng.range(lo, hi));
    }

    const json& users = j.at("users");
    if (users.contains("vectors")) {
      for (const auto& v : users.at("vectors")) s.users.push_back({v.get<std::vector<std::uint64_t>>()});
    } else {
      s.users = generate_users(rng, users.at("count").get<std::size_t>(), plan.catalog.size(),
                               users.value("max_clicks", std::uint64_t{8}), users.value("density", 0.3),
                               users.value("distribution", std::string("uniform")));
    }
    for (const auto& u : s.users) {
      if (u.counts.size() != plan.catalog.size()) throw Error(Errc::kInvalidConfig, "vector length");
    }
    if (auto_imp) auto_impressions(plan, s.users);

    if (j.contains("windows")) {
      const auto& w = j.at("windows");
      plan.windows.epoch = w.value("epoch", plan.windows.epoch);
      plan.windows.registration = w.value("registration", plan.windows.registration);
      plan.windows.draw = w.value("draw", plan.windows.draw);
      plan.windows.complaint = w.value("complaint", plan.windows.complaint);
    }
    if (j.contains("pool")) {
      const auto& p = j.at("pool");
      plan.pool.registrants = p.value("registrants", plan.pool.registrants);
      plan.pool.expected_participants = p.value("n_cp", plan.pool.expected_participants);
      plan.pool.threshold = p.value("k", plan.pool.threshold);
    }
    s.misbehavior = parse_misbehavior(j.value("misbehavior", json::object()));
    s.chains = j.value("chains", std::size_t{1});
    if (s.chains == 0) throw Error(Errc::kInvalidConfig, "chains must be positive");
    s.analytics_posters = j.value("analytics_posters", std::vector<std::uint32_t>{});
    s.verify_replay = j.value("verify_replay", true);
    plan.validate();
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::kInvalidConfig, e.what());
  }
}

json Scenario::to_json() const {
  json cat = json::array();
  for (const auto& e : plan.catalog.entries) {
    cat.push_back({{"ad", e.ad_id}, {"advertiser", e.advertiser}, {"impressions", e.impressions}});
  }
  json vecs = json::array();
  for (const auto& u : users) vecs.push_back(u.counts);
  return {{"name", name},
          {"seed", seed},
          {"catalog", std::move(cat)},
          {"policies", plan.policies},
          {"fee", plan.fee},
          {"max_policy", plan.max_policy},
          {"interaction_cap", plan.interaction_cap},
          {"advertiser_slack", plan.advertiser_slack},
          {"users", {{"vectors", std::move(vecs)}}},
          {"windows",
           {{"epoch", plan.windows.epoch},
            {"registration", plan.windows.registration},
            {"draw", plan.windows.draw},
            {"complaint", plan.windows.complaint}}},
          {"pool",
           {{"registrants", plan.pool.registrants},
            {"n_cp", plan.pool.expected_participants},
            {"k", plan.pool.threshold}}},
          {"misbehavior", misbehavior_json(misbehavior)},
          {"chains", chains},
          {"analytics_posters", analytics_posters},
          {"verify_replay", verify_replay}};
}

Scenario random_scenario(Rng& rng, const RandomScenarioOptions& o) {
  Scenario s;
  s.seed = rng.next_u64();
  s.name = "random";
  const std::size_t n_ads = rng.range(o.min_ads, o.max_ads);
  const std::size_t n_adv = rng.range(o.min_advertisers, std::min(o.max_advertisers, n_ads));
  for (std::size_t i = 0; i < n_ads; ++i) {
    s.plan.catalog.entries.push_back({"ad-" + std::to_string(i), "adv-" + std::to_string(i % n_adv), 0});
  }
  s.plan.max_policy = o.max_policy;
  s.plan.interaction_cap = o.max_clicks;
  for (std::size_t i = 0; i < n_ads; ++i) s.plan.policies.push_back(rng.range(1, o.max_policy));
  s.plan.fee = rng.range(0, 1000);
  s.users = generate_users(rng, rng.range(o.min_users, o.max_users), n_ads, o.max_clicks, o.density, "uniform");
  auto_impressions(s.plan, s.users);
  return s;
}

void inject(Scenario& s, Injection kind, Rng& rng) {
  if (kind == Injection::kNone) return;
  if (s.users.empty()) throw Error(Errc::kInvalidConfig, "no users to settle");
  if (kind == Injection::kUnderpay) {
    std::vector<std::size_t> paid;
    for (std::size_t u = 0; u < s.users.size(); ++u) {
      if (dot_product(s.plan.policies, s.users[u].counts) > 0) paid.push_back(u);
    }
    if (paid.empty()) {
      s.users[0].counts[0] = 1;
      auto& imp = s.plan.catalog.entries[0].impressions;
      imp = std::max<std::uint64_t>(imp, 1);
      paid.push_back(0);
    }
    std::size_t u = paid[rng.uniform(paid.size())];
    std::uint64_t owed = dot_product(s.plan.policies, s.users[u].counts);
    s.misbehavior.cf_underpay = Misbehavior::Underpay{u, rng.range(1, owed)};
    return;
  }
  std::uint64_t refunds = 0;
  for (std::size_t i = 0; i < s.plan.catalog.size(); ++i) {
    std::uint64_t clicks = 0;
    for (const auto& u : s.users) clicks += u.counts[i];
    const auto imp = s.plan.catalog.entries[i].impressions;
    if (imp > clicks) refunds += (imp - clicks) * s.plan.policies[i];
  }
  if (refunds == 0) throw Error(Errc::kInvalidConfig, "nothing left in escrow to over-withdraw");
  s.misbehavior.cf_overwithdraw = rng.range(1, refunds);
}

namespace {

void check(json& checks, std::vector<std::string>& failures, const std::string& name, bool ok) {
  checks[name] = ok;
  if (!ok) failures.push_back(name);
}

}  // namespace

ScenarioReport run_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  const bool tamper = s.misbehavior.tamper_policy.has_value();
  const bool cf_fault = s.misbehavior.any_cf_fault();

  ScenarioReport out;
  json results = json::array();
  json checks = json::object();
  json timing = json::array();
  for (std::size_t c = 0; c < s.chains; ++c) {
    const std::string prefix = s.chains > 1 ? "chain" + std::to_string(c) + "." : "";
    auto genesis = Campaign::genesis_for(s.plan, s.seed, "themis-" + std::to_string(c));
    Ledger ledger(genesis, contracts::default_registry());
    Campaign campaign(ledger, s.plan, s.users, s.seed, s.misbehavior);
    if (!s.analytics_posters.empty()) campaign.set_analytics_posters(s.analytics_posters);
    auto r = campaign.run();

    json rj = r.to_json(false);
    if (tamper) {
      check(checks, out.failures, prefix + "policy_mismatch_detected", !r.aborted.empty());
      check(checks, out.failures, prefix + "no_funds_staked",
            !ledger.has_contract(campaign.ids().fsc) || !campaign.fsc().initialized());
    } else {
      check(checks, out.failures, prefix + "completed", r.aborted.empty());
      check(checks, out.failures, prefix + "analytics_match", r.analytics_match);
      check(checks, out.failures, prefix + "analytics_verified", r.analytics_verified);
      std::set<std::string> pks, addrs;
      for (const auto& u : r.users) {
        pks.insert(u.user_pk);
        addrs.insert(u.addr);
      }
      check(checks, out.failures, prefix + "fresh_keys",
            pks.size() == r.users.size() && addrs.size() == r.users.size());
      if (cf_fault) {
        check(checks, out.failures, prefix + "cf_flagged_dishonest", r.cf_flagged_dishonest);
        check(checks, out.failures, prefix + "fees_withheld", r.fee_paid == 0);
      } else {
        check(checks, out.failures, prefix + "payouts_match", r.payouts_match);
        check(checks, out.failures, prefix + "conservation", r.conservation);
        check(checks, out.failures, prefix + "refund_identity", r.refund_identity);
        check(checks, out.failures, prefix + "no_flags", !r.cf_flagged_dishonest && !r.state_failed);
        check(checks, out.failures, prefix + "cf_gain_zero", r.cf_gain == 0);
      }
    }
    if (s.verify_replay) {
      auto replayed = Ledger::replay(genesis, contracts::default_registry(), ledger.tx_log());
      bool same = replayed->state_hash() == ledger.state_hash();
      rj["replay_matches"] = same;
      check(checks, out.failures, prefix + "replay_matches", same);
    }
    results.push_back(std::move(rj));
    timing.push_back(r.phase_seconds);
  }
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  out.ok = out.failures.empty();
  out.report = {{"schema_version", kReportSchemaVersion},
                {"scenario", s.name},
                {"seed", s.seed},
                {"catalog_size", s.plan.catalog.size()},
                {"user_count", s.users.size()},
                {"sidechain_count", s.chains},
                {"misbehavior", misbehavior_json(s.misbehavior)},
                {"results", std::move(results)},
                {"checks", std::move(checks)},
                {"failures", out.failures},
                {"ok", out.ok},
                {"timing", {{"total_seconds", elapsed.count()}, {"phase_seconds", std::move(timing)}}}};
  return out;
}

json strip_timing(json report) {
  report.erase("timing");
  return report;
}

}  // namespace themis::actors
