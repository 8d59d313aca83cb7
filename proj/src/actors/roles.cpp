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

#include "themis/actors/roles.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace themis::actors {

std::vector<std::string> AdCatalog::advertisers() const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (std::find(out.begin(), out.end(), e.advertiser) == out.end()) out.push_back(e.advertiser);
  }
  return out;
}

std::vector<contracts::AdTerms> AdCatalog::terms() const {
  std::vector<contracts::AdTerms> out;
  for (const auto& e : entries) out.push_back({e.advertiser, e.impressions});
  return out;
}

void CampaignPlan::validate() const {
  if (catalog.size() == 0) throw Error(Errc::kInvalidConfig, "empty catalog");
  if (policies.size() != catalog.size()) throw Error(Errc::kInvalidConfig, "one policy per ad");
  for (auto p : policies) {
    if (p == 0 || p > max_policy) throw Error(Errc::kInvalidConfig, "policy entries must be in [1, max_policy]");
  }
  if (pool.registrants == 0) throw Error(Errc::kInvalidConfig, "pool needs registrants");
  if (pool.expected_participants == 0) throw Error(Errc::kInvalidConfig, "n_cp must be positive");
}

std::uint64_t CampaignPlan::required_deposit(const std::string& advertiser) const {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (catalog.entries[i].advertiser == advertiser) sum += catalog.entries[i].impressions * policies[i];
  }
  auto shares = contracts::apportion_fee(catalog.terms(), policies, fee);
  return sum + (shares.count(advertiser) ? shares.at(advertiser) : 0);
}

void Advertiser::agree(const GroupElement& cf_pk, std::map<std::uint32_t, std::uint64_t> policies) {
  cf_pk_ = cf_pk;
  agreed_ = std::move(policies);
}

void Advertiser::verify_policies(const contracts::PolicyContract& psc) const {
  auto key = contracts::policy_key(key_.sk, cf_pk_);
  for (const auto& [index, value] : agreed_) {
    auto where = id_ + ": entry " + std::to_string(index);
    if (index >= psc.enc_policies().size() || psc.enc_policies()[index].empty()) {
      throw Error(Errc::kPolicyMismatch, where + " missing");
    }
    std::uint64_t stored = 0;
    try {
      stored = contracts::open_policy(key, psc.id(), index, psc.enc_policies()[index]);
    } catch (const Error&) {
      throw Error(Errc::kPolicyMismatch, where + " does not open");
    }
    if (stored != value) throw Error(Errc::kPolicyMismatch, where + " differs");
  }
}

std::uint64_t Advertiser::spend(const std::vector<std::uint64_t>& aggr_clicks) const {
  std::uint64_t sp = 0;
  for (const auto& [index, value] : agreed_) sp += value * aggr_clicks.at(index);
  return sp;
}

std::vector<Ciphertext> sum_enc_vec_prime(
    const std::vector<std::shared_ptr<const std::vector<Ciphertext>>>& log, std::size_t n_ads,
    std::optional<std::size_t> omit) {
  std::vector<Ciphertext> sums(n_ads);
  for (std::size_t u = 0; u < log.size(); ++u) {
    if (omit && *omit == u) continue;
    for (std::size_t i = 0; i < n_ads; ++i) sums[i] = sums[i] + (*log[u])[i];
  }
  return sums;
}

bool Advertiser::verify_analytics(const contracts::PolicyContract& psc,
                                  const contracts::FundContract& fsc) const {
  if (!fsc.encrypted_clicks()) return false;
  auto sums = sum_enc_vec_prime(psc.enc_vec_prime_log(), psc.params().n_ads);
  if (sums != *fsc.encrypted_clicks()) return false;
  for (const auto& [member, parts] : fsc.partials()) {
    const auto& commitment = psc.share_commitments().at(member - 1);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (!dkg::verify_partial(sums[i], parts[i], commitment)) return false;
    }
  }
  std::vector<dkg::PartialDecryption> chosen;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    chosen.clear();
    for (const auto& [member, parts] : fsc.partials()) {
      if (chosen.size() < psc.pool_config().k) chosen.push_back(parts[i]);
    }
    if (chosen.size() < psc.pool_config().k) return false;
    if (!(dkg::interpolate_partials(sums[i], chosen) == GroupElement::base_mul(fsc.aggr_clicks()[i]))) {
      return false;
    }
  }
  return true;
}

UserSession UserSession::create(InteractionVector interactions, Rng& rng) {
  UserSession s;
  s.ephemeral = crypto::keygen(rng);
  s.payout = crypto::keygen(rng);
  s.interactions = std::move(interactions);
  return s;
}

std::vector<std::pair<Address, std::uint64_t>> CampaignFacilitator::pending_requests(
    const contracts::FundContract& fsc) const {
  std::vector<std::pair<Address, std::uint64_t>> out;
  for (const auto& q : fsc.payment_requests()) {
    if (fsc.paid_requests().count(q.addr)) continue;
    Bytes raw = crypto::hybrid_unwrap(key_.sk, q.for_cf);
    ByteReader r(raw);
    std::uint64_t amount = r.u64();
    r.expect_done();
    out.emplace_back(q.addr, amount);
  }
  return out;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace themis::actors
