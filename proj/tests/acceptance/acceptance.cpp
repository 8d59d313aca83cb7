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

// Acceptance runner. `themis_acceptance 3` runs one criterion; with no
// arguments every criterion runs. Prints one PASS/FAIL line per criterion and
// exits non-zero if any of the requested criteria failed.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "themis/actors/bench.hpp"
#include "themis/actors/scenario.hpp"
#include "themis/contracts/registry.hpp"
#include "themis/crypto/proofs.hpp"
#include "themis/crypto/signature.hpp"
#include "themis/dkg/dkg.hpp"
#include "themis/payments/notes.hpp"
#include "themis/vrf/vrf.hpp"

namespace {

using namespace themis;
using actors::json;
using crypto::GroupElement;
using crypto::Rng;
using crypto::Scalar;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Reference dot product, computed without the library.
unsigned __int128 reference_reward(const std::vector<std::uint64_t>& policies,
                                   const std::vector<std::uint64_t>& counts) {
  unsigned __int128 acc = 0;
  for (std::size_t i = 0; i < policies.size(); ++i) acc += static_cast<unsigned __int128>(policies[i]) * counts[i];
  return acc;
}

std::uint64_t u64(const json& j, const char* key) { return j.at(key).get<std::uint64_t>(); }

// ---------------------------------------------------------------------------

Outcome correctness() {
  Rng rng("acceptance/correctness");
  const auto start = Clock::now();
  std::size_t campaigns = 0, users = 0, mismatches = 0, not_ok = 0;
  std::string first_problem;
  for (int t = 0; t < 100; ++t) {
    auto s = actors::random_scenario(rng);
    auto rep = actors::run_scenario(s);
    ++campaigns;
    if (!rep.ok) {
      ++not_ok;
      if (first_problem.empty()) first_problem = "campaign " + std::to_string(t) + ": " + rep.failures.front();
    }
    const auto& res = rep.report["results"][0]["users"];
    for (std::size_t u = 0; u < s.users.size(); ++u) {
      ++users;
      const auto want = reference_reward(s.plan.policies, s.users[u].counts);
      const auto& got = res.at(u);
      if (u64(got, "redeemed") != want || u64(got, "paid") != want || u64(got, "dec_result") != want) {
        ++mismatches;
        if (first_problem.empty()) first_problem = "campaign " + std::to_string(t) + " user " + std::to_string(u);
      }
    }
  }
  const double elapsed = since(start);
  Outcome o;
  o.pass = mismatches == 0 && not_ok == 0 && elapsed < 600.0;
  o.detail = std::to_string(campaigns) + " campaigns, " + std::to_string(users) + " users, " +
             std::to_string(mismatches) + " payout mismatches, " + std::to_string(not_ok) + " failed runs, " +
             fmt("%.1f s of 600 s budget", elapsed);
  if (!first_problem.empty()) o.detail += "; first: " + first_problem;
  return o;
}

Outcome conservation() {
  Rng rng("acceptance/conservation");
  std::size_t campaigns = 0, violations = 0;
  std::string first;
  for (int t = 0; t < 100; ++t) {
    auto s = actors::random_scenario(rng);
    s.verify_replay = false;
    auto rep = actors::run_scenario(s);
    ++campaigns;
    const auto& r = rep.report["results"][0];
    // Deposits from the plan, payouts and refunds from the per-actor outcomes.
    std::uint64_t deposits = 0;
    for (const auto& adv : s.plan.catalog.advertisers()) deposits += s.plan.required_deposit(adv);
    std::uint64_t payouts = 0, refunds = 0;
    for (const auto& u : r["users"]) payouts += u64(u, "redeemed");
    for (const auto& a : r["advertisers"]) refunds += u64(a, "refund");
    const std::uint64_t fee = u64(r["totals"], "fee_paid");
    const bool ok = deposits == u64(r["totals"], "deposits") && deposits == payouts + refunds + fee &&
                    fee == s.plan.fee && u64(r["totals"], "fee_returned") == 0;
    if (!ok) {
      ++violations;
      if (first.empty()) {
        first = "campaign " + std::to_string(t) + ": deposits " + std::to_string(deposits) + " payouts " +
                std::to_string(payouts) + " refunds " + std::to_string(refunds) + " fee " + std::to_string(fee);
      }
    }
  }
  Outcome o{violations == 0, std::to_string(campaigns) + " honest campaigns, " + std::to_string(violations) +
                                 " with deposits != payouts + refunds + fee"};
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

std::vector<std::vector<std::uint32_t>> subsets_of_size(std::uint32_t n, std::uint32_t size) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::uint32_t>(__builtin_popcount(mask)) != size) continue;
    std::vector<std::uint32_t> ids;
    for (std::uint32_t b = 0; b < n; ++b) {
      if (mask & (1u << b)) ids.push_back(b + 1);
    }
    out.push_back(ids);
  }
  return out;
}

Outcome analytics() {
  Rng rng("acceptance/analytics");
  std::size_t good_subsets = 0, short_subsets = 0, failures = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    ++failures;
    if (first.empty()) first = what;
  };
  for (std::uint32_t n = 1; n <= 7; ++n) {
    actors::CampaignPlan plan;
    const std::size_t n_ads = 12;
    for (std::size_t i = 0; i < n_ads; ++i) {
      plan.catalog.entries.push_back({"ad-" + std::to_string(i), "adv-" + std::to_string(i % 3), 2000});
      plan.policies.push_back(rng.range(1, 200));
    }
    plan.fee = 9;
    plan.pool.registrants = n;
    plan.pool.expected_participants = n;
    std::vector<actors::InteractionVector> users(10);
    std::vector<std::uint64_t> brute(n_ads, 0);
    for (auto& u : users) {
      u = actors::bench_interactions(n_ads, rng, 0.5, 255);
      for (std::size_t i = 0; i < n_ads; ++i) brute[i] += u.counts[i];
    }

    for (int variant = 0; variant < 2; ++variant) {
      const std::uint64_t seed = 1000 + n * 10 + variant;
      ledger::Ledger ledger(actors::Campaign::genesis_for(plan, seed), contracts::default_registry());
      actors::Campaign c(ledger, plan, users, seed);
      c.phase1_setup();
      c.pool_selection();
      const auto cfg = c.psc().pool_config();
      if (cfg.n != n) {
        fail("pool of " + std::to_string(cfg.n) + " members, wanted " + std::to_string(n));
        break;
      }
      c.claims();
      c.end_epoch();

      if (variant == 0) {
        // Every k-subset recovers the totals; every (k-1)-subset is refused.
        const auto sums = actors::sum_enc_vec_prime(c.psc().enc_vec_prime_log(), n_ads);
        const auto& commitments = c.psc().share_commitments();
        const std::uint64_t bound = users.size() * plan.interaction_cap;
        auto partials_for = [&](const std::vector<std::uint32_t>& ids, std::size_t i) {
          std::vector<dkg::PartialDecryption> parts;
          for (auto id : ids) {
            auto it = std::find_if(c.pool().begin(), c.pool().end(), [&](const auto& m) { return m.id == id; });
            parts.push_back(dkg::partial_decrypt(id, it->material->share, sums[i]));
          }
          return parts;
        };
        for (const auto& ids : subsets_of_size(n, cfg.k)) {
          ++good_subsets;
          for (std::size_t i = 0; i < n_ads; ++i) {
            auto parts = partials_for(ids, i);
            auto m = crypto::recover_plaintext(dkg::combine_partials(cfg, sums[i], parts, commitments), bound);
            if (m != brute[i]) {
              fail("n=" + std::to_string(n) + " ad " + std::to_string(i) + " recovered " + std::to_string(m));
              break;
            }
          }
        }
        for (const auto& ids : subsets_of_size(n, cfg.k - 1)) {
          ++short_subsets;
          auto parts = partials_for(ids, 0);
          try {
            dkg::combine_partials(cfg, sums[0], parts, commitments);
            fail("n=" + std::to_string(n) + ": " + std::to_string(ids.size()) + " partials combined");
          } catch (const Error& e) {
            if (e.code() != Errc::kInsufficientShares) fail(std::string("unexpected error ") + e.what());
          }
        }
        // On the ledger with a random k-subset of posters.
        std::vector<std::uint32_t> all(n);
        for (std::uint32_t i = 0; i < n; ++i) all[i] = i + 1;
        for (std::uint32_t i = n; i > 1; --i) std::swap(all[i - 1], all[rng.uniform(i)]);
        all.resize(cfg.k);
        std::sort(all.begin(), all.end());
        c.set_analytics_posters(all);
        if (c.analytics_round() != brute) fail("n=" + std::to_string(n) + ": on-ledger totals differ");
      } else {
        // On the ledger with only k-1 posters.
        std::vector<std::uint32_t> ids;
        for (std::uint32_t i = 1; i < cfg.k; ++i) ids.push_back(i);
        c.set_analytics_posters(ids);
        try {
          c.analytics_round();
          fail("n=" + std::to_string(n) + ": k-1 posters produced totals");
        } catch (const Error& e) {
          if (e.code() != Errc::kInsufficientShares) fail(std::string("unexpected error ") + e.what());
        }
      }
    }
  }
  Outcome o{failures == 0, "pools n=1..7: " + std::to_string(good_subsets) + " k-subsets recovered exact totals, " +
                               std::to_string(short_subsets) + " (k-1)-subsets refused, " +
                               std::to_string(failures) + " failures"};
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

Outcome misbehavior() {
  Rng rng("acceptance/misbehavior");
  // Detection does not depend on scale, so these campaigns are kept small.
  actors::RandomScenarioOptions opts;
  opts.min_ads = 8;
  opts.max_ads = 48;
  opts.min_users = 5;
  opts.max_users = 25;
  std::size_t false_neg_under = 0, false_neg_over = 0, false_pos = 0, not_ok = 0;
  for (auto kind : {actors::Injection::kUnderpay, actors::Injection::kOverwithdraw, actors::Injection::kNone}) {
    for (int t = 0; t < 100; ++t) {
      auto s = actors::random_scenario(rng, opts);
      s.verify_replay = false;
      if (kind != actors::Injection::kNone) actors::inject(s, kind, rng);
      auto rep = actors::run_scenario(s);
      if (!rep.ok) ++not_ok;
      const bool flagged = rep.report["results"][0]["flags"]["cf_flagged_dishonest"].get<bool>();
      if (kind == actors::Injection::kUnderpay && !flagged) ++false_neg_under;
      if (kind == actors::Injection::kOverwithdraw && !flagged) ++false_neg_over;
      if (kind == actors::Injection::kNone && flagged) ++false_pos;
    }
  }
  return {false_neg_under + false_neg_over + false_pos + not_ok == 0,
          "100 underpay: " + std::to_string(100 - false_neg_under) + " flagged; 100 over-withdraw: " +
              std::to_string(100 - false_neg_over) + " flagged; 100 honest: " + std::to_string(false_pos) +
              " flagged; " + std::to_string(not_ok) + " runs failed other checks"};
}

// ---------------------------------------------------------------------------
// Mutation suite.

template <typename F>
bool rejected(F&& verify) {
  try {
    return !verify();
  } catch (const Error&) {
    return true;
  }
}

template <typename Container>
Container flip_bit(Container bytes, std::size_t bit) {
  bytes[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
  return bytes;
}

struct MutationTally {
  std::size_t tried = 0;
  std::size_t rejected = 0;
  std::string first_accepted;
  void add(bool was_rejected, const std::string& label) {
    ++tried;
    if (was_rejected) {
      ++rejected;
    } else if (first_accepted.empty()) {
      first_accepted = label;
    }
  }
};

Outcome mutations() {
  Rng rng("acceptance/mutations");
  const GroupElement g = GroupElement::generator();
  std::map<std::string, MutationTally> tally;

  // Decryption proofs.
  for (int inst = 0; inst < 8; ++inst) {
    auto kp = crypto::keygen(rng);
    const std::uint64_t m = rng.range(0, 1 << 20);
    auto c = crypto::encrypt(kp.pk, m, rng.scalar());
    auto proof = crypto::prove_decryption(kp.sk, c, m);
    auto& t = tally["decryption_proof"];
    if (!crypto::verify_decryption(kp.pk, c, m, proof)) t.add(false, "honest proof failed");
    auto bytes = proof.to_bytes();
    for (int k = 0; k < 12; ++k) {
      const std::size_t bit = rng.uniform(bytes.size() * 8);
      auto mutated = flip_bit(bytes, bit);
      t.add(rejected([&] { return crypto::verify_decryption(kp.pk, c, m, crypto::DleqProof::from_bytes(mutated)); }),
            "bit " + std::to_string(bit));
    }
    auto p = proof;
    p.commitment_a += g;
    t.add(rejected([&] { return crypto::verify_decryption(kp.pk, c, m, p); }), "commitment_a");
    p = proof;
    p.commitment_b += g;
    t.add(rejected([&] { return crypto::verify_decryption(kp.pk, c, m, p); }), "commitment_b");
    p = proof;
    p.challenge += Scalar::one();
    t.add(rejected([&] { return crypto::verify_decryption(kp.pk, c, m, p); }), "challenge");
    p = proof;
    p.response += Scalar::one();
    t.add(rejected([&] { return crypto::verify_decryption(kp.pk, c, m, p); }), "response");
    t.add(rejected([&] { return crypto::verify_decryption(kp.pk, c, m + 1, proof); }), "claimed plaintext");
    crypto::Ciphertext c1{c.c1 + g, c.c2};
    t.add(rejected([&] { return crypto::verify_decryption(kp.pk, c1, m, proof); }), "c1");
    crypto::Ciphertext c2{c.c1, c.c2 + g};
    t.add(rejected([&] { return crypto::verify_decryption(kp.pk, c2, m, proof); }), "c2");
    t.add(rejected([&] { return crypto::verify_decryption(kp.pk + g, c, m, proof); }), "public key");
  }

  // VRF outputs.
  for (int inst = 0; inst < 8; ++inst) {
    auto kp = crypto::keygen(rng);
    auto eps = rng.bytes(32);
    auto out = vrf::vrf_rand_gen(kp.sk, eps);
    auto& t = tally["vrf_output"];
    if (!vrf::vrf_verify(kp.pk, eps, out)) t.add(false, "honest output failed");
    auto bytes = out.to_bytes();
    for (int k = 0; k < 12; ++k) {
      const std::size_t bit = rng.uniform(bytes.size() * 8);
      auto mutated = flip_bit(bytes, bit);
      t.add(rejected([&] { return vrf::vrf_verify(kp.pk, eps, vrf::VrfOutput::from_bytes(mutated)); }),
            "bit " + std::to_string(bit));
    }
    auto m = out;
    m.rand += 1;
    t.add(rejected([&] { return vrf::vrf_verify(kp.pk, eps, m); }), "rand");
    m = out;
    m.gamma += g;
    t.add(rejected([&] { return vrf::vrf_verify(kp.pk, eps, m); }), "gamma");
    m = out;
    m.proof.challenge += Scalar::one();
    t.add(rejected([&] { return vrf::vrf_verify(kp.pk, eps, m); }), "challenge");
    m = out;
    m.proof.response += Scalar::one();
    t.add(rejected([&] { return vrf::vrf_verify(kp.pk, eps, m); }), "response");
    auto eps2 = flip_bit(eps, rng.uniform(eps.size() * 8));
    t.add(rejected([&] { return vrf::vrf_verify(kp.pk, eps2, out); }), "epsilon");
    t.add(rejected([&] { return vrf::vrf_verify(kp.pk + g, eps, out); }), "public key");
  }

  // Partial decryptions.
  {
    dkg::ThresholdConfig cfg{5, 3};
    std::vector<crypto::KeyPair> keys;
    for (int i = 0; i < 5; ++i) keys.push_back(crypto::keygen(rng));
    auto dk = dkg::run_dkg(cfg, keys, rng);
    for (int inst = 0; inst < 8; ++inst) {
      auto c = crypto::encrypt(dk.pk_t, rng.range(0, 5000), rng.scalar());
      const std::uint32_t id = static_cast<std::uint32_t>(rng.range(1, 5));
      const auto& commit = dk.share_commitments[id - 1];
      auto part = dkg::partial_decrypt(id, dk.materials[id - 1].share, c);
      auto& t = tally["partial_decryption"];
      if (!dkg::verify_partial(c, part, commit)) t.add(false, "honest partial failed");
      auto bytes = part.to_bytes();
      for (int k = 0; k < 12; ++k) {
        const std::size_t bit = rng.uniform(bytes.size() * 8);
        auto mutated = flip_bit(bytes, bit);
        t.add(rejected([&] {
                auto p = dkg::PartialDecryption::from_bytes(mutated);
                return p.participant_id == id && dkg::verify_partial(c, p, commit);
              }),
              "bit " + std::to_string(bit));
      }
      auto p = part;
      p.d += g;
      t.add(rejected([&] { return dkg::verify_partial(c, p, commit); }), "d");
      p = part;
      p.proof.challenge += Scalar::one();
      t.add(rejected([&] { return dkg::verify_partial(c, p, commit); }), "challenge");
      p = part;
      p.proof.response += Scalar::one();
      t.add(rejected([&] { return dkg::verify_partial(c, p, commit); }), "response");
      p = part;
      p.participant_id = id % 5 + 1;
      t.add(rejected([&] { return dkg::verify_partial(c, p, dk.share_commitments[p.participant_id - 1]); }),
            "participant id");
      crypto::Ciphertext c1{c.c1 + g, c.c2};
      t.add(rejected([&] { return dkg::verify_partial(c1, part, commit); }), "ciphertext");
      // A mutated partial among k valid-looking ones is refused at combination.
      std::vector<dkg::PartialDecryption> parts;
      for (std::uint32_t j = 1; j <= 3; ++j) parts.push_back(dkg::partial_decrypt(j, dk.materials[j - 1].share, c));
      parts[rng.uniform(3)].d += g;
      t.add(rejected([&] {
              dkg::combine_partials(cfg, c, parts, dk.share_commitments);
              return true;
            }),
            "combined");
    }
  }

  // Signatures.
  for (int inst = 0; inst < 8; ++inst) {
    auto kp = crypto::keygen(rng);
    auto msg = rng.bytes(48);
    auto sig = crypto::sign(kp.sk, msg);
    auto& t = tally["signature"];
    if (!crypto::verify_sig(kp.pk, msg, sig)) t.add(false, "honest signature failed");
    auto bytes = sig.to_bytes();
    for (int k = 0; k < 12; ++k) {
      const std::size_t bit = rng.uniform(bytes.size() * 8);
      auto mutated = flip_bit(bytes, bit);
      t.add(rejected([&] { return crypto::verify_sig(kp.pk, msg, crypto::Signature::from_bytes(mutated)); }),
            "bit " + std::to_string(bit));
    }
    auto s = sig;
    s.challenge += Scalar::one();
    t.add(rejected([&] { return crypto::verify_sig(kp.pk, msg, s); }), "challenge");
    s = sig;
    s.response += Scalar::one();
    t.add(rejected([&] { return crypto::verify_sig(kp.pk, msg, s); }), "response");
    s = sig;
    s.signer_pk += g;
    t.add(rejected([&] { return crypto::verify_sig(kp.pk, msg, s); }), "signer_pk");
    auto msg2 = flip_bit(msg, rng.uniform(msg.size() * 8));
    t.add(rejected([&] { return crypto::verify_sig(kp.pk, msg2, sig); }), "message");
    t.add(rejected([&] { return crypto::verify_sig(kp.pk + g, msg, sig); }), "expected key");
  }

  // Batch settlement proofs.
  for (int inst = 0; inst < 8; ++inst) {
    const std::size_t n = rng.range(2, 6);
    std::vector<payments::NoteWithOpening> notes;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto r = rng.scalar();
      const std::uint64_t amount = rng.range(0, 10000);
      notes.push_back({payments::make_note(ledger::Address::from_pk(crypto::keygen(rng).pk), amount, r), {r, amount}});
      total += amount;
    }
    auto batch = payments::settle_batch(notes, total);
    auto& t = tally["batch_proof"];
    if (!payments::verify_batch(batch)) t.add(false, "honest batch failed");
    auto bytes = batch.to_bytes();
    for (int k = 0; k < 12; ++k) {
      const std::size_t bit = rng.uniform(bytes.size() * 8);
      auto mutated = flip_bit(bytes, bit);
      t.add(rejected([&] { return payments::verify_batch(payments::SettlementBatch::from_bytes(mutated)); }),
            "bit " + std::to_string(bit));
    }
    auto b = batch;
    b.total += 1;
    t.add(rejected([&] { return payments::verify_batch(b); }), "total");
    b = batch;
    b.proof.blinding_sum += Scalar::one();
    t.add(rejected([&] { return payments::verify_batch(b); }), "blinding_sum");
    b = batch;
    b.proof.challenge += Scalar::one();
    t.add(rejected([&] { return payments::verify_batch(b); }), "challenge");
    b = batch;
    b.notes[rng.uniform(n)].commitment += g;
    t.add(rejected([&] { return payments::verify_batch(b); }), "commitment");
    b = batch;
    b.notes[rng.uniform(n)].recipient.id[0] ^= 1;
    t.add(rejected([&] { return payments::verify_batch(b); }), "recipient");
    b = batch;
    b.notes[rng.uniform(n)].range_tag += 1;
    t.add(rejected([&] { return payments::verify_batch(b); }), "range_tag");
    b = batch;
    b.notes[rng.uniform(n)].tx_ref[0] ^= 1;
    t.add(rejected([&] { return payments::verify_batch(b); }), "tx_ref");
    b = batch;
    b.notes.pop_back();
    t.add(rejected([&] { return payments::verify_batch(b); }), "dropped note");
  }

  std::size_t tried = 0, rej = 0;
  std::string detail, first;
  for (const auto& [name, t] : tally) {
    tried += t.tried;
    rej += t.rejected;
    detail += name + " " + std::to_string(t.rejected) + "/" + std::to_string(t.tried) + ", ";
    if (first.empty() && !t.first_accepted.empty()) first = name + " " + t.first_accepted;
  }
  Outcome o{tried >= 500 && rej == tried,
            std::to_string(rej) + "/" + std::to_string(tried) + " mutations rejected (" +
                detail.substr(0, detail.size() - 2) + ")"};
  if (!first.empty()) o.detail += "; accepted: " + first;
  return o;
}

// ---------------------------------------------------------------------------
// Performance shapes.

Outcome client_shape() {
  auto b = actors::bench_client({64, 128, 256}, 10, 6);
  const auto& r256 = b.rows.back();
  const bool ceilings = r256.interaction_encryption_s < 1.0 && r256.request_generation_s < 5.0;
  const bool linear = b.encryption_fit.r2 >= 0.95 && b.request_fit.r2 >= 0.95;
  std::string detail;
  for (const auto& r : b.rows) {
    detail += std::to_string(r.catalog_size) + " ads: enc " + fmt("%.4f s", r.interaction_encryption_s) +
              ", request " + fmt("%.4f s", r.request_generation_s) + "; ";
  }
  detail += "R2 enc " + fmt("%.3f", b.encryption_fit.r2) + ", R2 request " + fmt("%.3f", b.request_fit.r2) +
            " (need >= 0.95; ceilings 1 s / 5 s " + (ceilings ? "met" : "missed") + ")";
  return {ceilings && linear, detail};
}

Outcome settlement_shape() {
  auto b = actors::bench_settlement({80, 800}, 7, 7);
  const auto& lo = b.rows.front();
  const auto& hi = b.rows.back();
  const double verify_ratio = hi.batch_verify_s / lo.batch_verify_s;
  const double gen_ratio = hi.batch_proof_gen_s / lo.batch_proof_gen_s;
  return {verify_ratio <= 3.0 && gen_ratio >= 5.0,
          "verify 80: " + fmt("%.5f s", lo.batch_verify_s) + ", 800: " + fmt("%.5f s", hi.batch_verify_s) +
              ", ratio " + fmt("%.2f", verify_ratio) + " (need <= 3); gen ratio " + fmt("%.2f", gen_ratio) +
              " (need >= 5)"};
}

Outcome concurrency_shape() {
  auto b = actors::bench_concurrent({10, 100}, 256, {}, 3, 0, 8);
  const double t10 = b.cohorts.front().end_to_end_claim_s;
  const double t100 = b.cohorts.back().end_to_end_claim_s;
  return {t100 <= 2.0 * t10,
          "catalog 256: 10-user cohort " + fmt("%.2f s", t10) + ", 100-user cohort " + fmt("%.2f s", t100) +
              ", ratio " + fmt("%.2f", t100 / t10) + " (need <= 2); hardware threads " +
              std::to_string(b.hardware_threads)};
}

Outcome sidechain_shape() {
  auto b = actors::bench_concurrent({}, 256, {1, 3}, 1, 20.0, 9);
  const auto& one = b.chains.front();
  const auto& three = b.chains.back();
  const double ratio = three.users_per_second / one.users_per_second;
  return {ratio >= 2.5,
          "1 chain " + fmt("%.2f users/s", one.users_per_second) + ", 3 chains " +
              fmt("%.2f users/s", three.users_per_second) + ", ratio " + fmt("%.2f", ratio) +
              " (need >= 2.5 on >= 4 cores); hardware threads " + std::to_string(b.hardware_threads)};
}

Outcome determinism() {
  Rng rng("acceptance/determinism");
  std::size_t checks = 0, diffs = 0;
  for (int t = 0; t < 3; ++t) {
    actors::RandomScenarioOptions opts;
    opts.max_ads = 64;
    opts.max_users = 30;
    auto s = actors::random_scenario(rng, opts);
    s.chains = 2;
    if (t == 1) actors::inject(s, actors::Injection::kUnderpay, rng);
    if (t == 2) actors::inject(s, actors::Injection::kOverwithdraw, rng);
    auto a = actors::strip_timing(actors::run_scenario(s).report).dump();
    auto b = actors::strip_timing(actors::run_scenario(s).report).dump();
    ++checks;
    if (a != b) ++diffs;

    // Ledger state and transaction log, byte for byte.
    auto run = [&] {
      ledger::Ledger ledger(actors::Campaign::genesis_for(s.plan, s.seed), contracts::default_registry());
      actors::Campaign c(ledger, s.plan, s.users, s.seed, s.misbehavior);
      c.run();
      std::ostringstream log;
      ledger.write_tx_log(log);
      return ledger.state_json().dump() + "\n" + log.str();
    };
    ++checks;
    if (run() != run()) ++diffs;
  }
  return {diffs == 0, std::to_string(checks) + " paired runs (reports and ledger state + tx log), " +
                          std::to_string(diffs) + " differ"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "correctness", correctness},         {2, "conservation", conservation},
      {3, "analytics", analytics},             {4, "misbehavior-detection", misbehavior},
      {5, "proof-mutations", mutations},       {6, "client-shape", client_shape},
      {7, "settlement-shape", settlement_shape}, {8, "concurrency-shape", concurrency_shape},
      {9, "sidechain-scaling", sidechain_shape}, {10, "determinism", determinism},
  };

  CLI::App app{"THEMIS acceptance criteria"};
  std::vector<int> selected;
  app.add_option("criteria", selected, "Criterion numbers (default: all)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  std::set<int> want(selected.begin(), selected.end());

  bool ok = true;
  for (const auto& c : all) {
    if (!want.empty() && !want.count(c.id)) continue;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    ok = ok && o.pass;
    std::cout << "criterion " << c.id << " " << c.name << ": " << (o.pass ? "PASS" : "FAIL") << " | " << o.detail
              << " [" << fmt("%.1f s", since(start)) << "]" << std::endl;
  }
  return ok ? 0 : 1;
}
