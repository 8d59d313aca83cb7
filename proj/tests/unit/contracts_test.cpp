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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support/fixtures.hpp"
#include "themis/contracts/messages.hpp"

namespace themis::contracts {
namespace {

using actors::Campaign;
using actors::InteractionVector;
using crypto::Rng;
using themis::testing::CampaignHarness;
using themis::testing::make_plan;
using themis::testing::to_users;

// A campaign after setup and pool selection, ready for direct calls.
struct LiveCampaign : CampaignHarness {
  LiveCampaign(const actors::CampaignPlan& plan, std::vector<InteractionVector> users, std::uint64_t seed,
               actors::Misbehavior mis = {})
      : CampaignHarness(plan, std::move(users), seed, std::move(mis)) {
    campaign.phase1_setup();
    campaign.pool_selection();
  }
  const actors::ContractIds& ids() { return campaign.ids(); }
  const PolicyContract& psc() { return campaign.psc(); }
  const FundContract& fsc() { return campaign.fsc(); }
};

Errc error_of(const ledger::Receipt& r) {
  EXPECT_FALSE(r.success);
  return r.error.value_or(Errc::kInvalidState);
}

std::vector<std::uint64_t> random_vector(Rng& rng, std::size_t n, std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = rng.range(lo, hi);
  return v;
}

// The validator-computed aggregate decrypts to the plaintext dot product.
void check_dot_products(std::size_t n_ads, int cases, std::uint64_t seed) {
  Rng rng("dot/" + std::to_string(n_ads));
  auto plan = make_plan(random_vector(rng, n_ads, 1, 256), 3 < n_ads ? 3 : 1, 1000, 0);
  LiveCampaign live(plan, {}, seed);
  auto pk_t = *live.psc().pool_key();
  for (int c = 0; c < cases; ++c) {
    actors::UserSession s;
    s.ephemeral = crypto::keygen(rng);
    s.interactions.counts = random_vector(rng, n_ads, 0, 256);
    if (c == 0) std::fill(s.interactions.counts.begin(), s.interactions.counts.end(), 0);
    auto v = actors::encrypt_interactions(s, pk_t, 256, rng);
    live.ledger.execute(s.ephemeral, calls::compute_aggregate(live.ids().psc, s.ephemeral.pk, v.enc_vec, v.enc_vec_prime))
        .expect_ok();
    const auto* rec = live.psc().aggregate(s.ephemeral.pk);
    ASSERT_NE(rec, nullptr);
    std::uint64_t oracle = 0;
    for (std::size_t i = 0; i < n_ads; ++i) oracle += plan.policies[i] * s.interactions.counts[i];
    auto elem = crypto::decrypt_to_element(s.ephemeral.sk, rec->aggregate);
    EXPECT_EQ(elem, crypto::GroupElement::base_mul(oracle)) << "case " << c;
  }
}

TEST(PolicyContractTest, AggregateIsDotProduct8) { check_dot_products(8, 100, 1); }
TEST(PolicyContractTest, AggregateIsDotProduct64) { check_dot_products(64, 100, 2); }
TEST(PolicyContractTest, AggregateIsDotProduct256) { check_dot_products(256, 100, 3); }

TEST(PolicyContractTest, StorageGuards) {
  auto plan = make_plan({4, 20, 12}, 1, 10, 0);
  LiveCampaign live(plan, to_users({{3, 0, 2}}), 31);
  auto& cf = live.campaign.cf().key();
  auto& adv = live.campaign.advertisers()[0].key();
  Bytes junk{1, 2, 3};
  EXPECT_EQ(error_of(live.ledger.execute(adv, calls::store_policy(live.ids().psc, 0, junk))), Errc::kUnauthorized);
  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::store_policy(live.ids().psc, 0, junk))),
            Errc::kAlreadyInitialized);
  auto keys = live.psc().enc_keys();
  auto sig = crypto::sign(cf.sk, encrypted_keys_message(live.ids().psc, keys));
  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::store_encrypted_keys(live.ids().psc, keys, sig))),
            Errc::kAlreadyInitialized);
}

TEST(PolicyContractTest, SetupErrors) {
  // A tampered entry stops setup after the catalog is stored but before funding.
  auto plan = make_plan({4, 20, 12}, 1, 10, 0);
  actors::Misbehavior mis;
  mis.tamper_policy = 2;
  CampaignHarness h(plan, to_users({{3, 0, 2}}), 32, mis);
  EXPECT_THROW(h.campaign.phase1_setup(), Error);
  auto& cf = h.campaign.cf().key();
  const auto& psc_id = h.campaign.ids().psc;
  EXPECT_EQ(error_of(h.ledger.execute(cf, calls::store_policy(psc_id, 3, Bytes{1}))), Errc::kIndexOutOfRange);

  auto keys = h.campaign.psc().enc_keys();
  Rng rng("setup-errors");
  auto other = crypto::keygen(rng);
  EXPECT_EQ(error_of(h.ledger.execute(cf, calls::store_encrypted_keys(
                                               psc_id, keys, crypto::sign(other.sk, encrypted_keys_message(psc_id, keys))))),
            Errc::kBadSignature);
  keys.pop_back();
  EXPECT_EQ(error_of(h.ledger.execute(
                cf, calls::store_encrypted_keys(psc_id, keys, crypto::sign(cf.sk, encrypted_keys_message(psc_id, keys))))),
            Errc::kLengthMismatch);

  // Before funding completes nobody can claim.
  actors::UserSession s;
  s.ephemeral = crypto::keygen(rng);
  std::vector<crypto::Ciphertext> three(3);
  EXPECT_EQ(error_of(h.ledger.execute(s.ephemeral, calls::compute_aggregate(psc_id, s.ephemeral.pk, three, three))),
            Errc::kNotInitialized);

  // FSC-side setup errors.
  const auto& fsc_id = h.campaign.ids().fsc;
  auto& adv = h.campaign.advertisers()[0];
  EXPECT_EQ(error_of(h.ledger.execute(cf, calls::store_adv_id(fsc_id, adv.id()))), Errc::kDuplicateAdvertiser);
  EXPECT_EQ(error_of(h.ledger.execute(adv.key(), calls::store_adv_id(fsc_id, "x"))), Errc::kUnauthorized);
  EXPECT_EQ(error_of(h.ledger.execute(adv.key(), calls::store_funds(fsc_id, "nobody", 1))), Errc::kUnknownAdvertiser);
  // The stored entry was raised by one, so the agreed deposit is short by the impressions.
  EXPECT_EQ(error_of(h.ledger.execute(adv.key(), calls::store_funds(fsc_id, adv.id(), plan.required_deposit(adv.id())))),
            Errc::kInsufficientFunds);
}

TEST(PolicyContractTest, AggregateGuards) {
  auto plan = make_plan({4, 20, 12}, 1, 10, 0);
  LiveCampaign live(plan, to_users({{3, 0, 2}}), 33);
  Rng rng("aggregate-guards");
  auto pk_t = *live.psc().pool_key();
  actors::UserSession s;
  s.ephemeral = crypto::keygen(rng);
  s.interactions.counts = {3, 0, 2};
  auto v = actors::encrypt_interactions(s, pk_t, 256, rng);
  auto other = crypto::keygen(rng);
  EXPECT_EQ(error_of(live.ledger.execute(other, calls::compute_aggregate(live.ids().psc, s.ephemeral.pk, v.enc_vec,
                                                                          v.enc_vec_prime))),
            Errc::kUnauthorized);
  live.ledger.execute(s.ephemeral, calls::compute_aggregate(live.ids().psc, s.ephemeral.pk, v.enc_vec, v.enc_vec_prime))
      .expect_ok();
  EXPECT_EQ(error_of(live.ledger.execute(s.ephemeral, calls::compute_aggregate(live.ids().psc, s.ephemeral.pk,
                                                                                v.enc_vec, v.enc_vec_prime))),
            Errc::kInvalidState);
  EXPECT_EQ(live.psc().enc_vec_prime_log().size(), 1u);

  live.campaign.end_epoch();
  auto late = crypto::keygen(rng);
  EXPECT_EQ(error_of(live.ledger.execute(late, calls::compute_aggregate(live.ids().psc, late.pk, v.enc_vec,
                                                                         v.enc_vec_prime))),
            Errc::kInvalidState);
}

TEST(PolicyContractTest, PaymentRequestChecks) {
  auto plan = make_plan({4, 20, 12}, 1, 10, 0);
  LiveCampaign live(plan, to_users({{3, 0, 2}}), 34);
  Rng rng("payment-request");
  auto& s = live.campaign.sessions()[0];
  const auto& psc_id = live.ids().psc;
  auto submit = [&](const PaymentRequestTuple& t) {
    return live.ledger.execute_private(crypto::keygen(rng), calls::payment_request(psc_id),
                                       live.ledger.seal_private_inputs(t.to_bytes(), rng));
  };

  actors::user_claim(live.ledger, live.ids(), s, 256, rng);
  auto t = actors::build_payment_request(s, 256);
  EXPECT_EQ(t.dec_result, 36u);

  auto unknown = t;
  unknown.user_pk = crypto::keygen(rng).pk;
  EXPECT_EQ(error_of(submit(unknown)), Errc::kNotFound);
  auto forged = t;
  forged.sign_reward = crypto::sign(crypto::keygen(rng).sk, aggregate_message(psc_id, t.user_pk, s.aggregate->aggregate));
  EXPECT_EQ(error_of(submit(forged)), Errc::kBadSignature);
  auto wrong_proof = t;
  wrong_proof.proof = crypto::prove_decryption(s.ephemeral.sk, s.aggregate->aggregate, 35);
  EXPECT_EQ(error_of(submit(wrong_proof)), Errc::kProofRejected);

  // Public arguments must be empty and the envelope is required.
  EXPECT_EQ(error_of(live.ledger.execute(crypto::keygen(rng), calls::payment_request(psc_id))), Errc::kNotPrivate);

  auto env = live.ledger.seal_private_inputs(t.to_bytes(), rng);
  auto submitter = crypto::keygen(rng);
  live.ledger.execute_private(submitter, calls::payment_request(psc_id), env).expect_ok();
  EXPECT_EQ(error_of(live.ledger.execute_private(submitter, calls::payment_request(psc_id), env)),
            Errc::kDuplicateAddress);
  auto pending = live.campaign.cf().pending_requests(live.fsc());
  ASSERT_EQ(pending.size(), 1u);
  EXPECT_EQ(pending[0].second, 36u);
}

TEST(PolicyContractTest, PoolDrawGuards) {
  auto plan = make_plan({4, 20, 12}, 1, 10, 0);
  plan.pool.registrants = 12;
  plan.pool.expected_participants = 2;
  CampaignHarness h(plan, to_users({{1, 1, 1}}), 35);
  h.campaign.phase1_setup();
  const auto& psc_id = h.campaign.ids().psc;
  auto& pool = h.campaign.pool();
  h.ledger.execute(pool[0].key, calls::register_candidate(psc_id)).expect_ok();
  EXPECT_EQ(error_of(h.ledger.execute(pool[0].key, calls::register_candidate(psc_id))), Errc::kDuplicateAddress);
  for (std::size_t i = 1; i < pool.size(); ++i) h.ledger.execute(pool[i].key, calls::register_candidate(psc_id)).expect_ok();
  EXPECT_EQ(error_of(h.ledger.execute(h.campaign.cf().key(), calls::close_registration(psc_id))), Errc::kInvalidState);
  h.ledger.advance_blocks(h.campaign.psc().params().pool.registration_end - h.ledger.block_height()).expect_ok();
  Rng rng("late");
  EXPECT_EQ(error_of(h.ledger.execute(crypto::keygen(rng), calls::register_candidate(psc_id))),
            Errc::kRegistrationClosed);
  h.ledger.execute(h.campaign.cf().key(), calls::close_registration(psc_id)).expect_ok();

  // Contract objects are replaced when a transaction reverts, so state is
  // read through fresh lookups.
  auto cfg = h.campaign.psc().draw_config();
  int rejected = 0;
  for (const auto& m : pool) {
    auto out = vrf::vrf_rand_gen(m.key.sk, cfg.epsilon);
    if (vrf::is_selected(out, cfg)) {
      auto forged = out;
      forged.rand ^= 1;
      EXPECT_EQ(error_of(h.ledger.execute(m.key, calls::publish_draw(psc_id, forged))), Errc::kProofRejected);
      h.ledger.execute(m.key, calls::publish_draw(psc_id, out)).expect_ok();
    } else {
      EXPECT_EQ(error_of(h.ledger.execute(m.key, calls::publish_draw(psc_id, out))), Errc::kNotSelected);
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0);
  auto outsider = crypto::keygen(rng);
  EXPECT_EQ(error_of(h.ledger.execute(outsider, calls::publish_draw(psc_id, vrf::vrf_rand_gen(outsider.sk, cfg.epsilon)))),
            Errc::kUnauthorized);
  EXPECT_EQ(error_of(h.ledger.execute(h.campaign.cf().key(), calls::seal_draw(psc_id))), Errc::kInvalidState);
}

TEST(PolicyContractTest, SingleRegistrantFormsOneOfOnePool) {
  auto plan = make_plan({4, 20, 12}, 1, 10, 0);
  plan.pool.registrants = 1;
  plan.pool.expected_participants = 1;
  CampaignHarness h(plan, to_users({{3, 0, 2}}), 36);
  auto r = h.campaign.run();
  EXPECT_EQ(r.pool_n, 1u);
  EXPECT_EQ(r.pool_k, 1u);
  EXPECT_EQ(r.draw_rounds, 1u);
  EXPECT_TRUE(r.payouts_match);
}

TEST(PolicyContractTest, CosignaturesNeedThreshold) {
  auto plan = make_plan({4, 20, 12}, 1, 10, 0);
  plan.pool.registrants = 5;
  plan.pool.expected_participants = 5;
  LiveCampaign live(plan, {}, 37);
  const auto& psc = live.psc();
  ASSERT_EQ(psc.pool_config().k, 3u);
  Bytes msg{9, 9};
  std::vector<crypto::Signature> sigs;
  for (auto& m : live.campaign.pool()) {
    if (m.id != 0) sigs.push_back(crypto::sign(m.key.sk, msg));
  }
  EXPECT_EQ(psc.check_cosignatures(msg, sigs).size(), 5u);
  sigs.resize(2);
  sigs.push_back(sigs[0]);  // repeats count once
  EXPECT_THROW(psc.check_cosignatures(msg, sigs), Error);
  Rng rng("outsider");
  sigs.push_back(crypto::sign(crypto::keygen(rng).sk, msg));
  EXPECT_THROW(psc.check_cosignatures(msg, sigs), Error);
}

TEST(FundContractTest, SettlementAndAnalyticsGuards) {
  auto plan = make_plan({4, 20, 12}, 1, 10, 5);
  plan.pool.registrants = 3;
  plan.pool.expected_participants = 3;
  LiveCampaign live(plan, to_users({{3, 0, 2}, {1, 1, 1}}), 38);
  live.campaign.claims();
  const auto& fsc_id = live.ids().fsc;
  auto& cf = live.campaign.cf().key();
  Rng rng("fsc-guards");

  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::settlement_request(fsc_id, 10, crypto::sign(cf.sk, Bytes{1})))),
            Errc::kBadSignature);
  payments::TxRef unknown{};
  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::payment_processed(fsc_id, unknown, live.campaign.sessions()[0].addr()))),
            Errc::kUnknownTxRef);

  auto& m1 = live.campaign.pool()[0];
  ASSERT_NE(m1.id, 0u);
  auto sums = actors::sum_enc_vec_prime(live.psc().enc_vec_prime_log(), 3);
  std::vector<dkg::PartialDecryption> parts;
  for (const auto& c : sums) parts.push_back(dkg::partial_decrypt(m1.id, m1.material->share, c));
  EXPECT_EQ(error_of(live.ledger.execute(m1.key, calls::post_partials(fsc_id, m1.id, parts))),
            Errc::kCampaignNotComplete);

  live.campaign.end_epoch();
  std::uint32_t other_id = m1.id == 1 ? 2 : 1;
  EXPECT_EQ(error_of(live.ledger.execute(m1.key, calls::post_partials(fsc_id, other_id, parts))), Errc::kUnauthorized);
  auto wrong = parts;
  wrong[1].d = wrong[1].d + crypto::GroupElement::generator();
  EXPECT_EQ(error_of(live.ledger.execute(m1.key, calls::post_partials(fsc_id, m1.id, wrong))), Errc::kInvalidPartial);
  auto short_parts = parts;
  short_parts.pop_back();
  EXPECT_EQ(error_of(live.ledger.execute(m1.key, calls::post_partials(fsc_id, m1.id, short_parts))),
            Errc::kLengthMismatch);
  live.ledger.execute(m1.key, calls::post_partials(fsc_id, m1.id, parts)).expect_ok();
  EXPECT_EQ(error_of(live.ledger.execute(m1.key, calls::post_partials(fsc_id, m1.id, parts))), Errc::kInvalidState);

  // One posted set is below k = 2.
  std::vector<std::uint64_t> truth{4, 1, 3};
  auto msg = aggr_clicks_message(fsc_id, 0, truth, true);
  std::vector<crypto::Signature> cosigs;
  for (auto& m : live.campaign.pool()) cosigs.push_back(crypto::sign(m.key.sk, msg));
  EXPECT_EQ(error_of(live.ledger.execute(m1.key, calls::store_aggr_clicks(fsc_id, truth, true, cosigs))),
            Errc::kInsufficientShares);

  auto& m2 = live.campaign.pool()[1];
  std::vector<dkg::PartialDecryption> parts2;
  for (const auto& c : sums) parts2.push_back(dkg::partial_decrypt(m2.id, m2.material->share, c));
  live.ledger.execute(m2.key, calls::post_partials(fsc_id, m2.id, parts2)).expect_ok();

  // Wrong totals are refused even with every member's signature.
  std::vector<std::uint64_t> lie{4, 1, 4};
  auto lie_msg = aggr_clicks_message(fsc_id, 0, lie, true);
  std::vector<crypto::Signature> lie_sigs;
  for (auto& m : live.campaign.pool()) lie_sigs.push_back(crypto::sign(m.key.sk, lie_msg));
  EXPECT_EQ(error_of(live.ledger.execute(m1.key, calls::store_aggr_clicks(fsc_id, lie, true, lie_sigs))),
            Errc::kProofRejected);
  // Too few signatures.
  std::vector<crypto::Signature> one{cosigs[0]};
  EXPECT_EQ(error_of(live.ledger.execute(m1.key, calls::store_aggr_clicks(fsc_id, truth, true, one))),
            Errc::kBadSignature);

  // Intermediate rounds accumulate; the final round closes.
  std::vector<std::uint64_t> part_a{3, 0, 2}, part_b{1, 1, 1};
  auto sign_all = [&](const Bytes& m) {
    std::vector<crypto::Signature> s;
    for (auto& p : live.campaign.pool()) s.push_back(crypto::sign(p.key.sk, m));
    return s;
  };
  live.ledger.execute(m1.key, calls::store_aggr_clicks(fsc_id, part_a, false, sign_all(aggr_clicks_message(fsc_id, 0, part_a, false))))
      .expect_ok();
  // Round counters bind signatures to one round.
  EXPECT_EQ(error_of(live.ledger.execute(m1.key, calls::store_aggr_clicks(fsc_id, part_b, true,
                                                                           sign_all(aggr_clicks_message(fsc_id, 0, part_b, true))))),
            Errc::kBadSignature);
  live.ledger.execute(m1.key, calls::store_aggr_clicks(fsc_id, part_b, true, sign_all(aggr_clicks_message(fsc_id, 1, part_b, true))))
      .expect_ok();
  EXPECT_EQ(live.fsc().aggr_clicks(), truth);
  EXPECT_TRUE(live.fsc().clicks_final());
  EXPECT_FALSE(live.fsc().refunded());  // payments still outstanding

  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::finalize(fsc_id))), Errc::kCampaignNotComplete);
  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::pay_processing_fees(fsc_id))), Errc::kCampaignNotComplete);
  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::claim_insufficient_refund(fsc_id, "adv-0"))),
            Errc::kCampaignNotComplete);

  live.campaign.cf_settle();
  EXPECT_TRUE(live.fsc().refunded());
  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::pay_processing_fees(fsc_id))), Errc::kCampaignNotComplete);
  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::return_fees(fsc_id))), Errc::kInvalidState);
  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::claim_insufficient_refund(fsc_id, "ghost"))),
            Errc::kUnknownAdvertiser);
  auto claim = live.ledger.execute(cf, calls::claim_insufficient_refund(fsc_id, "adv-0")).expect_ok();
  EXPECT_EQ(claim.output, Bytes{0});

  // Complaints about a correct payment are rejected; bad openings too.
  live.campaign.user_payouts();
  auto& s0 = live.campaign.sessions()[0];
  EXPECT_EQ(error_of(live.ledger.execute(s0.payout, calls::raise_complaint(fsc_id, s0.ephemeral.pk, *s0.note_ref,
                                                                            s0.opening->r, s0.opening->amount))),
            Errc::kComplaintRejected);
  EXPECT_EQ(error_of(live.ledger.execute(s0.payout, calls::raise_complaint(fsc_id, s0.ephemeral.pk, *s0.note_ref,
                                                                            s0.opening->r, s0.opening->amount - 1))),
            Errc::kBadOpening);
  auto& s1 = live.campaign.sessions()[1];
  EXPECT_EQ(error_of(live.ledger.execute(s0.payout, calls::raise_complaint(fsc_id, s1.ephemeral.pk, *s0.note_ref,
                                                                            s0.opening->r, s0.opening->amount))),
            Errc::kNoSuchRequest);
  EXPECT_FALSE(live.fsc().cf_flagged_dishonest());

  live.campaign.close();
  EXPECT_TRUE(live.fsc().fees_paid());
  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::pay_processing_fees(fsc_id))), Errc::kInvalidState);
}

TEST(FundContractTest, ZeroClickAdvertiserGetsDepositLessFee) {
  auto plan = make_plan({4, 20, 12, 7}, 2, 10, 9);
  // adv-1 owns ads 1 and 3, which nobody clicks.
  CampaignHarness h(plan, to_users({{3, 0, 2, 0}}), 39);
  auto r = h.campaign.run();
  const auto& acc = h.campaign.fsc().accounts().at("adv-1");
  EXPECT_EQ(acc.refund_paid, acc.deposit - acc.fee_share);
  EXPECT_EQ(acc.deposit, 10u * 20 + 10u * 7 + acc.fee_share);
  EXPECT_TRUE(r.refund_identity);
  EXPECT_TRUE(r.conservation);
}

TEST(FundContractTest, FeeApportionment) {
  std::vector<AdTerms> ads{{"a", 10}, {"b", 10}, {"a", 5}};
  auto s = apportion_fee(ads, {1, 2, 2}, 100);
  // Budget values: a = 10 + 10 = 20, b = 20.
  EXPECT_EQ(s.at("a"), 50u);
  EXPECT_EQ(s.at("b"), 50u);
  s = apportion_fee(ads, {1, 1, 1}, 7);
  EXPECT_EQ(s.at("a") + s.at("b"), 7u);
  EXPECT_EQ(s.at("a"), 4u);  // floor(15 * 7 / 25)
  EXPECT_EQ(s.at("b"), 3u);
  EXPECT_THROW(apportion_fee(ads, {1, 1}, 7), Error);
}

TEST(NoteRegistryTest, DepositAndRedeemGuards) {
  auto plan = make_plan({4, 20, 12}, 1, 10, 0);
  LiveCampaign live(plan, to_users({{3, 0, 2}, {0, 1, 0}}), 40);
  live.campaign.claims();
  live.campaign.end_epoch();
  live.campaign.analytics_round();
  live.campaign.cf_settle();
  const auto& notes_id = live.ids().notes;
  auto& s0 = live.campaign.sessions()[0];
  auto& s1 = live.campaign.sessions()[1];
  // The CF hands out openings through its payer ledger.
  const auto& reg = live.campaign.notes();
  ASSERT_EQ(reg.size(), 2u);
  auto log = reg.note_log();
  payments::TxRef ref0{};
  for (const auto& n : log) {
    if (n["recipient"] == s0.addr().hex()) {
      Bytes b = from_hex(n["tx_ref"].get<std::string>());
      std::copy(b.begin(), b.end(), ref0.begin());
    }
  }
  auto opening = live.campaign.cf().payer().opening_for(ref0);
  ASSERT_TRUE(opening.has_value());
  EXPECT_EQ(opening->amount, 36u);
  EXPECT_EQ(error_of(live.ledger.execute(s1.payout, calls::redeem(notes_id, ref0, opening->r, 36))), Errc::kUnauthorized);
  EXPECT_EQ(error_of(live.ledger.execute(s0.payout, calls::redeem(notes_id, ref0, opening->r, 35))), Errc::kBadOpening);
  payments::TxRef ghost{};
  EXPECT_EQ(error_of(live.ledger.execute(s0.payout, calls::redeem(notes_id, ghost, opening->r, 36))), Errc::kUnknownTxRef);
  live.ledger.execute(s0.payout, calls::redeem(notes_id, ref0, opening->r, 36)).expect_ok();
  EXPECT_EQ(live.ledger.balance(s0.addr()), 36u);
  EXPECT_EQ(error_of(live.ledger.execute(s0.payout, calls::redeem(notes_id, ref0, opening->r, 36))), Errc::kInvalidState);

  // Replaying a batch, or a batch with a broken proof, is refused.
  Rng rng("batch");
  auto& cf = live.campaign.cf().key();
  payments::NoteOpening o{rng.scalar(), 0};
  std::vector<payments::NoteWithOpening> batch{{payments::make_note(s1.addr(), 0, o.r), o}};
  auto good = payments::settle_batch(batch, 0);
  live.ledger.execute(cf, calls::deposit_batch(notes_id, good)).expect_ok();
  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::deposit_batch(notes_id, good))), Errc::kDuplicateAddress);
  auto bad = good;
  bad.total = 1;
  EXPECT_EQ(error_of(live.ledger.execute(cf, calls::deposit_batch(notes_id, bad))), Errc::kProofRejected);
}

// Public state and the transaction log never expose policies, the user link
// between aggregate and payout, or queued amounts in the clear.
TEST(PrivacyTest, PublicArtifactsCarryNoPlaintextSecrets) {
  auto plan = make_plan({101, 202, 303, 404}, 2, 50, 13);
  plan.max_policy = 512;
  auto users = to_users({{3, 0, 2, 1}, {1, 1, 1, 1}, {0, 4, 0, 2}});
  CampaignHarness h(plan, users, 41);
  h.campaign.run();

  std::string state = h.ledger.state_json().dump();
  std::string txs;
  for (const auto& tx : h.ledger.tx_log()) txs += tx.to_json().dump();
  const std::string all = state + txs;

  // Sealed policy keys never appear.
  for (const auto& adv : h.campaign.advertisers()) {
    auto key = policy_key(h.campaign.cf().key().sk, adv.key().pk);
    EXPECT_EQ(all.find(to_hex(ByteSpan(key))), std::string::npos);
  }
  // Policy vector and a plaintext record encoding never appear.
  json pol = plan.policies;
  EXPECT_EQ(state.find(pol.dump()), std::string::npos);
  for (std::size_t u = 0; u < h.campaign.sessions().size(); ++u) {
    const auto& s = h.campaign.sessions()[u];
    QueuedRequestRecord rec{s.ephemeral.pk, s.dec_result};
    EXPECT_EQ(all.find(to_hex(rec.to_bytes())), std::string::npos);
    // Secret keys never leave the client.
    EXPECT_EQ(all.find(to_hex(ByteSpan(s.ephemeral.sk.bytes()))), std::string::npos);
    EXPECT_EQ(all.find(to_hex(ByteSpan(s.payout.sk.bytes()))), std::string::npos);
  }
  // No payment-request transaction is sent from a user key, and its public
  // arguments are empty.
  std::set<ledger::Address> user_addrs;
  for (const auto& s : h.campaign.sessions()) {
    user_addrs.insert(ledger::Address::from_pk(s.ephemeral.pk));
    user_addrs.insert(s.addr());
  }
  int requests = 0;
  for (const auto& tx : h.ledger.tx_log()) {
    if (tx.call.method != "payment_request") continue;
    ++requests;
    EXPECT_TRUE(tx.call.args.empty());
    EXPECT_TRUE(tx.private_envelope.has_value());
    EXPECT_EQ(user_addrs.count(tx.sender), 0u);
  }
  EXPECT_EQ(requests, 3);
  // The FSC's request entries carry only the payout address and sealed blobs.
  for (const auto& q : h.ledger.state_json()["contracts"]["fsc"]["storage"]["payment_requests"]) {
    EXPECT_EQ(q.size(), 3u);
    for (const auto& s : h.campaign.sessions()) {
      EXPECT_EQ(q.dump().find(to_hex(ByteSpan(s.ephemeral.pk.to_bytes()))), std::string::npos);
    }
  }
}

TEST(ConservationTest, SupplyIsConstantAndIdentityHolds) {
  Rng rng("conservation");
  for (int trial = 0; trial < 5; ++trial) {
    std::size_t n_ads = rng.range(3, 20);
    auto plan = make_plan(random_vector(rng, n_ads, 1, 256), rng.range(1, 3), 0, rng.range(0, 500));
    std::vector<InteractionVector> users(rng.range(1, 8));
    for (auto& u : users) u.counts = random_vector(rng, n_ads, 0, 9);
    for (std::size_t i = 0; i < n_ads; ++i) {
      std::uint64_t total = 0;
      for (const auto& u : users) total += u.counts[i];
      plan.catalog.entries[i].impressions = total + rng.range(0, 5);
    }
    CampaignHarness h(plan, users, 500 + trial);
    auto supply = h.ledger.total_supply();
    auto r = h.campaign.run();
    EXPECT_EQ(h.ledger.total_supply(), supply);
    EXPECT_TRUE(r.conservation);
    EXPECT_TRUE(r.refund_identity);
    EXPECT_EQ(r.deposits, r.payouts + r.refunds + r.fee_paid);
    EXPECT_EQ(h.ledger.balance(ledger::Address::for_contract("fsc")), 0u);
  }
}

}  // namespace
}  // namespace themis::contracts
