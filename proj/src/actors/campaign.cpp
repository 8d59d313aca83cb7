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

#include "themis/actors/campaign.hpp"

#include <algorithm>
#include <numeric>
#include <ranges>

#include "themis/crypto/proofs.hpp"
#include "themis/log.hpp"

namespace themis::actors {

namespace calls = contracts::calls;

class Campaign::PhaseTimer {
 public:
  PhaseTimer(Campaign& c, std::string name)
      : c_(c), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {
    log::debug("phase " + name_);
  }
  ~PhaseTimer() {
    std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
    c_.phase_seconds_[name_] += d.count();
  }

 private:
  Campaign& c_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

std::uint64_t dot_product(const std::vector<std::uint64_t>& policies,
                          const std::vector<std::uint64_t>& counts) {
  if (policies.size() != counts.size()) throw Error(Errc::kLengthMismatch, "dot product");
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < policies.size(); ++i) s += policies[i] * counts[i];
  return s;
}

ActorKeys derive_actor_keys(const CampaignPlan& plan, std::uint64_t seed) {
  Rng rng = Rng::from_u64(seed).fork("actor-keys");
  ActorKeys keys;
  keys.cf = crypto::keygen(rng);
  for (const auto& adv : plan.catalog.advertisers()) {
    Rng r = rng.fork("advertiser/" + adv);
    keys.advertisers.emplace(adv, crypto::keygen(r));
  }
  for (std::size_t i = 0; i < plan.pool.registrants; ++i) keys.registrants.push_back(crypto::keygen(rng));
  return keys;
}

ledger::GenesisConfig Campaign::genesis_for(const CampaignPlan& plan, std::uint64_t seed,
                                            std::string chain_id) {
  plan.validate();
  auto keys = derive_actor_keys(plan, seed);
  ledger::GenesisConfig g;
  g.chain_id = std::move(chain_id);
  g.validator_seed = "validator/" + std::to_string(seed);
  for (const auto& [id, key] : keys.advertisers) {
    g.balances[Address::from_pk(key.pk)] = plan.required_deposit(id) + plan.advertiser_slack;
  }
  return g;
}

Campaign::Campaign(Ledger& ledger, CampaignPlan plan, std::vector<InteractionVector> users,
                   std::uint64_t seed, Misbehavior misbehavior, ContractIds ids)
    : ledger_(ledger),
      plan_(std::move(plan)),
      users_(std::move(users)),
      mis_(std::move(misbehavior)),
      ids_(std::move(ids)),
      rng_(Rng::from_u64(seed).fork("campaign")),
      cf_(derive_actor_keys(plan_, seed).cf) {
  plan_.validate();
  for (const auto& u : users_) {
    if (u.counts.size() != plan_.catalog.size()) throw Error(Errc::kLengthMismatch, "interaction vector");
    for (auto c : u.counts) {
      if (c > plan_.interaction_cap) throw Error(Errc::kInvalidConfig, "interaction count above cap");
    }
  }
  auto keys = derive_actor_keys(plan_, seed);
  for (const auto& adv : plan_.catalog.advertisers()) advertisers_.emplace_back(adv, keys.advertisers.at(adv));
  for (const auto& k : keys.registrants) pool_.push_back(PoolMember{k, 0, std::nullopt});
  for (std::size_t u = 0; u < users_.size(); ++u) {
    Rng r = rng_.fork("session/" + std::to_string(u));
    sessions_.push_back(UserSession::create(users_[u], r));
  }
}

const contracts::PolicyContract& Campaign::psc() const {
  return ledger_.contract_as<contracts::PolicyContract>(ids_.psc);
}
const contracts::FundContract& Campaign::fsc() const {
  return ledger_.contract_as<contracts::FundContract>(ids_.fsc);
}
const contracts::NoteRegistry& Campaign::notes() const {
  return ledger_.contract_as<contracts::NoteRegistry>(ids_.notes);
}

PoolMember& Campaign::member_by_id(std::uint32_t id) {
  for (auto& m : pool_) {
    if (m.id == id) return m;
  }
  throw Error(Errc::kNotFound, "pool member " + std::to_string(id));
}

void Campaign::phase1_setup() {
  PhaseTimer t(*this, "setup");
  for (const auto& [a, v] : ledger_.balances()) balances_before_[a.hex()] = v;
  balances_before_[cf_.account().hex()] = ledger_.balance(cf_.account());

  const std::size_t n_ads = plan_.catalog.size();
  const std::size_t n_adv = advertisers_.size();
  // Setup transactions land before registration closes.
  const std::uint64_t setup_txs = 3 + n_ads + 1 + 2 * n_adv + plan_.pool.registrants;
  const std::uint64_t block_size = ledger_.genesis().block_size;
  const std::uint64_t h = ledger_.block_height();

  ledger_.deploy(cf_.key(), ids_.notes, std::string(contracts::kNoteRegistryKind), json::object()).expect_ok();

  contracts::PolicyContractParams pp;
  pp.cf_pk = cf_.key().pk;
  pp.fsc_id = ids_.fsc;
  pp.n_ads = static_cast<std::uint32_t>(n_ads);
  pp.pool.expected_participants = plan_.pool.expected_participants;
  pp.pool.registration_end = h + plan_.windows.registration + (setup_txs + block_size - 1) / block_size;
  pp.pool.draw_window = plan_.windows.draw;
  pp.pool.threshold = plan_.pool.threshold;
  ledger_.deploy(cf_.key(), ids_.psc, std::string(contracts::kPolicyContractKind), pp.to_json()).expect_ok();

  contracts::FundContractParams fp;
  fp.cf_pk = cf_.key().pk;
  fp.psc_id = ids_.psc;
  fp.notes_id = ids_.notes;
  fp.fee = plan_.fee;
  fp.ads = plan_.catalog.terms();
  fp.epoch_end = h + plan_.windows.epoch;
  fp.complaint_window = plan_.windows.complaint;
  ledger_.deploy(cf_.key(), ids_.fsc, std::string(contracts::kFundContractKind), fp.to_json()).expect_ok();

  // Off-chain agreement, one DH key per advertiser.
  Rng setup_rng = rng_.fork("setup");
  std::vector<Bytes> sealed(n_ads);
  std::vector<crypto::WrappedKey> wrapped(n_ads);
  for (auto& adv : advertisers_) {
    std::map<std::uint32_t, std::uint64_t> agreed;
    for (std::uint32_t i = 0; i < n_ads; ++i) {
      if (plan_.catalog.entries[i].advertiser == adv.id()) agreed[i] = plan_.policies[i];
    }
    adv.agree(cf_.key().pk, agreed);
    auto key = contracts::policy_key(cf_.key().sk, adv.key().pk);
    auto wk = crypto::hybrid_wrap(ledger_.validator_pk(), ByteSpan(key), setup_rng);
    for (const auto& [i, value] : agreed) {
      std::uint64_t stored = value;
      if (mis_.tamper_policy && *mis_.tamper_policy == i) stored = value + 1;
      sealed[i] = contracts::seal_policy(key, ids_.psc, i, stored, setup_rng);
      wrapped[i] = wk;
    }
  }
  for (std::uint32_t i = 0; i < n_ads; ++i) {
    ledger_.execute(cf_.key(), calls::store_policy(ids_.psc, i, sealed[i])).expect_ok();
  }
  auto sig = crypto::sign(cf_.key().sk, contracts::encrypted_keys_message(ids_.psc, wrapped));
  ledger_.execute(cf_.key(), calls::store_encrypted_keys(ids_.psc, wrapped, sig)).expect_ok();
  for (const auto& adv : advertisers_) {
    ledger_.execute(cf_.key(), calls::store_adv_id(ids_.fsc, adv.id())).expect_ok();
  }

  // Every advertiser checks before anyone stakes.
  for (const auto& adv : advertisers_) adv.verify_policies(psc());
  for (const auto& adv : advertisers_) {
    ledger_.execute(adv.key(), calls::store_funds(ids_.fsc, adv.id(), plan_.required_deposit(adv.id())))
        .expect_ok();
  }
  if (!fsc().initialized()) throw Error(Errc::kNotInitialized, "campaign did not initialize");
}

std::uint64_t Campaign::pool_selection() {
  PhaseTimer t(*this, "pool_selection");
  for (const auto& m : pool_) ledger_.execute(m.key, calls::register_candidate(ids_.psc)).expect_ok();
  const auto reg_end = psc().params().pool.registration_end;
  if (ledger_.block_height() < reg_end) ledger_.advance_blocks(reg_end - ledger_.block_height()).expect_ok();
  ledger_.execute(cf_.key(), calls::close_registration(ids_.psc)).expect_ok();

  // Draw rounds repeat with a fresh epsilon until someone is selected.
  constexpr std::uint64_t kMaxDrawRounds = 64;
  for (draw_rounds_ = 1;; ++draw_rounds_) {
    if (draw_rounds_ > kMaxDrawRounds) throw Error(Errc::kNoWinners, "draw did not converge");
    const auto cfg = psc().draw_config();
    for (const auto& m : pool_) {
      auto out = vrf::vrf_rand_gen(m.key.sk, cfg.epsilon);
      if (vrf::is_selected(out, cfg)) ledger_.execute(m.key, calls::publish_draw(ids_.psc, out)).expect_ok();
    }
    ledger_.advance_blocks(plan_.windows.draw).expect_ok();
    auto r = ledger_.execute(cf_.key(), calls::seal_draw(ids_.psc)).expect_ok();
    if (!r.output.empty() && r.output[0] == 1) break;
  }

  const auto& members = psc().members();
  const auto cfg = psc().pool_config();
  for (auto& m : pool_) {
    m.id = 0;
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (members[j] == m.key.pk) m.id = static_cast<std::uint32_t>(j + 1);
    }
  }

  // Dealing.
  std::vector<dkg::DealerRound> rounds;
  for (std::uint32_t d = 1; d <= cfg.n; ++d) {
    Rng dealer_rng = rng_.fork("dealer/" + std::to_string(d));
    std::vector<Scalar> coeffs(cfg.k);
    for (auto& a : coeffs) a = dealer_rng.scalar();
    std::map<std::uint32_t, Scalar> overrides;
    if (auto it = mis_.dkg.bad_shares.find(d); it != mis_.dkg.bad_shares.end()) {
      for (std::uint32_t j : it->second) overrides[j] = dkg::eval_polynomial(coeffs, j) + Scalar::one();
    }
    rounds.push_back(dkg::dkg_deal_polynomial(cfg, d, coeffs, members, dealer_rng, overrides));
    ledger_.execute(member_by_id(d).key, calls::post_dealer_round(ids_.psc, rounds.back())).expect_ok();
  }

  // Complaints: each member checks the shares addressed to it.
  std::set<std::uint32_t> disqualified;
  std::vector<std::map<std::uint32_t, Scalar>> received(cfg.n);
  for (std::uint32_t j = 1; j <= cfg.n; ++j) {
    const auto& sk = member_by_id(j).key.sk;
    for (const auto& round : psc().dealer_rounds() | std::views::values) {
      try {
        Scalar s = dkg::dkg_open_share(round, j, sk);
        if (dkg::dkg_verify_share(round, j, s)) {
          received[j - 1][round.participant_id] = s;
          continue;
        }
      } catch (const Error&) {
      }
      disqualified.insert(round.participant_id);
    }
  }
  std::vector<std::uint32_t> disq(disqualified.begin(), disqualified.end());
  std::vector<crypto::Signature> cosigs;
  std::optional<GroupElement> pk_t;
  for (std::uint32_t j = 1; j <= cfg.n; ++j) {
    auto& m = member_by_id(j);
    m.material = dkg::dkg_finalize(cfg, rounds, disqualified, j, received[j - 1]);
    if (pk_t && !(*pk_t == m.material->pk_t)) throw Error(Errc::kInvalidState, "members disagree on pk_T");
    pk_t = m.material->pk_t;
    cosigs.push_back(crypto::sign(m.key.sk, contracts::pool_key_message(ids_.psc, *pk_t, disq)));
  }
  ledger_.execute(member_by_id(1).key, calls::publish_pool_key(ids_.psc, disq, cosigs)).expect_ok();
  if (!(*psc().pool_key() == *pk_t)) throw Error(Errc::kInvalidState, "published pool key differs");
  if (posters_.empty()) {
    for (std::uint32_t j = 1; j <= cfg.k; ++j) posters_.push_back(j);
  }
  return draw_rounds_;
}

ClaimVectors encrypt_interactions(const UserSession& session, const GroupElement& pk_t,
                                  std::uint64_t interaction_cap, Rng& rng) {
  ClaimVectors v;
  crypto::VectorEncryptor own(session.ephemeral.pk, interaction_cap);
  crypto::VectorEncryptor pool(pk_t, interaction_cap);
  v.enc_vec = own.encrypt(session.interactions.counts, rng);
  v.enc_vec_prime = pool.encrypt(session.interactions.counts, rng);
  return v;
}

namespace {

std::optional<AggregateRecord> fetch_aggregate(const Ledger& ledger, const ContractIds& ids,
                                               const UserSession& session) {
  auto pk = session.ephemeral.pk.to_bytes();
  Bytes raw = ledger.query(ids.psc, "get_aggregate", ByteSpan(pk));
  ByteReader r(raw);
  AggregateRecord rec;
  rec.aggregate = Ciphertext::from_bytes(r.raw(Ciphertext::kSize));
  rec.attestation = crypto::Signature::from_bytes(r.raw(crypto::Signature::kSize));
  r.expect_done();
  auto msg = contracts::aggregate_message(ids.psc, session.ephemeral.pk, rec.aggregate);
  if (!crypto::verify_sig(ledger.validator_pk(), msg, rec.attestation)) return std::nullopt;
  return rec;
}

void submit_claim(Ledger& ledger, const ContractIds& ids, UserSession& session, const ClaimVectors& v) {
  ledger.execute(session.ephemeral,
                 calls::compute_aggregate(ids.psc, session.ephemeral.pk, v.enc_vec, v.enc_vec_prime))
      .expect_ok();
  constexpr int kAttempts = 3;
  for (int i = 0; i < kAttempts; ++i) {
    if (auto rec = fetch_aggregate(ledger, ids, session)) {
      session.aggregate = *rec;
      return;
    }
  }
  throw Error(Errc::kBadSignature, "aggregate attestation");
}

}  // namespace

Ciphertext user_claim(Ledger& ledger, const ContractIds& ids, UserSession& session,
                      std::uint64_t interaction_cap, Rng& rng) {
  auto pk_raw = ledger.query(ids.psc, "pool_key", {});
  auto pk_t = GroupElement::from_bytes(pk_raw);
  submit_claim(ledger, ids, session, encrypt_interactions(session, pk_t, interaction_cap, rng));
  return session.aggregate->aggregate;
}

contracts::PaymentRequestTuple build_payment_request(const UserSession& session,
                                                     std::uint64_t max_policy) {
  if (!session.aggregate) throw Error(Errc::kInvalidState, "no aggregate fetched");
  const auto& c = session.aggregate->aggregate;
  std::uint64_t clicks = 0;
  for (auto a : session.interactions.counts) clicks += a;
  std::uint64_t m = crypto::recover_plaintext(crypto::decrypt_to_element(session.ephemeral.sk, c),
                                              max_policy * clicks);
  contracts::PaymentRequestTuple t;
  t.user_pk = session.ephemeral.pk;
  t.dec_result = m;
  t.sign_reward = session.aggregate->attestation;
  t.proof = crypto::prove_decryption(session.ephemeral.sk, c, m);
  t.addr = session.addr();
  return t;
}

namespace {

void submit_payment_request(Ledger& ledger, const ContractIds& ids, UserSession& session,
                            const contracts::PaymentRequestTuple& t, Rng& rng) {
  // A throwaway key submits, so the transaction sender links to nothing.
  KeyPair submitter = crypto::keygen(rng);
  auto envelope = ledger.seal_private_inputs(t.to_bytes(), rng);
  ledger.execute_private(submitter, calls::payment_request(ids.psc), envelope).expect_ok();
  session.dec_result = t.dec_result;
}

}  // namespace

void user_payment_request(Ledger& ledger, const ContractIds& ids, UserSession& session,
                          std::uint64_t max_policy, Rng& rng) {
  submit_payment_request(ledger, ids, session, build_payment_request(session, max_policy), rng);
}

CohortTiming process_cohort(Ledger& ledger, const ContractIds& ids, std::span<UserSession> sessions,
                            const CampaignPlan& plan, Rng& rng) {
  using Clock = std::chrono::steady_clock;
  auto since = [](Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); };
  auto pk_t = GroupElement::from_bytes(ledger.query(ids.psc, "pool_key", {}));
  const std::size_t n = sessions.size();
  std::vector<Rng> enc_rngs, req_rngs;
  for (std::size_t u = 0; u < n; ++u) {
    enc_rngs.push_back(rng.fork("claim/" + std::to_string(u)));
    req_rngs.push_back(rng.fork("request/" + std::to_string(u)));
  }
  CohortTiming t;
  auto t0 = Clock::now();
  std::vector<ClaimVectors> vectors(n);
  parallel_for(n, [&](std::size_t u) {
    vectors[u] = encrypt_interactions(sessions[u], pk_t, plan.interaction_cap, enc_rngs[u]);
  });
  t.client_encrypt = since(t0);
  t0 = Clock::now();
  for (std::size_t u = 0; u < n; ++u) submit_claim(ledger, ids, sessions[u], vectors[u]);
  t.aggregate = since(t0);
  t0 = Clock::now();
  std::vector<contracts::PaymentRequestTuple> tuples(n);
  parallel_for(n, [&](std::size_t u) { tuples[u] = build_payment_request(sessions[u], plan.max_policy); });
  t.client_request = since(t0);
  t0 = Clock::now();
  for (std::size_t u = 0; u < n; ++u) submit_payment_request(ledger, ids, sessions[u], tuples[u], req_rngs[u]);
  t.payment_request = since(t0);
  return t;
}

void Campaign::claims() {
  Rng rng = rng_.fork("claims");
  auto t = process_cohort(ledger_, ids_, sessions_, plan_, rng);
  phase_seconds_["client_encrypt"] += t.client_encrypt;
  phase_seconds_["aggregate"] += t.aggregate;
  phase_seconds_["client_request"] += t.client_request;
  phase_seconds_["payment_request"] += t.payment_request;
}

void Campaign::end_epoch() {
  PhaseTimer t(*this, "end_epoch");
  const auto end = fsc().params().epoch_end;
  if (ledger_.block_height() < end) ledger_.advance_blocks(end - ledger_.block_height()).expect_ok();
}

std::vector<std::uint64_t> Campaign::analytics_round() {
  PhaseTimer t(*this, "analytics");
  const std::size_t n_ads = plan_.catalog.size();
  const auto& log = psc().enc_vec_prime_log();
  auto sums = sum_enc_vec_prime(log, n_ads);
  const auto cfg = psc().pool_config();

  for (std::uint32_t id : posters_) {
    auto& m = member_by_id(id);
    std::vector<dkg::PartialDecryption> parts(n_ads);
    parallel_for(n_ads, [&](std::size_t i) { parts[i] = dkg::partial_decrypt(id, m.material->share, sums[i]); });
    ledger_.execute(m.key, calls::post_partials(ids_.fsc, id, parts)).expect_ok();
  }

  // The combining member recovers the totals from the posted partials.
  const auto& posted = fsc().partials();
  if (posted.size() < cfg.k) {
    throw Error(Errc::kInsufficientShares, std::to_string(posted.size()) + " of " + std::to_string(cfg.k));
  }
  const std::uint64_t bound = std::max<std::uint64_t>(1, log.size()) * plan_.interaction_cap;
  std::vector<std::uint64_t> clicks(n_ads);
  parallel_for(n_ads, [&](std::size_t i) {
    std::vector<dkg::PartialDecryption> at_i;
    for (const auto& parts : posted | std::views::values) {
      if (at_i.size() < cfg.k) at_i.push_back(parts[i]);
    }
    clicks[i] = crypto::recover_plaintext(dkg::interpolate_partials(sums[i], at_i), bound);
  });

  auto msg = contracts::aggr_clicks_message(ids_.fsc, 0, clicks, true);
  std::vector<crypto::Signature> cosigs;
  for (std::uint32_t id : posters_) cosigs.push_back(crypto::sign(member_by_id(id).key.sk, msg));
  ledger_.execute(member_by_id(posters_.front()).key, calls::store_aggr_clicks(ids_.fsc, clicks, true, cosigs))
      .expect_ok();
  return clicks;
}

void Campaign::cf_settle() {
  PhaseTimer t(*this, "settlement");
  auto pending = cf_.pending_requests(fsc());
  if (pending.empty()) return;
  Rng note_rng = rng_.fork("notes");

  std::vector<payments::NoteWithOpening> batch;
  std::uint64_t owed = 0, paying = 0;
  for (const auto& [addr, amount] : pending) {
    std::uint64_t pay = amount;
    if (mis_.cf_underpay && mis_.cf_underpay->user < sessions_.size() &&
        sessions_[mis_.cf_underpay->user].addr() == addr) {
      pay = amount - std::min(amount, mis_.cf_underpay->delta);
    }
    payments::NoteOpening opening{note_rng.scalar(), pay};
    auto note = payments::make_note(addr, pay, opening.r);
    cf_.payer().record(note, opening);
    batch.push_back({note, opening});
    settlement_.push_back({addr, pay, note.tx_ref, opening});
    owed += amount;
    paying += pay;
  }
  std::uint64_t tau = owed + mis_.cf_overwithdraw.value_or(0);
  auto sig = crypto::sign(cf_.key().sk, contracts::settlement_message(ids_.fsc, fsc().settlement_count(), tau));
  ledger_.execute(cf_.key(), calls::settlement_request(ids_.fsc, tau, sig)).expect_ok();
  ledger_.execute(cf_.key(), calls::deposit_batch(ids_.notes, payments::settle_batch(batch, paying))).expect_ok();
  for (const auto& s : settlement_) {
    ledger_.execute(cf_.key(), calls::payment_processed(ids_.fsc, s.tx_ref, s.addr)).expect_ok();
  }
}

void Campaign::user_payouts() {
  PhaseTimer t(*this, "payouts");
  for (auto& s : sessions_) {
    auto it = std::find_if(settlement_.begin(), settlement_.end(),
                           [&](const SettlementInstruction& i) { return i.addr == s.addr(); });
    if (it == settlement_.end()) continue;
    const auto* entry = notes().find(it->tx_ref);
    if (entry == nullptr || entry->note.recipient != s.addr() ||
        !payments::verify_opening(entry->note, it->opening.r, it->opening.amount)) {
      throw Error(Errc::kBadOpening, "note handed to user does not open");
    }
    s.note_ref = it->tx_ref;
    s.opening = it->opening;
    if (it->opening.amount != s.dec_result) {
      ledger_.execute(s.payout, calls::raise_complaint(ids_.fsc, s.ephemeral.pk, it->tx_ref, it->opening.r,
                                                       it->opening.amount))
          .expect_ok();
      s.complained = true;
    }
    ledger_.execute(s.payout, calls::redeem(ids_.notes, it->tx_ref, it->opening.r, it->opening.amount))
        .expect_ok();
  }
}

void Campaign::advertiser_checks() {
  PhaseTimer t(*this, "advertiser_checks");
  for (const auto& adv : advertisers_) {
    if (!adv.verify_analytics(psc(), fsc())) throw Error(Errc::kClicksMismatch, adv.id());
    ledger_.execute(adv.key(), calls::claim_insufficient_refund(ids_.fsc, adv.id())).expect_ok();
  }
}

void Campaign::close() {
  PhaseTimer t(*this, "close");
  ledger_.advance_blocks(plan_.windows.complaint).expect_ok();
  if (fsc().state_failed()) {
    ledger_.execute(advertisers_.front().key(), calls::return_fees(ids_.fsc)).expect_ok();
  } else {
    ledger_.execute(cf_.key(), calls::pay_processing_fees(ids_.fsc)).expect_ok();
  }
}

CampaignResult Campaign::run() {
  try {
    phase1_setup();
  } catch (const Error& e) {
    if (e.code() != Errc::kPolicyMismatch) throw;
    aborted_ = e.what();
    return result();
  }
  pool_selection();
  claims();
  end_epoch();
  analytics_round();
  cf_settle();
  if (!fsc().refunded()) ledger_.execute(cf_.key(), calls::finalize(ids_.fsc)).expect_ok();
  user_payouts();
  advertiser_checks();
  close();
  return result();
}

CampaignResult Campaign::result() const {
  CampaignResult r;
  r.phase_seconds = phase_seconds_;
  r.draw_rounds = draw_rounds_;
  r.aborted = aborted_;
  r.state_hash = to_hex(ByteSpan(ledger_.state_hash()));
  r.expected_clicks.assign(plan_.catalog.size(), 0);
  for (const auto& u : users_) {
    for (std::size_t i = 0; i < u.counts.size(); ++i) r.expected_clicks[i] += u.counts[i];
  }
  if (!aborted_.empty() || !ledger_.has_contract(ids_.fsc)) return r;

  const auto& f = fsc();
  const auto& p = psc();
  r.pool_n = p.pool_config().n;
  r.pool_k = p.draw_sealed() ? p.pool_config().k : 0;
  r.aggr_clicks = f.aggr_clicks();
  r.analytics_match = f.clicks_final() && r.aggr_clicks == r.expected_clicks;
  r.cf_flagged_dishonest = f.cf_flagged_dishonest();
  r.state_failed = f.state_failed();
  r.fee_paid = f.fees_paid() ? plan_.fee : 0;

  r.payouts_match = true;
  for (std::size_t u = 0; u < sessions_.size(); ++u) {
    const auto& s = sessions_[u];
    UserOutcome o;
    o.user_pk = to_hex(ByteSpan(s.ephemeral.pk.to_bytes()));
    o.addr = s.addr().hex();
    o.expected = dot_product(plan_.policies, users_[u].counts);
    o.dec_result = s.dec_result;
    o.paid = s.opening ? s.opening->amount : 0;
    o.redeemed = ledger_.balance(s.addr());
    o.complained = s.complained;
    r.payouts += o.redeemed;
    r.payouts_match = r.payouts_match && o.redeemed == o.expected && o.dec_result == o.expected;
    r.users.push_back(std::move(o));
  }

  r.refund_identity = true;
  bool verified = f.clicks_final();
  for (const auto& adv : advertisers_) {
    const auto& acc = f.accounts().at(adv.id());
    AdvertiserOutcome o;
    o.id = adv.id();
    o.deposit = acc.deposit;
    o.fee_share = acc.fee_share;
    o.spent = adv.spend(r.aggr_clicks);
    o.refund = acc.refund_paid;
    auto true_spend = adv.spend(r.expected_clicks);
    o.expected_refund = acc.deposit >= acc.fee_share + true_spend ? acc.deposit - acc.fee_share - true_spend : 0;
    r.deposits += acc.deposit;
    r.refunds += acc.refund_paid;
    r.fee_returned += acc.fee_returned;
    r.refund_identity = r.refund_identity && acc.deposit == o.refund + o.spent + o.fee_share;
    verified = verified && adv.verify_analytics(p, f);
    r.advertisers.push_back(std::move(o));
  }
  r.analytics_verified = verified;
  r.conservation = r.deposits == r.payouts + r.refunds + r.fee_paid;

  auto before = balances_before_.find(cf_.account().hex());
  std::int64_t start = before == balances_before_.end() ? 0 : static_cast<std::int64_t>(before->second);
  r.cf_gain = static_cast<std::int64_t>(ledger_.balance(cf_.account())) - start -
              static_cast<std::int64_t>(r.fee_paid);
  return r;
}

json CampaignResult::to_json(bool include_timing) const {
  json users_j = json::array();
  for (const auto& u : users) {
    users_j.push_back({{"user_pk", u.user_pk},
                       {"addr", u.addr},
                       {"expected", u.expected},
                       {"dec_result", u.dec_result},
                       {"paid", u.paid},
                       {"redeemed", u.redeemed},
                       {"complained", u.complained}});
  }
  json advs = json::array();
  for (const auto& a : advertisers) {
    advs.push_back({{"id", a.id},
                    {"deposit", a.deposit},
                    {"fee_share", a.fee_share},
                    {"spent", a.spent},
                    {"refund", a.refund},
                    {"expected_refund", a.expected_refund}});
  }
  json j = {{"users", std::move(users_j)},
            {"advertisers", std::move(advs)},
            {"aggr_clicks", aggr_clicks},
            {"expected_clicks", expected_clicks},
            {"totals",
             {{"deposits", deposits},
              {"payouts", payouts},
              {"refunds", refunds},
              {"fee_paid", fee_paid},
              {"fee_returned", fee_returned},
              {"cf_gain", cf_gain}}},
            {"checks",
             {{"payouts_match", payouts_match},
              {"conservation", conservation},
              {"analytics_match", analytics_match},
              {"analytics_verified", analytics_verified},
              {"refund_identity", refund_identity}}},
            {"flags", {{"cf_flagged_dishonest", cf_flagged_dishonest}, {"state_failed", state_failed}}},
            {"pool", {{"n", pool_n}, {"k", pool_k}, {"draw_rounds", draw_rounds}}},
            {"state_hash", state_hash}};
  if (!aborted.empty()) j["aborted"] = aborted;
  if (include_timing) j["phase_seconds"] = phase_seconds;
  return j;
}

}  // namespace themis::actors
