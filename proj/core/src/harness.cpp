#include "pvqc/harness.hpp"

#include <iomanip>
#include <sstream>

#include "pvqc/error.hpp"

namespace pvqc::harness {
namespace {

using compiler::RejectSite;

AdversaryOutput stamp_forgery(Arena& arena, const dvproof::SecretKey& key, std::uint8_t bit,
                              commit::Opening y) {
  arena.clock.charge(kForgeCost);
  auto pi = dvproof::forge(key, arena.crs.pk, bit);
  auto stamp = arena.ledger.stamp(dvproof::serialize(pi), arena.clock);
  return {{pi, stamp}, std::move(y)};
}

// Key length is public: the puzzle plaintext is sk || r.
std::size_t key_length(const compiler::Crs& crs) {
  const auto n = crs.o.ciphertext.size();
  return n > commit::kRandomnessSize ? n - commit::kRandomnessSize : 1;
}

commit::Opening random_opening(Arena& arena) {
  commit::Opening y;
  y.sk_bytes = arena.rng.bytes(key_length(arena.crs));
  y.r = arena.rng.bytes<commit::kRandomnessSize>();
  return y;
}

class HonestAdversary final : public Adversary {
 public:
  std::optional<AdversaryOutput> attack(Arena& arena) override {
    if (arena.token == nullptr) throw ParameterError("honest prover needs the oracle token");
    auto pi = compiler::prove(arena.crs, arena.circuit, arena.input, *arena.token, arena.ledger,
                              arena.clock, arena.cost);
    auto y = compiler::reveal(arena.crs, arena.clock);
    return AdversaryOutput{pi, std::move(y)};
  }
};

class GuessKeyAdversary final : public Adversary {
 public:
  std::optional<AdversaryOutput> attack(Arena& arena) override { return strategy_a1(arena); }
};

class SolveThenForgeAdversary final : public Adversary {
 public:
  std::optional<AdversaryOutput> attack(Arena& arena) override {
    walker_.emplace(arena.crs.tpk.seed, arena.crs.tpk.mu);
    return finish(arena);
  }
  // Keeps the chain progress made within the budget and completes it late.
  std::optional<AdversaryOutput> after_deadline(Arena& arena) override {
    if (!walker_) return std::nullopt;
    return finish(arena);
  }

 private:
  AdversaryOutput finish(Arena& arena) {
    const auto& end = walker_->run(&arena.clock);
    auto y = compiler::parse_plaintext(tlp::open_with_key(arena.crs.o, tlp::derive_key(end)));
    dvproof::SecretKey sk{y.sk_bytes};
    return stamp_forgery(arena, sk, 1, std::move(y));
  }

  std::optional<tlp::ChainWalker> walker_;
};

class AltOpeningAdversary final : public Adversary {
 public:
  std::optional<AdversaryOutput> attack(Arena& arena) override { return strategy_a3(arena); }
};

class RandomTagAdversary final : public Adversary {
 public:
  std::optional<AdversaryOutput> attack(Arena& arena) override {
    dvproof::Proof pi;
    pi.claimed_bit = static_cast<std::uint8_t>(arena.rng.uniform(2));
    pi.tag = arena.rng.bytes<32>();
    auto y = random_opening(arena);
    arena.clock.charge(kForgeCost);
    auto stamp = arena.ledger.stamp(dvproof::serialize(pi), arena.clock);
    return AdversaryOutput{{pi, stamp}, std::move(y)};
  }
};

void accumulate(AggregateReport& agg, const ExperimentReport& r) {
  ++agg.trials;
  agg.wins += r.win;
  agg.bottoms += r.bottom;
  agg.late += r.late;
  agg.b1_accepts += r.b1;
  agg.b2_accepts += r.b2;
  if (!r.bottom) {
    agg.tau_sum += r.tau;
    ++agg.tau_count;
    if (!r.b1) ++agg.sites_b1[r.site1];
    if (!r.b2) ++agg.sites_b2[r.site2];
  }
  agg.max_steps_used = std::max(agg.max_steps_used, r.steps_used);
  if (r.steps_used > r.budget) agg.budget_respected = false;
  if (r.reveal_steps != agg.delta) agg.reveal_exact = false;
  if (r.win != win_formula(r)) agg.formula_consistent = false;
}

std::string format_sites(const std::map<RejectSite, std::uint64_t>& sites) {
  std::ostringstream out;
  bool first = true;
  for (auto site : {RejectSite::Timestamp, RejectSite::Statement, RejectSite::Ledger,
                    RejectSite::Commitment, RejectSite::ClaimedBit, RejectSite::MacTag}) {
    auto it = sites.find(site);
    out << (first ? "" : ",") << compiler::name(site) << ':' << (it == sites.end() ? 0 : it->second);
    first = false;
  }
  return out.str();
}

}  // namespace

std::string_view name(Strategy s) {
  switch (s) {
    case Strategy::Honest: return "honest";
    case Strategy::A1GuessKey: return "a1";
    case Strategy::A2SolveThenForge: return "a2";
    case Strategy::A3AltOpening: return "a3";
    case Strategy::A4RandomTag: return "a4";
  }
  return "unknown";
}

Strategy strategy_from_name(std::string_view n) {
  for (auto s : {Strategy::Honest, Strategy::A1GuessKey, Strategy::A2SolveThenForge,
                 Strategy::A3AltOpening, Strategy::A4RandomTag}) {
    if (name(s) == n) return s;
  }
  throw ParameterError("unknown strategy '" + std::string(n) + "'");
}

bool is_pre_reveal(Strategy s) { return s != Strategy::Honest; }

std::unique_ptr<Adversary> make_adversary(Strategy s) {
  switch (s) {
    case Strategy::Honest: return std::make_unique<HonestAdversary>();
    case Strategy::A1GuessKey: return std::make_unique<GuessKeyAdversary>();
    case Strategy::A2SolveThenForge: return std::make_unique<SolveThenForgeAdversary>();
    case Strategy::A3AltOpening: return std::make_unique<AltOpeningAdversary>();
    case Strategy::A4RandomTag: return std::make_unique<RandomTagAdversary>();
  }
  throw ParameterError("unknown strategy");
}

AdversaryOutput strategy_a1(Arena& arena) {
  auto y = random_opening(arena);
  dvproof::SecretKey guess{y.sk_bytes};
  return stamp_forgery(arena, guess, 1, std::move(y));
}

AdversaryOutput strategy_a3(Arena& arena) {
  // Off-chain work is free: search a batch of randomness values for one that
  // opens d to the chosen key. Success would be a binding break.
  constexpr int kSearch = 8;
  commit::Opening y;
  y.sk_bytes = arena.rng.bytes(key_length(arena.crs));
  for (int i = 0; i < kSearch; ++i) {
    y.r = arena.rng.bytes<commit::kRandomnessSize>();
    if (commit::verify_opening(arena.crs.d, y)) break;
  }
  dvproof::SecretKey alt{y.sk_bytes};
  return stamp_forgery(arena, alt, 1, std::move(y));
}

std::uint64_t AggregateReport::site_count(RejectSite s) const {
  std::uint64_t n = 0;
  if (auto it = sites_b1.find(s); it != sites_b1.end()) n += it->second;
  if (auto it = sites_b2.find(s); it != sites_b2.end()) n += it->second;
  return n;
}

ExperimentReport run_trial(const AdversarySpec& adv, const qsim::Circuit& c,
                           const qsim::InputBits& x, unsigned lambda,
                           const compiler::CostModel& cost, bool c_of_x, crypto::Rng& rng) {
  auto [crs, token] = compiler::setup(lambda, c, x, cost, rng);
  auto ledger = timestamp::Ledger::in_memory(rng.bytes<32>());
  MeteredClock clock;
  Arena arena{crs, c, x, cost, ledger, clock, rng,
              adv.strategy == Strategy::Honest ? &token : nullptr};

  ExperimentReport rep;
  rep.c_of_x = c_of_x;
  rep.budget = MeteredClock::kUnlimited;
  if (is_pre_reveal(adv.strategy)) {
    rep.budget = adv.step_budget.value_or(crs.delta - 1);
    clock.set_budget(rep.budget);
  }

  auto adversary = make_adversary(adv.strategy);
  std::optional<AdversaryOutput> out;
  bool exhausted = false;
  const auto start = clock.now();
  try {
    out = adversary->attack(arena);
  } catch (const BudgetExhausted&) {
    exhausted = true;
  } catch (const ProofRefused&) {
    out.reset();
  }
  rep.steps_used = clock.now() - start;
  clock.clear_budget();
  if (exhausted) {
    out = adversary->after_deadline(arena);
    rep.late = out.has_value();
  }

  if (out) {
    rep.tau = out->pi_tau.tau();
    auto v1 = compiler::verify(crs, c, x, out->pi_tau, out->y, ledger);
    rep.b1 = v1.accept;
    rep.site1 = v1.site;
  } else {
    rep.bottom = true;
  }

  const auto before_reveal = clock.now();
  auto truth = compiler::reveal(crs, clock);
  rep.reveal_steps = clock.now() - before_reveal;

  if (out) {
    auto v2 = compiler::verify(crs, c, x, out->pi_tau, truth, ledger);
    rep.b2 = v2.accept;
    rep.site2 = v2.site;
    rep.y_matches_sk = out->y.sk_bytes == truth.sk_bytes;
  }
  rep.win = win_formula(rep);
  return rep;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const qsim::Circuit& c,
                                const qsim::InputBits& x) {
  if (config.trials == 0) throw ParameterError("experiment: trials must be at least 1");
  const auto cost = compiler::CostModel::for_circuit(c, config.epsilon);
  const bool c_of_x = qsim::accepts(c, x);
  ExperimentResult result;
  auto& agg = result.aggregate;
  agg.strategy = config.adversary.strategy;
  agg.delta = compiler::delta_for(cost);
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    crypto::DeterministicRng rng(config.seed, t);
    auto rep = run_trial(config.adversary, c, x, config.lambda, cost, c_of_x, rng);
    accumulate(agg, rep);
    if (config.keep_trials) result.trials.push_back(rep);
  }
  return result;
}

std::string summary(const AggregateReport& r) {
  std::ostringstream out;
  out << "strategy=" << name(r.strategy) << '\n'
      << "trials=" << r.trials << '\n'
      << "wins=" << r.wins << '\n'
      << "bottoms=" << r.bottoms << '\n'
      << "late=" << r.late << '\n'
      << "delta=" << r.delta << '\n'
      << "mean_tau=" << std::fixed << std::setprecision(3) << r.mean_tau() << '\n'
      << "b1_accepts=" << r.b1_accepts << '\n'
      << "b2_accepts=" << r.b2_accepts << '\n'
      << "max_steps_used=" << r.max_steps_used << '\n'
      << "budget_respected=" << (r.budget_respected ? 1 : 0) << '\n'
      << "reveal_exact=" << (r.reveal_exact ? 1 : 0) << '\n';
  std::map<RejectSite, std::uint64_t> total = r.sites_b1;
  for (const auto& [site, n] : r.sites_b2) total[site] += n;
  out << "rejection_sites=" << format_sites(total) << '\n'
      << "rejection_sites_b1=" << format_sites(r.sites_b1) << '\n'
      << "rejection_sites_b2=" << format_sites(r.sites_b2) << '\n';
  return out.str();
}

}  // namespace pvqc::harness
