#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pvqc/compiler.hpp"

// The Delta-soundness experiment under a metered logical clock.
//
// Per trial: setup; the adversary produces (pi_tau, y) within its step
// budget; b1 = verify with y; reveal (exactly Delta steps); b2 = verify with
// the true opening; win = (b1 | b2) & (C(x) = 0 | y.sk != sk).
//
// Only sequential work is metered. Adversaries may do any amount of other
// computation for free, so the budget bounds depth, not total work.
namespace pvqc::harness {

enum class Strategy {
  Honest,          // prove with the oracle token, then reveal
  A1GuessKey,      // tag under a guessed key, present the guess as opening
  A2SolveThenForge,// solve the puzzle, forge with the true key, stamp
  A3AltOpening,    // self-consistent alternative (sk', r') and proof
  A4RandomTag,     // random proof tag and claimed bit, random opening
};

std::string_view name(Strategy s);
Strategy strategy_from_name(std::string_view name);
bool is_pre_reveal(Strategy s);

struct AdversarySpec {
  Strategy strategy = Strategy::Honest;
  // Sequential steps available before the adversary must output. Ignored for
  // Honest; nullopt means Delta - 1.
  std::optional<std::uint64_t> step_budget;
};

// Everything one trial's adversary can see and touch.
struct Arena {
  const compiler::Crs& crs;
  const qsim::Circuit& circuit;
  const qsim::InputBits& input;
  const compiler::CostModel& cost;
  timestamp::Ledger& ledger;
  MeteredClock& clock;
  crypto::Rng& rng;
  const dvproof::OracleToken* token = nullptr;  // honest role only
};

struct AdversaryOutput {
  compiler::TimestampedProof pi_tau;
  commit::Opening y;
};

// One attack run. `attack` runs under the budget; if the budget runs out the
// harness lifts it and calls `after_deadline`, whose output (if any) is what
// gets verified. A strategy without a post-deadline plan returns nullopt (the
// trial's output is bottom).
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::optional<AdversaryOutput> attack(Arena& arena) = 0;
  virtual std::optional<AdversaryOutput> after_deadline(Arena&) { return std::nullopt; }
};

std::unique_ptr<Adversary> make_adversary(Strategy s);

// One-shot helpers for the named strategies (no budget handling).
AdversaryOutput strategy_a1(Arena& arena);
AdversaryOutput strategy_a3(Arena& arena);

// Tag computation is sequential work after the key is known: one unit.
inline constexpr std::uint64_t kForgeCost = 1;

struct ExperimentReport {
  bool b1 = false;
  bool b2 = false;
  bool c_of_x = false;
  bool y_matches_sk = false;
  bool win = false;
  bool bottom = false;
  bool late = false;  // output produced after the budget ran out
  std::uint64_t tau = 0;
  std::uint64_t steps_used = 0;    // adversary-phase clock advance
  std::uint64_t reveal_steps = 0;  // clock advance during reveal
  std::uint64_t budget = 0;
  compiler::RejectSite site1 = compiler::RejectSite::None;
  compiler::RejectSite site2 = compiler::RejectSite::None;
};

inline bool win_formula(const ExperimentReport& r) {
  return (r.b1 || r.b2) && (!r.c_of_x || !r.y_matches_sk);
}

struct AggregateReport {
  Strategy strategy = Strategy::Honest;
  std::uint64_t trials = 0;
  std::uint64_t wins = 0;
  std::uint64_t bottoms = 0;
  std::uint64_t late = 0;
  std::uint64_t delta = 0;
  std::uint64_t tau_sum = 0;
  std::uint64_t tau_count = 0;
  std::uint64_t max_steps_used = 0;
  std::uint64_t b1_accepts = 0;
  std::uint64_t b2_accepts = 0;
  bool budget_respected = true;   // every budgeted phase stayed within delta
  bool reveal_exact = true;       // every reveal advanced the clock by Delta
  bool formula_consistent = true; // every win bit matches the output formula
  std::map<compiler::RejectSite, std::uint64_t> sites_b1;
  std::map<compiler::RejectSite, std::uint64_t> sites_b2;

  double mean_tau() const {
    return tau_count == 0 ? 0.0 : static_cast<double>(tau_sum) / static_cast<double>(tau_count);
  }
  std::uint64_t site_count(compiler::RejectSite s) const;
};

struct ExperimentConfig {
  AdversarySpec adversary;
  unsigned lambda = compiler::kDefaultLambda;
  double epsilon = compiler::kDefaultEpsilon;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  bool keep_trials = false;
};

struct ExperimentResult {
  AggregateReport aggregate;
  std::vector<ExperimentReport> trials;  // filled when keep_trials
};

ExperimentReport run_trial(const AdversarySpec& adv, const qsim::Circuit& c,
                           const qsim::InputBits& x, unsigned lambda,
                           const compiler::CostModel& cost, bool c_of_x, crypto::Rng& rng);

ExperimentResult run_experiment(const ExperimentConfig& config, const qsim::Circuit& c,
                                const qsim::InputBits& x);

// key=value lines: strategy, trials, wins, bottoms, late, delta, mean_tau,
// b1_accepts, b2_accepts, rejection_sites, rejection_sites_b1, rejection_sites_b2.
std::string summary(const AggregateReport& r);

}  // namespace pvqc::harness
