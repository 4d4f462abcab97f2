#include <gtest/gtest.h>

#include "pvqc/error.hpp"
#include "pvqc/harness.hpp"
#include "support/fixtures.hpp"

namespace pvqc::harness {
namespace {

using compiler::RejectSite;

ExperimentResult run(Strategy s, std::uint64_t trials, const testing::Statement& st,
                     std::optional<std::uint64_t> budget = std::nullopt) {
  ExperimentConfig cfg;
  cfg.adversary = {s, budget};
  cfg.trials = trials;
  cfg.seed = 5;
  cfg.keep_trials = true;
  return run_experiment(cfg, st.circuit, st.input);
}

class HarnessTest : public ::testing::Test {
 protected:
  testing::Statement yes = testing::mirror_statement(5, 10, 2, true);
};

TEST(Names, RoundTrip) {
  for (auto s : {Strategy::Honest, Strategy::A1GuessKey, Strategy::A2SolveThenForge,
                 Strategy::A3AltOpening, Strategy::A4RandomTag}) {
    EXPECT_EQ(strategy_from_name(name(s)), s);
  }
  EXPECT_EQ(name(Strategy::A2SolveThenForge), "a2");
  EXPECT_THROW(strategy_from_name("a5"), ParameterError);
}

TEST_F(HarnessTest, HonestNeverWinsAndAlwaysAccepts) {
  auto r = run(Strategy::Honest, 20, yes).aggregate;
  EXPECT_EQ(r.wins, 0u);
  EXPECT_EQ(r.b1_accepts, 20u);
  EXPECT_EQ(r.b2_accepts, 20u);
  EXPECT_TRUE(r.reveal_exact);
}

TEST_F(HarnessTest, HonestOnFalseStatementIsBottom) {
  auto r = run(Strategy::Honest, 5, testing::rejecting_statement()).aggregate;
  EXPECT_EQ(r.bottoms, 5u);
  EXPECT_EQ(r.wins, 0u);
}

TEST_F(HarnessTest, A1RejectedByCommitmentThenTag) {
  auto res = run(Strategy::A1GuessKey, 200, yes);
  EXPECT_EQ(res.aggregate.wins, 0u);
  for (const auto& t : res.trials) {
    EXPECT_EQ(t.site1, RejectSite::Commitment);
    EXPECT_EQ(t.site2, RejectSite::MacTag);
    EXPECT_LE(t.steps_used, t.budget);
  }
}

TEST_F(HarnessTest, A2IsLateAndRejectedByTimestamp) {
  auto res = run(Strategy::A2SolveThenForge, 20, yes);
  EXPECT_EQ(res.aggregate.wins, 0u);
  EXPECT_EQ(res.aggregate.late, 20u);
  for (const auto& t : res.trials) {
    EXPECT_GT(t.tau, res.aggregate.delta);
    EXPECT_EQ(t.site1, RejectSite::Timestamp);
    EXPECT_EQ(t.site2, RejectSite::Timestamp);
    EXPECT_EQ(t.steps_used, res.aggregate.delta - 1);
  }
  EXPECT_TRUE(res.aggregate.budget_respected);
}

TEST_F(HarnessTest, A2WithoutBudgetIsStillLate) {
  // A generous budget only lets the walk finish in time; the forgery it
  // enables still lands after Delta.
  auto res = run(Strategy::A2SolveThenForge, 3, testing::rejecting_statement(),
                 MeteredClock::kUnlimited / 2);
  EXPECT_EQ(res.aggregate.late, 0u);
  for (const auto& t : res.trials) {
    EXPECT_GT(t.tau, res.aggregate.delta);
    EXPECT_FALSE(t.b1);
  }
}

TEST_F(HarnessTest, A2ForgeryWouldPassWithoutDeadline) {
  // Same forgery checked against a CRS with a looser deadline accepts:
  // timestamp gating is the only barrier once the key is public.
  crypto::DeterministicRng rng(1);
  auto no = testing::rejecting_statement();
  auto cost = compiler::CostModel::for_circuit(no.circuit);
  auto [crs, token] = compiler::setup(256, no.circuit, no.input, cost, rng);
  auto ledger = timestamp::Ledger::in_memory(rng.bytes<32>());
  MeteredClock clock;
  auto y = compiler::reveal(crs, clock);
  clock.charge(kForgeCost);
  auto pi = dvproof::forge(dvproof::SecretKey{y.sk_bytes}, crs.pk, 1);
  compiler::TimestampedProof pt{pi, ledger.stamp(dvproof::serialize(pi), clock)};
  EXPECT_EQ(compiler::verify(crs, no.circuit, no.input, pt, y, ledger).site, RejectSite::Timestamp);
  auto loose = crs;
  loose.delta = pt.tau();
  EXPECT_TRUE(compiler::verify(loose, no.circuit, no.input, pt, y, ledger).accept);
}

TEST_F(HarnessTest, A3RejectedByCommitment) {
  auto res = run(Strategy::A3AltOpening, 200, yes);
  EXPECT_EQ(res.aggregate.wins, 0u);
  EXPECT_EQ(res.aggregate.site_count(RejectSite::Commitment), 200u);
  EXPECT_EQ(res.aggregate.sites_b1.at(RejectSite::Commitment), 200u);
}

TEST_F(HarnessTest, A4HitsClaimedBitSite) {
  auto res = run(Strategy::A4RandomTag, 200, yes);
  EXPECT_EQ(res.aggregate.wins, 0u);
  const auto bits = res.aggregate.sites_b2.at(RejectSite::ClaimedBit);
  const auto tags = res.aggregate.sites_b2.at(RejectSite::MacTag);
  EXPECT_EQ(bits + tags, 200u);
  EXPECT_GT(bits, 60u);
  EXPECT_GT(tags, 60u);
}

TEST_F(HarnessTest, TightBudgetGivesBottom) {
  auto res = run(Strategy::A1GuessKey, 3, yes, 0);
  EXPECT_EQ(res.aggregate.bottoms, 3u);
  EXPECT_EQ(res.aggregate.wins, 0u);
  EXPECT_TRUE(res.aggregate.budget_respected);
}

TEST_F(HarnessTest, WinBitMatchesFormula) {
  for (auto s : {Strategy::A1GuessKey, Strategy::A3AltOpening, Strategy::A4RandomTag}) {
    auto res = run(s, 50, testing::rejecting_statement());
    EXPECT_TRUE(res.aggregate.formula_consistent);
    for (const auto& t : res.trials) {
      EXPECT_EQ(t.win, win_formula(t));
      EXPECT_FALSE(t.c_of_x);
    }
  }
}

TEST_F(HarnessTest, Reproducible) {
  auto a = run(Strategy::A4RandomTag, 30, yes);
  auto b = run(Strategy::A4RandomTag, 30, yes);
  EXPECT_EQ(summary(a.aggregate), summary(b.aggregate));
}

TEST_F(HarnessTest, SummaryKeys) {
  auto text = summary(run(Strategy::A1GuessKey, 4, yes).aggregate);
  for (const char* key : {"strategy=a1\n", "trials=4\n", "wins=0\n", "bottoms=0\n", "late=0\n",
                          "b1_accepts=0\n", "b2_accepts=0\n",
                          "rejection_sites=timestamp:0,statement:0,ledger:0,commitment:4,claimed_bit:0,mac_tag:4\n"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
}

}  // namespace
}  // namespace pvqc::harness
