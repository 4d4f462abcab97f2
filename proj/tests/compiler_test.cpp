#include <gtest/gtest.h>

#include "pvqc/compiler.hpp"
#include "pvqc/error.hpp"
#include "support/fixtures.hpp"

namespace pvqc::compiler {
namespace {

class CompilerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    cost = CostModel::for_circuit(st.circuit);
    out = setup(kDefaultLambda, st.circuit, st.input, cost, rng);
  }

  crypto::DeterministicRng rng{21};
  testing::Statement st = testing::mirror_statement(5, 20, 3, true);
  CostModel cost;
  SetupOutput out;
  timestamp::Ledger ledger = timestamp::Ledger::in_memory(Digest{1});
  MeteredClock clock;
};

TEST(Delta, Formula) {
  EXPECT_EQ(delta_for({0.5, 4}), 9u);
  EXPECT_EQ(delta_for({0.5, 1}), 2u);
  EXPECT_EQ(delta_for({0.5, 100}), 1001u);
  EXPECT_EQ(delta_for({1.0, 3}), 10u);
  EXPECT_EQ(delta_for({0.5, 36}), 217u);
  EXPECT_THROW(delta_for({0.0, 4}), ParameterError);
  EXPECT_THROW(delta_for({0.5, 0}), ParameterError);
}

TEST(Delta, ExceedsChargedCost) {
  for (std::uint64_t t = 1; t < 2000; t += 7) {
    for (double eps : {0.01, 0.5, 1.0}) EXPECT_GT(delta_for({eps, t}), t);
  }
}

TEST(Delta, CostModelFromDepth) {
  auto st = testing::mirror_statement(5, 20, 3, true);
  EXPECT_EQ(CostModel::for_circuit(st.circuit).t_units, qsim::circuit_depth(st.circuit) + 16);
}

TEST_F(CompilerTest, CrsShape) {
  EXPECT_EQ(out.crs.delta, delta_for(cost));
  EXPECT_EQ(out.crs.tpk.mu, out.crs.delta);
  EXPECT_EQ(out.crs.o.ciphertext.size(), kDefaultLambda / 8 + 32);
  EXPECT_EQ(out.token.session_nonce, out.crs.pk.session_nonce);
}

TEST_F(CompilerTest, HonestPipelineAccepts) {
  auto pi = prove(out.crs, st.circuit, st.input, out.token, ledger, clock, cost);
  EXPECT_EQ(pi.tau(), cost.t_units);
  EXPECT_LE(pi.tau(), out.crs.delta);
  MeteredClock reveal_clock;
  auto y = reveal(out.crs, reveal_clock);
  EXPECT_EQ(reveal_clock.now(), out.crs.delta);
  EXPECT_EQ(y.sk_bytes, out.token.mac_key);
  instrument::Probe probe;
  auto v = verify(out.crs, st.circuit, st.input, pi, y, ledger);
  EXPECT_TRUE(v.accept);
  EXPECT_EQ(v.site, RejectSite::None);
  EXPECT_EQ(probe.simulator_runs(), 0u);
  EXPECT_EQ(probe.chain_steps(), 0u);
}

TEST_F(CompilerTest, RejectionSites) {
  auto pi = prove(out.crs, st.circuit, st.input, out.token, ledger, clock, cost);
  MeteredClock rc;
  auto y = reveal(out.crs, rc);

  auto late = pi;
  late.stamp.tau = out.crs.delta + 1;
  EXPECT_EQ(verify(out.crs, st.circuit, st.input, late, y, ledger).site, RejectSite::Timestamp);

  auto other_input = st.input;
  other_input[0] ^= 1;
  EXPECT_EQ(verify(out.crs, st.circuit, other_input, pi, y, ledger).site, RejectSite::Statement);

  auto unstamped = pi;
  unstamped.stamp.tau += 1;
  EXPECT_EQ(verify(out.crs, st.circuit, st.input, unstamped, y, ledger).site, RejectSite::Ledger);
  auto empty = timestamp::Ledger::in_memory(Digest{1});
  EXPECT_EQ(verify(out.crs, st.circuit, st.input, pi, y, empty).site, RejectSite::Ledger);

  auto bad_y = y;
  bad_y.r[0] ^= 1;
  EXPECT_EQ(verify(out.crs, st.circuit, st.input, pi, bad_y, ledger).site, RejectSite::Commitment);
}

TEST_F(CompilerTest, StampAtDeltaStillAccepts) {
  // Boundary: tau == Delta is on time.
  clock.charge(out.crs.delta - cost.t_units);
  auto pi = prove(out.crs, st.circuit, st.input, out.token, ledger, clock, cost);
  EXPECT_EQ(pi.tau(), out.crs.delta);
  MeteredClock rc;
  EXPECT_TRUE(verify(out.crs, st.circuit, st.input, pi, reveal(out.crs, rc), ledger).accept);
}

TEST_F(CompilerTest, PostRevealForgeryIsLate) {
  MeteredClock shared;
  auto y = reveal(out.crs, shared);
  shared.charge(1);
  auto forged = dvproof::forge(dvproof::SecretKey{y.sk_bytes}, out.crs.pk, 1);
  auto stamp = ledger.stamp(dvproof::serialize(forged), shared);
  TimestampedProof pi{forged, stamp};
  EXPECT_GT(pi.tau(), out.crs.delta);
  EXPECT_EQ(verify(out.crs, st.circuit, st.input, pi, y, ledger).site, RejectSite::Timestamp);
}

TEST_F(CompilerTest, ClaimedBitAndTagSites) {
  MeteredClock rc;
  auto y = reveal(out.crs, rc);
  auto zero = dvproof::forge(dvproof::SecretKey{y.sk_bytes}, out.crs.pk, 0);
  TimestampedProof pz{zero, ledger.stamp(dvproof::serialize(zero), clock)};
  EXPECT_EQ(verify(out.crs, st.circuit, st.input, pz, y, ledger).site, RejectSite::ClaimedBit);
  dvproof::Proof junk{1, rng.bytes<32>()};
  TimestampedProof pj{junk, ledger.stamp(dvproof::serialize(junk), clock)};
  EXPECT_EQ(verify(out.crs, st.circuit, st.input, pj, y, ledger).site, RejectSite::MacTag);
}

TEST_F(CompilerTest, FalseStatementIsRefused) {
  auto no = testing::rejecting_statement();
  auto c = CostModel::for_circuit(no.circuit);
  auto o = setup(kDefaultLambda, no.circuit, no.input, c, rng);
  EXPECT_THROW(prove(o.crs, no.circuit, no.input, o.token, ledger, clock, c), ProofRefused);
  EXPECT_TRUE(ledger.records().empty());
}

TEST_F(CompilerTest, ProveRespectsBudget) {
  clock.set_budget(cost.t_units - 1);
  EXPECT_THROW(prove(out.crs, st.circuit, st.input, out.token, ledger, clock, cost), BudgetExhausted);
}

TEST_F(CompilerTest, SerializationRoundTrips) {
  auto bytes = serialize(out.crs);
  EXPECT_EQ(parse_crs(bytes), out.crs);
  EXPECT_EQ(serialize(parse_crs(bytes)), bytes);
  auto pi = prove(out.crs, st.circuit, st.input, out.token, ledger, clock, cost);
  auto pb = serialize(pi);
  EXPECT_EQ(parse_timestamped_proof(pb), pi);
  EXPECT_EQ(serialize(parse_timestamped_proof(pb)), pb);

  auto inconsistent = bytes;
  inconsistent.back() ^= 1;
  EXPECT_THROW(parse_crs(inconsistent), FormatError);
  auto truncated = bytes;
  truncated.resize(bytes.size() - 3);
  EXPECT_THROW(parse_crs(truncated), FormatError);
}

TEST(Plaintext, Split) {
  Bytes p(40);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint8_t>(i);
  auto y = parse_plaintext(p);
  EXPECT_EQ(y.sk_bytes.size(), 8u);
  EXPECT_EQ(y.r[0], 8);
  EXPECT_THROW(parse_plaintext(Bytes(32)), FormatError);
}

}  // namespace
}  // namespace pvqc::compiler
