// Byte-exact vectors. Expected digests were computed with Python's hashlib /
// hmac (tests/oracle/gen_vectors.py) and frozen here and in support/vectors.cpp.

#include <gtest/gtest.h>

#include "pvqc/commit.hpp"
#include "pvqc/compiler.hpp"
#include "pvqc/dvproof.hpp"
#include "pvqc/timestamp.hpp"
#include "pvqc/tlp.hpp"
#include "support/vectors.hpp"

namespace pvqc {
namespace {

const Digest kZero{};

template <std::size_t N>
FixedBytes<N> filled(std::uint8_t v) {
  FixedBytes<N> out;
  out.fill(v);
  return out;
}

TEST(Vectors, ChainStepFromZeroSeed) {
  EXPECT_EQ(to_hex(tlp::chain_step(kZero, 0)),
            "a536da9dfee29930a86f5ef11b27eff6d8e7c5f6f7af63c55a99582043215bf0");
  EXPECT_EQ(to_hex(tlp::chain_step(kZero, 1)),
            "247963d6539d33f7078804183732e6e6a183ab161922c12a06502cefac4f74b7");
}

TEST(Vectors, SetupKeyAtMuTwo) {
  auto [tpk, tsk] = tlp::setup_with_seed(128, 2, kZero);
  EXPECT_EQ(tpk.mu, 2u);
  EXPECT_EQ(to_hex(tlp::chain_step(tlp::chain_step(kZero, 0), 1)),
            "cc56d46cd33e9c7da363480ed99e3fe190e472cdd3a337ed82364d3dd7338b13");
  EXPECT_EQ(to_hex(tsk.key), "225621139e0ca2841a80c2296d2d14cec94085e7d1412b03ceec0b69f8be6515");
}

TEST(Vectors, PuzzleRecord) {
  auto [tpk, tsk] = tlp::setup_with_seed(128, 2, kZero);
  Nonce nonce;
  for (std::size_t i = 0; i < nonce.size(); ++i) nonce[i] = static_cast<std::uint8_t>(i);
  auto o = tlp::gen_puzzle_with_nonce(as_bytes("abc"), tsk, nonce);
  EXPECT_EQ(to_hex(o.ciphertext), "ce6f24");
  EXPECT_EQ(to_hex(o.tag), "9aeae1e6c1df047502a94b351fc83f57c08d2a505b3d3cc8d719c5a21d70e4df");
  const auto bytes = tlp::serialize(o);
  EXPECT_EQ(to_hex(bytes),
            "505651310102000102030405060708090a0b0c0d0e0f00000003ce6f249aeae1e6c1df047502a94b35"
            "1fc83f57c08d2a505b3d3cc8d719c5a21d70e4df");
  EXPECT_EQ(tlp::serialize(tlp::parse_puzzle(bytes)), bytes);
  EXPECT_EQ(tlp::solve(tpk, o), Bytes({'a', 'b', 'c'}));
}

TEST(Vectors, CommitDigests) {
  EXPECT_EQ(to_hex(commit::commit(as_bytes("ab"), kZero).digest),
            "975c906323886a418fdee0d1b0e135409903e85b01d384c363aef70705f79247");
  EXPECT_EQ(to_hex(commit::commit({}, kZero).digest),
            "ea2915bc9a85fde402eb4971e9cdd72ce8fb110299bd4d12da2fbf80deb1815a");
}

TEST(Vectors, StampTag) {
  EXPECT_EQ(to_hex(timestamp::stamp_tag(filled<32>(0x11), crypto::sha256(as_bytes("hello")), 7)),
            "c521cf1408db3191146e26ab6299890426070d9625184f5460c7cdadea8eb766");
}

TEST(Vectors, ProofTag) {
  dvproof::PublicKey pk{filled<32>(0xaa), filled<32>(0xbb), filled<16>(0xcc)};
  const Bytes key(32, 0x22);
  EXPECT_EQ(to_hex(dvproof::proof_tag(key, pk, 1)),
            "41b4cbd1215d553ad48a5f165b07e03431d4c6a6e02f1775eaa52f1b4698dcc8");
}

TEST(Vectors, ProofAndTokenLayout) {
  dvproof::Proof pi{1, filled<32>(0x07)};
  auto bytes = dvproof::serialize(pi);
  ASSERT_EQ(bytes.size(), 4u + 1 + 1 + 32);
  EXPECT_EQ(to_hex(ByteView(bytes).first(6)), "505651500101");
  EXPECT_EQ(dvproof::parse_proof(bytes), pi);

  dvproof::OracleToken token{Bytes(32, 0x01), filled<16>(0x02)};
  auto tb = dvproof::serialize(token);
  ASSERT_EQ(tb.size(), 4u + 1 + 32 + 16);
  EXPECT_EQ(to_hex(ByteView(tb).first(5)), "5056514f01");
  EXPECT_EQ(dvproof::parse_token(tb), token);
}

TEST(Vectors, LedgerFileLayout) {
  timestamp::Record rec{filled<32>(0x01), 0x0102030405060708ull, filled<32>(0x02)};
  auto bytes = timestamp::serialize_records({rec});
  ASSERT_EQ(bytes.size(), 5u + 72);
  EXPECT_EQ(to_hex(ByteView(bytes).first(5)), "5056514c01");
  EXPECT_EQ(to_hex(ByteView(bytes).subspan(37, 8)), "0102030405060708");
  EXPECT_EQ(timestamp::parse_records(bytes), std::vector<timestamp::Record>{rec});
}

TEST(Vectors, CrsLayout) {
  compiler::Crs crs;
  crs.tpk = {filled<32>(0x10), 9, 9};
  crs.pk = {filled<32>(0x20), filled<32>(0x30), filled<16>(0x40)};
  crs.o = tlp::Puzzle{filled<16>(0x50), Bytes(3, 0x60), filled<32>(0x70)};
  crs.d.digest = filled<32>(0x80);
  crs.delta = 9;
  auto bytes = compiler::serialize(crs);
  const std::size_t puzzle_len = 4 + 1 + 1 + 16 + 4 + 3 + 32;
  ASSERT_EQ(bytes.size(), 5u + 32 + 8 + 8 + 32 + 32 + 16 + puzzle_len + 32 + 8);
  EXPECT_EQ(to_hex(ByteView(bytes).first(5)), "5056514301");
  EXPECT_EQ(to_hex(ByteView(bytes).subspan(37, 16)), "00000000000000090000000000000009");
  EXPECT_EQ(to_hex(ByteView(bytes).subspan(133, 6)), "505651310102");
  EXPECT_EQ(to_hex(ByteView(bytes).last(8)), "0000000000000009");
  EXPECT_EQ(compiler::parse_crs(bytes), crs);
}

TEST(Vectors, AllKnownAnswers) {
  for (const auto& v : testing::known_answers()) EXPECT_EQ(v.actual_hex, v.expected_hex) << v.label;
}

TEST(Vectors, AllRoundTrips) {
  for (const auto& r : testing::round_trips()) EXPECT_TRUE(r.identical) << r.label;
}

}  // namespace
}  // namespace pvqc
