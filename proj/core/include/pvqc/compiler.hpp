#pragma once

#include <cstdint>
#include <string_view>

#include "pvqc/clock.hpp"
#include "pvqc/commit.hpp"
#include "pvqc/dvproof.hpp"
#include "pvqc/qsim.hpp"
#include "pvqc/timestamp.hpp"
#include "pvqc/tlp.hpp"

// Time-delayed publicly verifiable delegation.
//
// Setup locks the designated verifier's key (with commitment randomness) in a
// time-lock puzzle whose solve time Delta exceeds T^(1+eps), and publishes the
// puzzle together with a commitment to the key. The prover stamps its proof
// on the ledger before Delta. Anyone can solve the puzzle, check the opening
// against the commitment, and verify the proof, provided it was stamped no
// later than Delta.
namespace pvqc::compiler {

inline constexpr std::uint64_t kDefaultProofOverhead = 16;
inline constexpr double kDefaultEpsilon = 0.5;
inline constexpr unsigned kDefaultLambda = 256;

struct CostModel {
  double epsilon = kDefaultEpsilon;
  std::uint64_t t_units = 1;

  // t_units = depth(C) + overhead
  static CostModel for_circuit(const qsim::Circuit& c, double epsilon = kDefaultEpsilon,
                               std::uint64_t overhead = kDefaultProofOverhead);
};

// ceil(t^(1+eps)) + 1
std::uint64_t delta_for(const CostModel& cost);

struct Crs {
  tlp::PublicParams tpk;
  dvproof::PublicKey pk;
  tlp::Puzzle o;
  commit::Commitment d;
  std::uint64_t delta = 0;

  bool operator==(const Crs&) const = default;
};

struct TimestampedProof {
  dvproof::Proof proof;
  timestamp::Stamp stamp;

  std::uint64_t tau() const { return stamp.tau; }
  bool operator==(const TimestampedProof&) const = default;
};

struct SetupOutput {
  Crs crs;
  dvproof::OracleToken token;
};

SetupOutput setup(unsigned lambda, const qsim::Circuit& c, const qsim::InputBits& x,
                  const CostModel& cost, crypto::Rng& rng,
                  const dvproof::Backend& backend = dvproof::default_backend());

// Charges cost.t_units, obtains the backend proof, and stamps its serialization.
// Throws ProofRefused ("cannot prove false statement") for non-accepting C.
TimestampedProof prove(const Crs& crs, const qsim::Circuit& c, const qsim::InputBits& x,
                       const dvproof::OracleToken& token, timestamp::Ledger& ledger,
                       MeteredClock& clock, const CostModel& cost,
                       const dvproof::Backend& backend = dvproof::default_backend());

// Solves the puzzle (exactly Delta steps on `clock`) and splits the plaintext
// into (sk, r) with r the last 32 bytes.
commit::Opening reveal(const Crs& crs, MeteredClock& clock,
                       const tlp::ChainWalker::Progress& progress = {});
commit::Opening parse_plaintext(ByteView plaintext);

enum class RejectSite {
  None,
  Timestamp,   // tau > Delta
  Statement,   // pk not bound to (C, x)
  Ledger,      // stamp not on the ledger
  Commitment,  // opening does not match d
  ClaimedBit,  // proof asserts 0
  MacTag,      // proof tag does not verify under the opened key
};
std::string_view name(RejectSite site);

struct Verdict {
  bool accept = false;
  RejectSite site = RejectSite::None;
  explicit operator bool() const { return accept; }
};

// Total: every failure is a reject verdict. Never simulates C and never walks
// the hash chain.
Verdict verify(const Crs& crs, const qsim::Circuit& c, const qsim::InputBits& x,
               const TimestampedProof& pi_tau, const commit::Opening& y,
               const timestamp::Ledger& ledger,
               const dvproof::Backend& backend = dvproof::default_backend());

// "PVQC" || 0x01 || seed(32) || u64 mu || u64 Delta || circuit_digest(32) ||
// input_digest(32) || nonce(16) || puzzle record || d(32) || u64 Delta
Bytes serialize(const Crs& crs);
Crs parse_crs(ByteView data);

// Proof record followed by u64be tau || stamp tag(32).
Bytes serialize(const TimestampedProof& p);
TimestampedProof parse_timestamped_proof(ByteView data);

}  // namespace pvqc::compiler
