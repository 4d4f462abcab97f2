#pragma once

#include <cstdint>
#include <functional>

#include "pvqc/bytes.hpp"
#include "pvqc/clock.hpp"
#include "pvqc/crypto.hpp"

// Time-lock puzzle built on a sequential SHA-256 hash chain.
//
// Setup walks the chain s_0 -> s_mu once and keeps a key derived from the end
// point. Any number of puzzles can then be generated cheaply under that key,
// each with its own nonce-bound subkey. Solving requires recomputing the
// whole chain, i.e. exactly mu sequential hash evaluations.
//
// Solving one puzzle reveals the instance key and therefore opens every puzzle
// of the same instance. Callers that need independent deadlines must use
// independent instances.
namespace pvqc::tlp {

struct PublicParams {
  Digest seed{};                 // chain start s_0
  std::uint64_t mu = 0;          // sequential steps
  std::uint64_t delta_steps = 0; // declared solve budget, >= mu

  bool operator==(const PublicParams&) const = default;
};

struct SecretParams {
  Digest key{};
};

struct Puzzle {
  Nonce nonce{};
  Bytes ciphertext;
  Digest tag{};

  bool operator==(const Puzzle&) const = default;
};

// s_{i+1} = SHA-256("TLPCHAINv1" || u64be(i) || s_i)
Digest chain_step(const Digest& s, std::uint64_t index);

// Key derivation from the chain end point s_mu.
Digest derive_key(const Digest& endpoint);

// Resumable walk from a seed towards s_target. One unit is charged to the
// meter before each step is computed.
class ChainWalker {
 public:
  ChainWalker(const Digest& seed, std::uint64_t target)
      : state_(seed), target_(target) {}

  using Progress = std::function<void(std::uint64_t done, std::uint64_t total)>;
  static constexpr std::uint64_t kProgressInterval = std::uint64_t{1} << 16;

  // Runs until the end point is reached. Throws BudgetExhausted if the meter
  // refuses a charge; progress so far is kept and `run` can be called again.
  const Digest& run(MeteredClock* meter = nullptr, const Progress& progress = {});

  std::uint64_t done() const { return done_; }
  std::uint64_t target() const { return target_; }
  bool finished() const { return done_ == target_; }
  const Digest& state() const { return state_; }

 private:
  Digest state_;
  std::uint64_t target_;
  std::uint64_t done_ = 0;
};

std::pair<PublicParams, SecretParams> setup(unsigned lambda, std::uint64_t delta_steps,
                                            crypto::Rng& rng);
// Same as `setup` with a caller-chosen seed (test vectors).
std::pair<PublicParams, SecretParams> setup_with_seed(unsigned lambda,
                                                      std::uint64_t delta_steps,
                                                      const Digest& seed);

// Constant-time in mu: no chain steps.
Puzzle gen_puzzle(ByteView message, const PublicParams& tpk, const SecretParams& tsk,
                  crypto::Rng& rng);
Puzzle gen_puzzle_with_nonce(ByteView message, const SecretParams& tsk, const Nonce& nonce);

// Decrypts a puzzle given the instance key (used by solve and by tests).
Bytes open_with_key(const Puzzle& puzzle, const Digest& key);

// Recomputes the chain (exactly mu steps charged to `meter`), checks the tag,
// and decrypts. Throws IntegrityError on tag mismatch.
Bytes solve(const PublicParams& tpk, const Puzzle& puzzle, MeteredClock* meter = nullptr,
            const ChainWalker::Progress& progress = {});

// mu = ceil(rate * t^(1+epsilon)) + 1 where `t` and `hash_rate` share a time unit.
std::uint64_t calibrate_mu(double t, double epsilon, double hash_rate);

// "PVQ1" || 0x01 || 0x02 || nonce(16) || u32be len || ciphertext || tag(32)
Bytes serialize(const Puzzle& puzzle);
Puzzle parse_puzzle(ByteReader& reader);
Puzzle parse_puzzle(ByteView data);

}  // namespace pvqc::tlp
