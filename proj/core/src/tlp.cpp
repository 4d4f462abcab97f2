#include "pvqc/tlp.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "pvqc/error.hpp"

namespace pvqc::tlp {
namespace {

constexpr std::string_view kChainDomain = "TLPCHAINv1";
constexpr std::string_view kKeyDomain = "TLPKEYv1";
constexpr std::string_view kSubkeyDomain = "TLPSUBv1";
constexpr std::string_view kStreamDomain = "TLPSTRMv1";
constexpr std::uint8_t kVersion = 0x01;
constexpr std::uint8_t kPuzzleRecord = 0x02;
constexpr std::size_t kChainInputSize = kChainDomain.size() + 8 + 32;

// Reusable chain input buffer: domain || u64be(i) || s
struct ChainBuffer {
  std::array<std::uint8_t, kChainInputSize> buf{};
  ChainBuffer() { std::memcpy(buf.data(), kChainDomain.data(), kChainDomain.size()); }
  Digest step(const Digest& s, std::uint64_t index) {
    auto* p = buf.data() + kChainDomain.size();
    for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(index >> (56 - 8 * i));
    std::memcpy(p + 8, s.data(), s.size());
    Digest out{};
    SHA256(buf.data(), buf.size(), out.data());
    ++instrument::counters().chain_steps;
    return out;
  }
};

Digest subkey(const Digest& key, const Nonce& nonce) {
  return crypto::sha256({as_bytes(kSubkeyDomain), key, nonce});
}

void apply_keystream(const Digest& sub, ByteView in, std::uint8_t* out) {
  crypto::Sha256 h;
  for (std::size_t off = 0, block = 0; off < in.size(); off += 32, ++block) {
    auto ks = h.update(kStreamDomain).update(sub).update_u64(block).finish();
    auto n = std::min<std::size_t>(32, in.size() - off);
    for (std::size_t i = 0; i < n; ++i) out[off + i] = in[off + i] ^ ks[i];
  }
}

Digest puzzle_tag(const Digest& sub, const Nonce& nonce, ByteView ciphertext) {
  return crypto::hmac_sha256(sub, {nonce, ciphertext});
}

void check_setup(std::uint64_t delta_steps) {
  if (delta_steps == 0) throw ParameterError("TLP setup: delta_steps must be at least 1");
}

}  // namespace

Digest chain_step(const Digest& s, std::uint64_t index) { return ChainBuffer{}.step(s, index); }

Digest derive_key(const Digest& endpoint) {
  return crypto::sha256({as_bytes(kKeyDomain), endpoint});
}

const Digest& ChainWalker::run(MeteredClock* meter, const Progress& progress) {
  ChainBuffer chain;
  while (done_ < target_) {
    if (meter != nullptr) meter->charge(1);
    state_ = chain.step(state_, done_);
    ++done_;
    if (progress && done_ % kProgressInterval == 0) progress(done_, target_);
  }
  return state_;
}

std::pair<PublicParams, SecretParams> setup_with_seed(unsigned lambda,
                                                      std::uint64_t delta_steps,
                                                      const Digest& seed) {
  if (lambda == 0) throw ParameterError("TLP setup: lambda must be positive");
  check_setup(delta_steps);
  PublicParams tpk{seed, delta_steps, delta_steps};
  ChainWalker walker(seed, tpk.mu);
  SecretParams tsk{derive_key(walker.run())};
  return {tpk, tsk};
}

std::pair<PublicParams, SecretParams> setup(unsigned lambda, std::uint64_t delta_steps,
                                            crypto::Rng& rng) {
  check_setup(delta_steps);
  return setup_with_seed(lambda, delta_steps, rng.bytes<32>());
}

Puzzle gen_puzzle_with_nonce(ByteView message, const SecretParams& tsk, const Nonce& nonce) {
  if (message.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ParameterError("TLP puzzle message exceeds 2^32 - 1 bytes");
  }
  Puzzle o;
  o.nonce = nonce;
  o.ciphertext.resize(message.size());
  auto sub = subkey(tsk.key, nonce);
  apply_keystream(sub, message, o.ciphertext.data());
  o.tag = puzzle_tag(sub, nonce, o.ciphertext);
  return o;
}

Puzzle gen_puzzle(ByteView message, const PublicParams& tpk, const SecretParams& tsk,
                  crypto::Rng& rng) {
  (void)tpk;
  return gen_puzzle_with_nonce(message, tsk, rng.bytes<16>());
}

Bytes open_with_key(const Puzzle& puzzle, const Digest& key) {
  auto sub = subkey(key, puzzle.nonce);
  if (!crypto::equal_ct(puzzle_tag(sub, puzzle.nonce, puzzle.ciphertext), puzzle.tag)) {
    throw IntegrityError("corrupt puzzle or wrong parameters");
  }
  Bytes plain(puzzle.ciphertext.size());
  apply_keystream(sub, puzzle.ciphertext, plain.data());
  return plain;
}

Bytes solve(const PublicParams& tpk, const Puzzle& puzzle, MeteredClock* meter,
            const ChainWalker::Progress& progress) {
  ChainWalker walker(tpk.seed, tpk.mu);
  return open_with_key(puzzle, derive_key(walker.run(meter, progress)));
}

std::uint64_t calibrate_mu(double t, double epsilon, double hash_rate) {
  if (!(t > 0) || !(epsilon > 0) || !(hash_rate > 0)) {
    throw ParameterError("calibrate_mu: t, epsilon and hash_rate must be positive");
  }
  const double steps = hash_rate * std::pow(t, 1.0 + epsilon);
  if (!std::isfinite(steps) || steps >= 0x1.0p63) {
    throw ParameterError("calibrate_mu: step count out of range");
  }
  // An exact integer that picked up rounding noise from pow() must not
  // round up to the next step.
  const double nearest = std::round(steps);
  const double ceiled =
      std::abs(steps - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::ceil(steps);
  return static_cast<std::uint64_t>(ceiled) + 1;
}

Bytes serialize(const Puzzle& puzzle) {
  ByteWriter w;
  w.put("PVQ1").u8(kVersion).u8(kPuzzleRecord).put(puzzle.nonce);
  w.u32(static_cast<std::uint32_t>(puzzle.ciphertext.size())).put(puzzle.ciphertext).put(puzzle.tag);
  return std::move(w).bytes();
}

Puzzle parse_puzzle(ByteReader& r) {
  r.expect("PVQ1", "puzzle");
  if (r.u8() != kVersion) throw FormatError("puzzle: unsupported version");
  if (r.u8() != kPuzzleRecord) throw FormatError("puzzle: unexpected record type");
  Puzzle o;
  o.nonce = r.fixed<16>();
  auto len = r.u32();
  auto ct = r.take(len);
  o.ciphertext.assign(ct.begin(), ct.end());
  o.tag = r.fixed<32>();
  return o;
}

Puzzle parse_puzzle(ByteView data) {
  ByteReader r(data);
  auto o = parse_puzzle(r);
  r.expect_done("puzzle");
  return o;
}

}  // namespace pvqc::tlp
