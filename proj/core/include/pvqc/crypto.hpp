#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>

#include "pvqc/bytes.hpp"

namespace pvqc::crypto {

// Incremental SHA-256 over concatenated parts.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(ByteView data);
  Sha256& update(std::string_view ascii) { return update(as_bytes(ascii)); }
  Sha256& update_u32(std::uint32_t v);
  Sha256& update_u64(std::uint64_t v);
  Digest finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Digest sha256(ByteView data);
Digest sha256(std::initializer_list<ByteView> parts);

Digest hmac_sha256(ByteView key, std::initializer_list<ByteView> parts);

// Constant-time equality; false on length mismatch.
bool equal_ct(ByteView a, ByteView b);

// Randomness source. Everything that samples keys, seeds, or nonces takes one
// of these so experiment runs can be replayed from a seed.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  template <std::size_t N>
  FixedBytes<N> bytes() {
    FixedBytes<N> out{};
    fill(out);
    return out;
  }
  Bytes bytes(std::size_t n) {
    Bytes out(n);
    fill(out);
    return out;
  }
  std::uint64_t next_u64();
  // Uniform in [0, bound), bound > 0.
  std::uint64_t uniform(std::uint64_t bound);
  double unit_real();
};

// OS entropy via OpenSSL's CSPRNG.
class SystemRng final : public Rng {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

// SHA-256 in counter mode over (seed, stream). Reproducible, not for production keys.
class DeterministicRng final : public Rng {
 public:
  explicit DeterministicRng(std::uint64_t seed, std::uint64_t stream = 0);
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t used_ = block_.size();
};

// DeterministicRng when PVQC_SEED is set, SystemRng otherwise.
std::unique_ptr<Rng> default_rng();

}  // namespace pvqc::crypto
