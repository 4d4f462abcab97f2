#include "pvqc/crypto.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/rand.h>

#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>

#include "pvqc/error.hpp"

namespace pvqc::crypto {

struct Sha256::Impl {
  EVP_MD_CTX* ctx = nullptr;
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {
  impl_->ctx = EVP_MD_CTX_new();
  if (impl_->ctx == nullptr || EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 init failed");
  }
}

Sha256::~Sha256() { EVP_MD_CTX_free(impl_->ctx); }

Sha256& Sha256::update(ByteView data) {
  if (!data.empty()) EVP_DigestUpdate(impl_->ctx, data.data(), data.size());
  return *this;
}

Sha256& Sha256::update_u32(std::uint32_t v) {
  std::uint8_t buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<std::uint8_t>(v >> (24 - 8 * i));
  return update(buf);
}

Sha256& Sha256::update_u64(std::uint64_t v) {
  std::uint8_t buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(v >> (56 - 8 * i));
  return update(buf);
}

Digest Sha256::finish() {
  Digest out{};
  unsigned len = 0;
  EVP_DigestFinal_ex(impl_->ctx, out.data(), &len);
  EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr);
  return out;
}

Digest sha256(ByteView data) {
  Digest out{};
  unsigned len = 0;
  EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

Digest sha256(std::initializer_list<ByteView> parts) {
  Sha256 h;
  for (auto p : parts) h.update(p);
  return h.finish();
}

Digest hmac_sha256(ByteView key, std::initializer_list<ByteView> parts) {
  std::size_t total = 0;
  for (auto p : parts) total += p.size();
  Bytes msg;
  msg.reserve(total);
  for (auto p : parts) msg.insert(msg.end(), p.begin(), p.end());
  Digest out{};
  unsigned len = 0;
  static const std::uint8_t kEmpty = 0;
  const std::uint8_t* key_ptr = key.empty() ? &kEmpty : key.data();
  if (HMAC(EVP_sha256(), key_ptr, static_cast<int>(key.size()), msg.data(), msg.size(),
           out.data(), &len) == nullptr) {
    throw Error("HMAC-SHA-256 failed");
  }
  return out;
}

bool equal_ct(ByteView a, ByteView b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  return CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

std::uint64_t Rng::next_u64() {
  auto b = bytes<8>();
  std::uint64_t v = 0;
  for (auto x : b) v = v << 8 | x;
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("uniform: bound must be positive");
  // rejection sampling against modulo bias
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    auto v = next_u64();
    if (v < limit) return v % bound;
  }
}

double Rng::unit_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

void SystemRng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw Error("system randomness unavailable");
  }
}

DeterministicRng::DeterministicRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {}

void DeterministicRng::fill(std::span<std::uint8_t> out) {
  for (auto& byte : out) {
    if (used_ == block_.size()) {
      block_ = Sha256()
                   .update("PVQCDRBGv1")
                   .update_u64(seed_)
                   .update_u64(stream_)
                   .update_u64(counter_++)
                   .finish();
      used_ = 0;
    }
    byte = block_[used_++];
  }
}

std::unique_ptr<Rng> default_rng() {
  if (const char* env = std::getenv("PVQC_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::make_unique<DeterministicRng>(std::stoull(env, nullptr, 0));
    } catch (const std::exception&) {
      throw ParameterError(std::string("PVQC_SEED is not an integer: ") + env);
    }
  }
  return std::make_unique<SystemRng>();
}

}  // namespace pvqc::crypto
