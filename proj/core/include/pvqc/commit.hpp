#pragma once

#include "pvqc/bytes.hpp"

// Hash commitment: digest = SHA-256("COMMITv1" || u32be(|m|) || m || r) with
// 32 bytes of randomness r. Binding rests on collision resistance; hiding on
// modeling SHA-256 as a random oracle.
namespace pvqc::commit {

inline constexpr std::size_t kRandomnessSize = 32;

struct Commitment {
  Digest digest{};
  bool operator==(const Commitment&) const = default;
};

struct Opening {
  Bytes sk_bytes;
  FixedBytes<kRandomnessSize> r{};
  bool operator==(const Opening&) const = default;
};

Commitment commit(ByteView message, ByteView randomness);
bool verify_opening(const Commitment& d, ByteView message, ByteView randomness);
inline bool verify_opening(const Commitment& d, const Opening& y) {
  return verify_opening(d, y.sk_bytes, y.r);
}

// "PVQY" || 0x01 || u32be len || sk || r(32)
Bytes serialize(const Opening& y);
Opening parse_opening(ByteView data);

}  // namespace pvqc::commit
