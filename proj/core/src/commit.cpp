#include "pvqc/commit.hpp"

#include <limits>

#include "pvqc/crypto.hpp"
#include "pvqc/error.hpp"

namespace pvqc::commit {
namespace {

Digest commit_digest(ByteView message, ByteView randomness) {
  return crypto::Sha256()
      .update("COMMITv1")
      .update_u32(static_cast<std::uint32_t>(message.size()))
      .update(message)
      .update(randomness)
      .finish();
}

}  // namespace

Commitment commit(ByteView message, ByteView randomness) {
  if (randomness.size() != kRandomnessSize) {
    throw ParameterError("commit: randomness must be exactly 32 bytes");
  }
  if (message.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ParameterError("commit: message too long");
  }
  return {commit_digest(message, randomness)};
}

bool verify_opening(const Commitment& d, ByteView message, ByteView randomness) {
  if (randomness.size() != kRandomnessSize) return false;
  if (message.size() > std::numeric_limits<std::uint32_t>::max()) return false;
  return crypto::equal_ct(commit_digest(message, randomness), d.digest);
}

Bytes serialize(const Opening& y) {
  ByteWriter w;
  w.put("PVQY").u8(0x01).u32(static_cast<std::uint32_t>(y.sk_bytes.size()));
  w.put(y.sk_bytes).put(y.r);
  return std::move(w).bytes();
}

Opening parse_opening(ByteView data) {
  ByteReader r(data);
  r.expect("PVQY", "opening");
  if (r.u8() != 0x01) throw FormatError("opening: unsupported version");
  Opening y;
  auto sk = r.take(r.u32());
  y.sk_bytes.assign(sk.begin(), sk.end());
  y.r = r.fixed<kRandomnessSize>();
  r.expect_done("opening");
  return y;
}

}  // namespace pvqc::commit
