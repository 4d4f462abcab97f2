#include "pvqc/dvproof.hpp"

#include "pvqc/error.hpp"

namespace pvqc::dvproof {
namespace {

constexpr std::uint8_t kVersion = 0x01;

void check_statement(const PublicKey& pk, const qsim::Circuit& c, const qsim::InputBits& x) {
  if (x.size() != c.input_width) {
    throw ParameterError("input has " + std::to_string(x.size()) + " bits, circuit expects " +
                         std::to_string(c.input_width));
  }
  if (pk.circuit_digest != qsim::circuit_digest(c) || pk.input_digest != qsim::input_digest(x)) {
    throw ParameterError("public key is not bound to this circuit and input");
  }
}

}  // namespace

Digest proof_tag(ByteView mac_key, const PublicKey& pk, std::uint8_t claimed_bit) {
  const std::uint8_t bit[1] = {claimed_bit};
  return crypto::hmac_sha256(mac_key, {as_bytes("DVPROOFv1"), pk.circuit_digest,
                                       pk.input_digest, pk.session_nonce, bit});
}

std::pair<PublicKey, SecretKey> IdealMacBackend::keygen(unsigned lambda, const qsim::Circuit& c,
                                                        const qsim::InputBits& x,
                                                        crypto::Rng& rng) const {
  if (lambda < 128 || lambda % 8 != 0 || lambda > 4096) {
    throw ParameterError("dvproof keygen: lambda must be a multiple of 8 in [128, 4096]");
  }
  qsim::validate(c);
  if (x.size() != c.input_width) {
    throw ParameterError("input has " + std::to_string(x.size()) + " bits, circuit expects " +
                         std::to_string(c.input_width));
  }
  PublicKey pk{qsim::circuit_digest(c), qsim::input_digest(x), rng.bytes<16>()};
  SecretKey sk{rng.bytes(lambda / 8)};
  return {pk, sk};
}

Proof IdealMacBackend::prove(const OracleToken& token, const PublicKey& pk,
                             const qsim::Circuit& c, const qsim::InputBits& x) const {
  if (token.session_nonce != pk.session_nonce) {
    throw ParameterError("oracle token belongs to a different session");
  }
  check_statement(pk, c, x);
  if (!qsim::accepts(c, x)) throw ProofRefused("cannot prove false statement: C(x) = 0");
  return forge(SecretKey{token.mac_key}, pk, 1);
}

Verdict IdealMacBackend::verify(const PublicKey& pk, const SecretKey& sk, const Proof& pi) const {
  if (pi.claimed_bit != 1) return Verdict::ClaimedBitZero;
  if (!crypto::equal_ct(proof_tag(sk.mac_key, pk, pi.claimed_bit), pi.tag)) return Verdict::BadTag;
  return Verdict::Accept;
}

const Backend& default_backend() {
  static const IdealMacBackend backend;
  return backend;
}

Proof forge(const SecretKey& sk, const PublicKey& pk, std::uint8_t claimed_bit) {
  return {claimed_bit, proof_tag(sk.mac_key, pk, claimed_bit)};
}

Bytes serialize(const Proof& pi) {
  ByteWriter w;
  w.put("PVQP").u8(kVersion).u8(pi.claimed_bit).put(pi.tag);
  return std::move(w).bytes();
}

Proof parse_proof(ByteReader& r) {
  r.expect("PVQP", "proof");
  if (r.u8() != kVersion) throw FormatError("proof: unsupported version");
  Proof pi;
  pi.claimed_bit = r.u8();
  if (pi.claimed_bit > 1) throw FormatError("proof: claimed bit must be 0 or 1");
  pi.tag = r.fixed<32>();
  return pi;
}

Proof parse_proof(ByteView data) {
  ByteReader r(data);
  auto pi = parse_proof(r);
  r.expect_done("proof");
  return pi;
}

Bytes serialize(const OracleToken& token) {
  ByteWriter w;
  w.put("PVQO").u8(kVersion).put(token.mac_key).put(token.session_nonce);
  return std::move(w).bytes();
}

OracleToken parse_token(ByteView data) {
  ByteReader r(data);
  r.expect("PVQO", "oracle token");
  if (r.u8() != kVersion) throw FormatError("oracle token: unsupported version");
  if (r.remaining() < 16 + 16) throw FormatError("oracle token: truncated");
  OracleToken t;
  auto key = r.take(r.remaining() - 16);
  t.mac_key.assign(key.begin(), key.end());
  t.session_nonce = r.fixed<16>();
  return t;
}

}  // namespace pvqc::dvproof
