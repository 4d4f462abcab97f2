#pragma once

#include <cstdint>

#include "pvqc/bytes.hpp"
#include "pvqc/crypto.hpp"
#include "pvqc/qsim.hpp"

// Designated-verifier proof backend: key generation, proving, and private
// verification for "C(x) = 1".
//
// The shipped backend is an idealized MAC functionality. Its prover is an
// oracle that simulates C exactly and tags the claim only when C accepts.
// Because a classical tag needs the verification key, the honest prover holds
// an OracleToken containing that key. The token is produced at setup next to
// the public parameters, handed only to the honest prover role, and is the
// single place where this backend's trust model differs from a real quantum
// prover, which needs no secret. Anyone holding the key can tag any claim;
// that is the post-reveal forgery the timestamp deadline exists to exclude.
namespace pvqc::dvproof {

struct PublicKey {
  Digest circuit_digest{};
  Digest input_digest{};
  Nonce session_nonce{};
  bool operator==(const PublicKey&) const = default;
};

struct SecretKey {
  Bytes mac_key;
  bool operator==(const SecretKey&) const = default;
};

struct Proof {
  std::uint8_t claimed_bit = 0;
  Digest tag{};
  bool operator==(const Proof&) const = default;
};

// Prover-side capability for the idealized oracle.
struct OracleToken {
  Bytes mac_key;
  Nonce session_nonce{};
  bool operator==(const OracleToken&) const = default;
};

enum class Verdict { Accept, ClaimedBitZero, BadTag };

// HMAC-SHA-256(key, "DVPROOFv1" || circuit_digest || input_digest || nonce || bit)
Digest proof_tag(ByteView mac_key, const PublicKey& pk, std::uint8_t claimed_bit);

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::pair<PublicKey, SecretKey> keygen(unsigned lambda, const qsim::Circuit& c,
                                                 const qsim::InputBits& x,
                                                 crypto::Rng& rng) const = 0;
  // Throws ProofRefused when C(x) = 0.
  virtual Proof prove(const OracleToken& token, const PublicKey& pk, const qsim::Circuit& c,
                      const qsim::InputBits& x) const = 0;
  virtual Verdict verify(const PublicKey& pk, const SecretKey& sk, const Proof& pi) const = 0;
};

class IdealMacBackend final : public Backend {
 public:
  std::pair<PublicKey, SecretKey> keygen(unsigned lambda, const qsim::Circuit& c,
                                         const qsim::InputBits& x,
                                         crypto::Rng& rng) const override;
  Proof prove(const OracleToken& token, const PublicKey& pk, const qsim::Circuit& c,
              const qsim::InputBits& x) const override;
  Verdict verify(const PublicKey& pk, const SecretKey& sk, const Proof& pi) const override;
};

const Backend& default_backend();

// Builds a proof for any claim under a known key.
Proof forge(const SecretKey& sk, const PublicKey& pk, std::uint8_t claimed_bit);

// "PVQP" || 0x01 || claimed_bit || tag(32)
Bytes serialize(const Proof& pi);
Proof parse_proof(ByteReader& reader);
Proof parse_proof(ByteView data);

// "PVQO" || 0x01 || mac_key || session_nonce(16); key length is the remainder.
Bytes serialize(const OracleToken& token);
OracleToken parse_token(ByteView data);

}  // namespace pvqc::dvproof
