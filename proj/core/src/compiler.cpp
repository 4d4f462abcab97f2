#include "pvqc/compiler.hpp"

#include <cmath>

#include "pvqc/error.hpp"

namespace pvqc::compiler {

CostModel CostModel::for_circuit(const qsim::Circuit& c, double epsilon, std::uint64_t overhead) {
  return {epsilon, qsim::circuit_depth(c) + overhead};
}

std::uint64_t delta_for(const CostModel& cost) {
  if (!(cost.epsilon > 0) || !std::isfinite(cost.epsilon)) {
    throw ParameterError("cost model: epsilon must be positive");
  }
  if (cost.t_units == 0) throw ParameterError("cost model: T must be at least 1");
  const double power = std::pow(static_cast<double>(cost.t_units), 1.0 + cost.epsilon);
  if (!std::isfinite(power) || power >= 0x1.0p62) throw ParameterError("cost model: Delta out of range");
  const double nearest = std::round(power);
  const double ceiled =
      std::abs(power - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::ceil(power);
  return static_cast<std::uint64_t>(ceiled) + 1;
}

SetupOutput setup(unsigned lambda, const qsim::Circuit& c, const qsim::InputBits& x,
                  const CostModel& cost, crypto::Rng& rng, const dvproof::Backend& backend) {
  const auto delta = delta_for(cost);
  auto [tpk, tsk] = tlp::setup(lambda, delta, rng);
  auto [pk, sk] = backend.keygen(lambda, c, x, rng);
  const auto r = rng.bytes<commit::kRandomnessSize>();
  const auto d = commit::commit(sk.mac_key, r);

  Bytes plaintext = sk.mac_key;
  plaintext.insert(plaintext.end(), r.begin(), r.end());
  auto o = tlp::gen_puzzle(plaintext, tpk, tsk, rng);

  SetupOutput out;
  out.crs = Crs{tpk, pk, std::move(o), d, delta};
  out.token = dvproof::OracleToken{sk.mac_key, pk.session_nonce};
  return out;
}

TimestampedProof prove(const Crs& crs, const qsim::Circuit& c, const qsim::InputBits& x,
                       const dvproof::OracleToken& token, timestamp::Ledger& ledger,
                       MeteredClock& clock, const CostModel& cost,
                       const dvproof::Backend& backend) {
  if (token.session_nonce != crs.pk.session_nonce) {
    throw ParameterError("oracle token does not match the CRS session");
  }
  clock.charge(cost.t_units);
  auto pi = backend.prove(token, crs.pk, c, x);
  auto stamp = ledger.stamp(dvproof::serialize(pi), clock);
  return {pi, stamp};
}

commit::Opening parse_plaintext(ByteView plaintext) {
  if (plaintext.size() < commit::kRandomnessSize + 1) {
    throw FormatError("puzzle plaintext must hold a key and 32 bytes of randomness");
  }
  commit::Opening y;
  const auto split = plaintext.size() - commit::kRandomnessSize;
  y.sk_bytes.assign(plaintext.begin(), plaintext.begin() + static_cast<std::ptrdiff_t>(split));
  std::copy(plaintext.begin() + static_cast<std::ptrdiff_t>(split), plaintext.end(), y.r.begin());
  return y;
}

commit::Opening reveal(const Crs& crs, MeteredClock& clock,
                       const tlp::ChainWalker::Progress& progress) {
  return parse_plaintext(tlp::solve(crs.tpk, crs.o, &clock, progress));
}

std::string_view name(RejectSite site) {
  switch (site) {
    case RejectSite::None: return "none";
    case RejectSite::Timestamp: return "timestamp";
    case RejectSite::Statement: return "statement";
    case RejectSite::Ledger: return "ledger";
    case RejectSite::Commitment: return "commitment";
    case RejectSite::ClaimedBit: return "claimed_bit";
    case RejectSite::MacTag: return "mac_tag";
  }
  return "unknown";
}

Verdict verify(const Crs& crs, const qsim::Circuit& c, const qsim::InputBits& x,
               const TimestampedProof& pi_tau, const commit::Opening& y,
               const timestamp::Ledger& ledger, const dvproof::Backend& backend) {
  auto reject = [](RejectSite s) { return Verdict{false, s}; };
  if (pi_tau.tau() > crs.delta) return reject(RejectSite::Timestamp);
  if (crs.pk.circuit_digest != qsim::circuit_digest(c) ||
      crs.pk.input_digest != qsim::input_digest(x)) {
    return reject(RejectSite::Statement);
  }
  if (!ledger.verify(dvproof::serialize(pi_tau.proof), pi_tau.stamp)) {
    return reject(RejectSite::Ledger);
  }
  if (!commit::verify_opening(crs.d, y)) return reject(RejectSite::Commitment);
  switch (backend.verify(crs.pk, dvproof::SecretKey{y.sk_bytes}, pi_tau.proof)) {
    case dvproof::Verdict::Accept: return {true, RejectSite::None};
    case dvproof::Verdict::ClaimedBitZero: return reject(RejectSite::ClaimedBit);
    case dvproof::Verdict::BadTag: return reject(RejectSite::MacTag);
  }
  return reject(RejectSite::MacTag);
}

Bytes serialize(const Crs& crs) {
  ByteWriter w;
  w.put("PVQC").u8(0x01);
  w.put(crs.tpk.seed).u64(crs.tpk.mu).u64(crs.tpk.delta_steps);
  w.put(crs.pk.circuit_digest).put(crs.pk.input_digest).put(crs.pk.session_nonce);
  w.put(tlp::serialize(crs.o));
  w.put(crs.d.digest).u64(crs.delta);
  return std::move(w).bytes();
}

Crs parse_crs(ByteView data) {
  ByteReader r(data);
  r.expect("PVQC", "crs");
  if (r.u8() != 0x01) throw FormatError("crs: unsupported version");
  Crs crs;
  crs.tpk.seed = r.fixed<32>();
  crs.tpk.mu = r.u64();
  crs.tpk.delta_steps = r.u64();
  crs.pk.circuit_digest = r.fixed<32>();
  crs.pk.input_digest = r.fixed<32>();
  crs.pk.session_nonce = r.fixed<16>();
  crs.o = tlp::parse_puzzle(r);
  crs.d.digest = r.fixed<32>();
  crs.delta = r.u64();
  r.expect_done("crs");
  if (crs.tpk.mu == 0 || crs.tpk.delta_steps < crs.tpk.mu) throw FormatError("crs: invalid puzzle parameters");
  if (crs.delta != crs.tpk.delta_steps) throw FormatError("crs: Delta fields disagree");
  return crs;
}

Bytes serialize(const TimestampedProof& p) {
  ByteWriter w;
  w.put(dvproof::serialize(p.proof)).u64(p.stamp.tau).put(p.stamp.auth_tag);
  return std::move(w).bytes();
}

TimestampedProof parse_timestamped_proof(ByteView data) {
  ByteReader r(data);
  TimestampedProof p;
  p.proof = dvproof::parse_proof(r);
  p.stamp.tau = r.u64();
  p.stamp.auth_tag = r.fixed<32>();
  r.expect_done("timestamped proof");
  return p;
}

}  // namespace pvqc::compiler
