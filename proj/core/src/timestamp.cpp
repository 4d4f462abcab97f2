#include "pvqc/timestamp.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pvqc/error.hpp"

namespace pvqc::timestamp {
namespace {

constexpr std::uint8_t kVersion = 0x01;
constexpr std::size_t kRecordSize = 32 + 8 + 32;

void put_record(ByteWriter& w, const Record& rec) {
  w.put(rec.blob_digest).u64(rec.tau).put(rec.auth_tag);
}

}  // namespace

Digest stamp_tag(const Digest& mac_key, const Digest& blob_digest, std::uint64_t tau) {
  std::uint8_t tau_be[8];
  for (int i = 0; i < 8; ++i) tau_be[i] = static_cast<std::uint8_t>(tau >> (56 - 8 * i));
  return crypto::hmac_sha256(mac_key, {as_bytes("STAMPv1"), blob_digest, tau_be});
}

Ledger Ledger::in_memory(const Digest& mac_key) { return Ledger(mac_key, std::nullopt); }

Ledger Ledger::create_file(const std::string& path, const Digest& mac_key) {
  try {
    write_file(path, serialize_records({}));
  } catch (const IoError& e) {
    throw LedgerError(e.what());
  }
  return Ledger(mac_key, path);
}

Ledger Ledger::open_file(const std::string& path, const Digest& mac_key) {
  Bytes data;
  try {
    data = read_file(path);
  } catch (const IoError& e) {
    throw LedgerError(e.what());
  }
  Ledger ledger(mac_key, path);
  ledger.records_ = parse_records(data);
  return ledger;
}

Ledger::Ledger(Ledger&& other) noexcept
    : mac_key_(other.mac_key_), path_(std::move(other.path_)) {
  std::lock_guard lock(other.mutex_);
  records_ = std::move(other.records_);
}

Stamp Ledger::stamp(ByteView blob, MeteredClock& clock) {
  std::lock_guard lock(mutex_);
  Record rec;
  rec.blob_digest = crypto::sha256(blob);
  rec.tau = clock.now();
  if (!records_.empty() && rec.tau <= records_.back().tau) {
    throw LedgerError("clock is behind the ledger's last record");
  }
  rec.auth_tag = stamp_tag(mac_key_, rec.blob_digest, rec.tau);
  clock.charge(1);
  if (path_) {
    ByteWriter w;
    put_record(w, rec);
    std::ofstream out(*path_, std::ios::binary | std::ios::app);
    out.write(reinterpret_cast<const char*>(w.bytes().data()),
              static_cast<std::streamsize>(w.bytes().size()));
    out.flush();
    if (!out) throw LedgerError("ledger append failed: " + *path_);
  }
  records_.push_back(rec);
  return {rec.tau, rec.auth_tag};
}

bool Ledger::verify(ByteView blob, const Stamp& stamp) const {
  const auto digest = crypto::sha256(blob);
  if (!crypto::equal_ct(stamp_tag(mac_key_, digest, stamp.tau), stamp.auth_tag)) return false;
  std::lock_guard lock(mutex_);
  for (const auto& rec : records_) {
    if (rec.tau == stamp.tau && rec.blob_digest == digest && rec.auth_tag == stamp.auth_tag) {
      return true;
    }
  }
  return false;
}

std::vector<Record> Ledger::records() const {
  std::lock_guard lock(mutex_);
  return records_;
}

std::optional<std::uint64_t> Ledger::last_tau() const {
  std::lock_guard lock(mutex_);
  if (records_.empty()) return std::nullopt;
  return records_.back().tau;
}

Bytes serialize_records(const std::vector<Record>& records) {
  ByteWriter w;
  w.put("PVQL").u8(kVersion);
  for (const auto& rec : records) put_record(w, rec);
  return std::move(w).bytes();
}

std::vector<Record> parse_records(ByteView data) {
  ByteReader r(data);
  r.expect("PVQL", "ledger");
  if (r.u8() != kVersion) throw FormatError("ledger: unsupported version");
  if (r.remaining() % kRecordSize != 0) throw FormatError("ledger: truncated record");
  std::vector<Record> out;
  while (!r.done()) {
    Record rec;
    rec.blob_digest = r.fixed<32>();
    rec.tau = r.u64();
    rec.auth_tag = r.fixed<32>();
    if (!out.empty() && rec.tau <= out.back().tau) {
      throw FormatError("ledger: tau sequence is not strictly increasing");
    }
    out.push_back(rec);
  }
  return out;
}

Bytes serialize(const ServiceState& state) {
  ByteWriter w;
  w.put("PVQK").u8(kVersion).put(state.mac_key).u64(state.clock);
  return std::move(w).bytes();
}

ServiceState parse_service_state(ByteView data) {
  ByteReader r(data);
  r.expect("PVQK", "ledger service state");
  if (r.u8() != kVersion) throw FormatError("ledger service state: unsupported version");
  ServiceState s;
  s.mac_key = r.fixed<32>();
  s.clock = r.u64();
  r.expect_done("ledger service state");
  return s;
}

std::string service_state_path(const std::string& ledger_path) { return ledger_path + ".key"; }

}  // namespace pvqc::timestamp
