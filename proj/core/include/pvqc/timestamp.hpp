#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pvqc/bytes.hpp"
#include "pvqc/clock.hpp"
#include "pvqc/crypto.hpp"

// Trusted timestamping service: an append-only ledger of
// (SHA-256(blob), tau, HMAC tag) records, optionally mirrored to a file.
//
// tau is the logical clock reading at submission. Each submission is itself a
// sequential event and advances the clock by one unit, so tau is strictly
// increasing across records. Verification replays the ledger: a stamp is
// accepted only if its record is present and its tag recomputes under the
// service key. The ledger never stores anything but digests.
namespace pvqc::timestamp {

struct Stamp {
  std::uint64_t tau = 0;
  Digest auth_tag{};
  bool operator==(const Stamp&) const = default;
};

struct Record {
  Digest blob_digest{};
  std::uint64_t tau = 0;
  Digest auth_tag{};
  bool operator==(const Record&) const = default;
};

// "STAMPv1" || digest || u64be(tau) under HMAC-SHA-256.
Digest stamp_tag(const Digest& mac_key, const Digest& blob_digest, std::uint64_t tau);

class Ledger {
 public:
  static Ledger in_memory(const Digest& mac_key);
  // Creates (truncates) a ledger file with just the header.
  static Ledger create_file(const std::string& path, const Digest& mac_key);
  // Loads every record from an existing file; further stamps are appended.
  static Ledger open_file(const std::string& path, const Digest& mac_key);

  Ledger(Ledger&& other) noexcept;
  Ledger& operator=(Ledger&&) = delete;

  // Stamps at tau = clock.now(), then advances the clock by one. Throws
  // LedgerError on I/O failure (nothing is recorded in that case).
  Stamp stamp(ByteView blob, MeteredClock& clock);

  bool verify(ByteView blob, const Stamp& stamp) const;

  std::vector<Record> records() const;
  std::optional<std::uint64_t> last_tau() const;

 private:
  Ledger(Digest mac_key, std::optional<std::string> path) : mac_key_(mac_key), path_(std::move(path)) {}

  Digest mac_key_;
  std::optional<std::string> path_;
  mutable std::mutex mutex_;
  std::vector<Record> records_;
};

// "PVQL" || 0x01 || records
Bytes serialize_records(const std::vector<Record>& records);
std::vector<Record> parse_records(ByteView data);

// Service-private state kept next to a ledger file: key and persisted clock.
// "PVQK" || 0x01 || mac_key(32) || u64be(clock)
struct ServiceState {
  Digest mac_key{};
  std::uint64_t clock = 0;
};
Bytes serialize(const ServiceState& state);
ServiceState parse_service_state(ByteView data);
std::string service_state_path(const std::string& ledger_path);

}  // namespace pvqc::timestamp
