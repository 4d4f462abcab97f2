#pragma once

#include <atomic>
#include <cstdint>
#include <limits>

#include "pvqc/error.hpp"

namespace pvqc {

// Thrown when a charge would push the clock past its budget limit. The clock
// is left unchanged.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

// Global logical time in sequential-work units. Hash steps, charged circuit
// cost, and ledger submissions all advance it. Charges are atomic, so roles in
// different threads can share one clock.
class MeteredClock {
 public:
  static constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

  explicit MeteredClock(std::uint64_t start = 0) : now_(start) {}
  MeteredClock(const MeteredClock&) = delete;
  MeteredClock& operator=(const MeteredClock&) = delete;

  std::uint64_t now() const { return now_.load(std::memory_order_acquire); }

  // Advances by `units`, or throws BudgetExhausted if that would exceed the limit.
  void charge(std::uint64_t units);

  // Caps further charges at now() + budget.
  void set_budget(std::uint64_t budget);
  void clear_budget() { limit_.store(kUnlimited, std::memory_order_release); }
  std::uint64_t limit() const { return limit_.load(std::memory_order_acquire); }

 private:
  std::atomic<std::uint64_t> now_;
  std::atomic<std::uint64_t> limit_{kUnlimited};
};

// Per-thread operation counters used to assert what an operation did (how
// many chain steps, how many simulator runs) without timing it.
namespace instrument {

struct Counters {
  std::uint64_t chain_steps = 0;
  std::uint64_t simulator_runs = 0;
};

Counters& counters();

// Snapshots the counters at construction; reports deltas since then.
class Probe {
 public:
  Probe() : start_(counters()) {}
  std::uint64_t chain_steps() const { return counters().chain_steps - start_.chain_steps; }
  std::uint64_t simulator_runs() const {
    return counters().simulator_runs - start_.simulator_runs;
  }

 private:
  Counters start_;
};

}  // namespace instrument

}  // namespace pvqc
