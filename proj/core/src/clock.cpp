#include "pvqc/clock.hpp"

#include <algorithm>
#include <string>

namespace pvqc {

void MeteredClock::charge(std::uint64_t units) {
  auto cur = now_.load(std::memory_order_acquire);
  for (;;) {
    auto lim = limit_.load(std::memory_order_acquire);
    if (units > lim - std::min(cur, lim)) {
      throw BudgetExhausted("step budget exhausted at t=" + std::to_string(cur));
    }
    if (now_.compare_exchange_weak(cur, cur + units, std::memory_order_acq_rel)) return;
  }
}

void MeteredClock::set_budget(std::uint64_t budget) {
  auto cur = now();
  auto lim = budget > kUnlimited - cur ? kUnlimited : cur + budget;
  limit_.store(lim, std::memory_order_release);
}

namespace instrument {

Counters& counters() {
  thread_local Counters c;
  return c;
}

}  // namespace instrument

}  // namespace pvqc
