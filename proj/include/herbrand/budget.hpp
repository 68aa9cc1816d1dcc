#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace herbrand {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

/// Raised when a search would exceed its instance or step budget; distinct from a negative answer.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a cooperative stop flag is observed.
struct Cancelled : std::runtime_error {
  Cancelled() : std::runtime_error("cancelled") {}
};

/// `HERBRAND_BUDGET` when set to a positive integer, otherwise `fallback`.
std::uint64_t budget_from_env(std::uint64_t fallback = kDefaultBudget);

inline void check_stop(const std::atomic<bool>* stop) {
  if (stop && stop->load(std::memory_order_relaxed)) throw Cancelled();
}

}  // namespace herbrand
