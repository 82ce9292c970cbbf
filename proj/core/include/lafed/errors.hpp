#pragma once

#include <stdexcept>
#include <string>

namespace lafed {

// Precondition violated by the caller (wrong bundle, torsionful connection, ...).
struct Rejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A jet or truncation budget is too small for the requested evaluation.
struct BudgetExhausted : std::runtime_error {
  int needed;
  int available;
  BudgetExhausted(const std::string& what, int need, int have)
      : std::runtime_error(what + " (needs order " + std::to_string(need) +
                           ", budget " + std::to_string(have) + ")"),
        needed(need), available(have) {}
};

}  // namespace lafed
