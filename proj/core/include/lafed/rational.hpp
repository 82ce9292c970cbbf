#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lafed {

using Q = mpq_class;
using Z = mpz_class;

// Parses "a", "-a" or "a/b" with b != 0. Throws std::invalid_argument with the
// offending character offset in the message.
Q parse_rational(std::string_view text);

inline std::string to_string(const Q& q) { return q.get_str(); }

inline int sign_of(int exponent) { return (exponent & 1) ? -1 : 1; }

inline Q factorial(int n) {
  Z f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Q(f);
}

}  // namespace lafed
