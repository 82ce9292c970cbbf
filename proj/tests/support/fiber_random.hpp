#pragma once

#include <ostream>

#include "lafed/section.hpp"
#include "support/random.hpp"

namespace lafed {
inline void PrintTo(const Section& s, std::ostream* os) { *os << bundle_name(s.bundle) << ": " << s.str(kMaxBase); }
}  // namespace lafed
