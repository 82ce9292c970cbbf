#pragma once

#include "lafed/sampling.hpp"

namespace lafed::testing {
using namespace lafed::sampling;
}  // namespace lafed::testing
