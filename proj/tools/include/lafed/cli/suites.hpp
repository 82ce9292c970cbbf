#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lafed/cli/chart_file.hpp"
#include "lafed/cli/report.hpp"

namespace lafed::cli {

// Sample counts per family of randomized checks.
struct Samples {
  int forms = 25;
  int words = 500;
  int algebra = 30;
  int jets = 100;
  int homotopy = 200;   // per bundle
  int fedosov = 50;     // per bundle
  int resolution = 50;
  int comparison = 30;
  int hkr = 100;
  int traces = 50;
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  Caps caps;
  Samples samples;
  bool timings = false;  // fill millis; otherwise 0 so reports stay reproducible
};

struct CheckSpec {
  std::string suite;
  std::string check;
  std::string anchor;
};

std::string engine_version();
// axioms, calculus, jets, homotopy, fedosov, comparison, hkr, quantize; "all" runs each.
const std::vector<std::string>& suite_names();
const std::vector<CheckSpec>& registered_checks();

// Throws InputError for an unknown suite name.
SuiteReport run_suite(const ChartFile& chart, const std::string& suite, const SuiteConfig& cfg);

// Scales every sample count by num/den, keeping at least one sample.
Samples scaled(const Samples& s, int num, int den);

}  // namespace lafed::cli
