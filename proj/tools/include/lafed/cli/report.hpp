#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lafed::cli {

enum class Status { Pass, Fail, Budget, Skipped };

const char* status_name(Status s);

struct CheckRecord {
  std::string check;
  std::string anchor;
  Status status = Status::Pass;
  int required_order = -1;  // -1: not an order-graded check
  int achieved_order = -1;
  int samples = 0;
  long millis = 0;
  std::string detail;
};

struct SuiteReport {
  std::string engine;
  std::string suite;
  std::string chart;
  std::string input_digest;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;  // ordered by check name

  bool overall() const;
  bool any_budget() const;
  // 0 pass, 1 check failure, 3 budget only.
  int exit_code() const;
};

enum class Format { Text, Json };

std::string emit_report(const SuiteReport& r, Format f);
// Inverse of the JSON form of emit_report.
SuiteReport report_from_json(const std::string& text);

}  // namespace lafed::cli
