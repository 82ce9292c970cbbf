#include "lafed/cli/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lafed/cli/chart_file.hpp"

namespace lafed::cli {

using nlohmann::json;

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Budget: return "budget";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

namespace {

Status status_from(const std::string& s) {
  for (Status st : {Status::Pass, Status::Fail, Status::Budget, Status::Skipped})
    if (s == status_name(st)) return st;
  throw InputError("report: unknown status \"" + s + "\"", "", 0, 0);
}

}  // namespace

bool SuiteReport::overall() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckRecord& c) { return c.status == Status::Fail || c.status == Status::Budget; });
}

bool SuiteReport::any_budget() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == Status::Budget; });
}

int SuiteReport::exit_code() const {
  if (std::any_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == Status::Fail; }))
    return 1;
  return any_budget() ? 3 : 0;
}

std::string emit_report(const SuiteReport& r, Format f) {
  if (f == Format::Json) {
    json d;
    d["engine"] = r.engine;
    d["suite"] = r.suite;
    d["chart"] = r.chart;
    d["input"] = r.input_digest;
    d["seed"] = r.seed;
    d["overall"] = r.overall();
    d["checks"] = json::array();
    for (auto& c : r.checks)
      d["checks"].push_back({{"check", c.check},
                             {"anchor", c.anchor},
                             {"status", status_name(c.status)},
                             {"requiredOrder", c.required_order},
                             {"achievedOrder", c.achieved_order},
                             {"samples", c.samples},
                             {"millis", c.millis},
                             {"detail", c.detail}});
    return d.dump(2) + "\n";
  }
  std::ostringstream os;
  os << r.engine << "  suite " << r.suite << "  chart " << (r.chart.empty() ? "(unnamed)" : r.chart) << "  seed "
     << r.seed << "\n";
  std::size_t width = 5;
  for (auto& c : r.checks) width = std::max(width, c.check.size());
  for (auto& c : r.checks) {
    std::string st = status_name(c.status);
    std::transform(st.begin(), st.end(), st.begin(), ::toupper);
    os << std::left << std::setw(8) << st << std::setw(static_cast<int>(width) + 2) << c.check << c.anchor;
    if (c.required_order >= 0 || c.achieved_order >= 0)
      os << "  order " << c.achieved_order << "/" << c.required_order;
    if (c.samples > 0) os << "  samples " << c.samples;
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  os << (r.overall() ? "overall: pass" : "overall: fail") << "\n";
  return os.str();
}

SuiteReport report_from_json(const std::string& text) {
  json d;
  try {
    d = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("report: ") + e.what(), "", 0, 0);
  }
  SuiteReport r;
  try {
    r.engine = d.at("engine").get<std::string>();
    r.suite = d.at("suite").get<std::string>();
    r.chart = d.at("chart").get<std::string>();
    r.input_digest = d.at("input").get<std::string>();
    r.seed = d.at("seed").get<std::uint64_t>();
    for (auto& c : d.at("checks")) {
      CheckRecord rec;
      rec.check = c.at("check").get<std::string>();
      rec.anchor = c.at("anchor").get<std::string>();
      rec.status = status_from(c.at("status").get<std::string>());
      rec.required_order = c.at("requiredOrder").get<int>();
      rec.achieved_order = c.at("achievedOrder").get<int>();
      rec.samples = c.value("samples", 0);
      rec.millis = c.at("millis").get<long>();
      rec.detail = c.value("detail", "");
      r.checks.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("report: ") + e.what(), "", 0, 0);
  }
  return r;
}

}  // namespace lafed::cli
