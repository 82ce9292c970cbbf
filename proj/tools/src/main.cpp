#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lafed/cli/chart_file.hpp"
#include "lafed/cli/report.hpp"
#include "lafed/cli/suites.hpp"
#include "lafed/errors.hpp"
#include "lafed/fedosov.hpp"

using namespace lafed;
using namespace lafed::cli;

namespace {

constexpr int kInputError = 2;
constexpr int kBudgetError = 3;

struct Options {
  std::string chart;
  std::string suite = "all";
  std::uint64_t seed = 1;
  int order = -1;
  int jet_cap = -1;
  int hbar_order = -1;
  int x_degree = -1;
  std::string format = "text";
  std::string out;
  std::string input;
  bool timings = false;
};

SuiteConfig config_for(const ChartFile& c, const Options& o) {
  SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.caps = c.defaults;
  if (o.order >= 0) cfg.caps.order = o.order;
  if (o.jet_cap >= 0) cfg.caps.jet_cap = o.jet_cap;
  if (o.hbar_order >= 0) cfg.caps.hbar_order = o.hbar_order;
  if (o.x_degree >= 0) cfg.caps.x_degree = o.x_degree;
  cfg.timings = o.timings;
  return cfg;
}

Format format_of(const std::string& s) { return s == "json" ? Format::Json : Format::Text; }

void write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path, "", 0, 0);
  f << text;
}

int emit(const SuiteReport& r, const Options& o) {
  write_out(emit_report(r, format_of(o.format)), o.out);
  return r.exit_code();
}

int cmd_suite(const Options& o, const std::string& suite) {
  ChartFile c = parse_chart(o.chart);
  return emit(run_suite(c, suite, config_for(c, o)), o);
}

int cmd_fedosov(const Options& o) {
  ChartFile c = parse_chart(o.chart);
  SuiteConfig cfg = config_for(c, o);
  FedosovData fd = build_fedosov(c.chart, connection_for(c), cfg.caps.order);
  nlohmann::json d;
  d["chart"] = c.name;
  d["input"] = c.digest;
  d["order"] = fd.order;
  d["certifiedOrder"] = fd.certified_order;
  d["rounds"] = fd.rounds;
  d["flatConnection"] = fd.curvature.is_zero();
  d["connectionTerms"] = fd.a.terms.size();
  write_out(d.dump(2) + "\n", o.out);
  return fd.certified_order >= cfg.caps.order - 1 ? 0 : 1;
}

int cmd_report(const Options& o) {
  std::string text;
  if (o.input.empty() || o.input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(o.input, std::ios::binary);
    if (!f) throw InputError("cannot read " + o.input, "", 0, 0);
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  return emit(report_from_json(text), o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for Lie algebroid Fedosov resolutions"};
  app.set_version_flag("--version", engine_version());
  app.require_subcommand(1);
  Options o;

  auto add_output = [&](CLI::App* sc) {
    sc->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sc->add_option("--out", o.out, "Write to a file instead of stdout");
  };
  auto add_run = [&](CLI::App* sc) {
    sc->add_option("chart", o.chart, "Chart JSON file")->required();
    sc->add_option("--seed", o.seed, "Sample generator seed");
    sc->add_option("--x-degree", o.x_degree, "x-degree cap for slices and traces")->check(CLI::NonNegativeNumber);
    sc->add_flag("--timings", o.timings, "Record wall-clock milliseconds per check");
    add_output(sc);
  };

  auto* validate = app.add_subcommand("validate", "Check the algebroid and connection axioms");
  add_run(validate);

  auto* suite = app.add_subcommand("suite", "Run an invariant suite");
  add_run(suite);
  suite->add_option("--suite", o.suite, "axioms, calculus, jets, homotopy, fedosov, comparison, hkr, quantize or all");
  suite->add_option("--order", o.order, "Fedosov y-degree N")->check(CLI::Range(2, 12));
  suite->add_option("--jet-cap", o.jet_cap, "Jet tuple order K")->check(CLI::Range(1, 8));
  suite->add_option("--hbar-order", o.hbar_order, "hbar truncation M")->check(CLI::Range(1, 8));

  auto* fedosov = app.add_subcommand("fedosov", "Build the Fedosov connection form");
  fedosov->add_option("chart", o.chart, "Chart JSON file")->required();
  fedosov->add_option("--order", o.order, "Fedosov y-degree N")->check(CLI::Range(2, 12));
  fedosov->add_option("--out", o.out, "Write to a file instead of stdout");

  auto* quantize = app.add_subcommand("quantize", "Run the deformation quantization checks");
  add_run(quantize);
  quantize->add_option("--hbar-order", o.hbar_order, "hbar truncation M")->check(CLI::Range(1, 8));

  auto* report = app.add_subcommand("report", "Render a JSON report");
  add_output(report);
  report->add_option("--input", o.input, "JSON report file; stdin when absent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*validate) return cmd_suite(o, "axioms");
    if (*suite) return cmd_suite(o, o.suite);
    if (*fedosov) return cmd_fedosov(o);
    if (*quantize) return cmd_suite(o, "quantize");
    if (*report) return cmd_report(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kBudgetError;
  } catch (const Rejected& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
