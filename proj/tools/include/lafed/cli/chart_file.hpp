#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "lafed/connection.hpp"
#include "lafed/quantize.hpp"

namespace lafed::cli {

// Truncation parameters shared by the suites.
struct Caps {
  int order = 6;       // Fedosov y-degree N
  int jet_cap = 4;     // jet tuple order K
  int hbar_order = 3;  // hbar truncation M
  int x_degree = 2;    // x-degree cap for slices and traces
};

struct ChartFile {
  std::string name;
  AlgebroidChart chart;
  std::optional<Connection> connection;
  PolyvectorSeries pi;  // empty when the file has no "pi" entries
  Caps defaults;
  std::string digest;   // of the canonical document
};

// Bad input. Line and column are 1-based; 0 when unknown.
struct InputError : std::runtime_error {
  std::string pointer;
  int line = 0;
  int column = 0;
  InputError(const std::string& what, std::string ptr, int ln, int col);
};

ChartFile parse_chart(const std::string& path);
ChartFile parse_chart_text(const std::string& text, const std::string& origin = "<input>");

// Canonical JSON for a chart; parse_chart_text(chart_to_json(c)) reproduces c.
std::string chart_to_json(const ChartFile& c);

// The connection given in the file, or the torsion-free default.
Connection connection_for(const ChartFile& c);

}  // namespace lafed::cli
