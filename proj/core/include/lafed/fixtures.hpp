#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lafed/connection.hpp"

namespace lafed {

struct Fixture {
  AlgebroidChart chart;
  std::optional<Connection> gamma;  // torsion-free default when absent
};

namespace fixtures {

Fixture abelian1();       // n=1, r=1, rho(e1) = d/dx
Fixture tangent2();       // n=2, r=2, rho = id, c = 0
Fixture aff1();           // n=0, r=2, c_12^1 = 1, rho = 0
Fixture sl2();            // n=1, r=3, rho = d, x d, x^2 d
Fixture curved2();        // tangent2 with Gamma_12^1 = Gamma_21^1 = x^2
Fixture invalid_anchor(); // rho(e1) = d1, rho(e2) = x^1 d1, c = 0

// Valid fixtures in a fixed order.
std::vector<Fixture> valid();
std::optional<Fixture> by_name(const std::string& name);

}  // namespace fixtures

// The fixture's connection if present, torsion_free(chart) otherwise.
Connection connection_of(const Fixture& f);

}  // namespace lafed
