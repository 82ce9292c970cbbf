#include "lafed/fixtures.hpp"

namespace lafed {
namespace fixtures {

Fixture abelian1() {
  AlgebroidChart ch(1, 1);
  ch.set_anchor(0, 0, Poly(1));
  ch.name = "abelian1";
  return {ch, std::nullopt};
}

Fixture tangent2() {
  AlgebroidChart ch(2, 2);
  ch.set_anchor(0, 0, Poly(1));
  ch.set_anchor(1, 1, Poly(1));
  ch.name = "tangent2";
  return {ch, std::nullopt};
}

Fixture aff1() {
  AlgebroidChart ch(0, 2);
  ch.set_c(0, 1, 0, Poly(1));
  ch.name = "aff1";
  return {ch, std::nullopt};
}

Fixture sl2() {
  AlgebroidChart ch(1, 3);
  Poly x = Poly::var(0);
  ch.set_anchor(0, 0, Poly(1));
  ch.set_anchor(1, 0, x);
  ch.set_anchor(2, 0, x * x);
  ch.set_c(0, 1, 0, Poly(1));
  ch.set_c(0, 2, 1, Poly(2));
  ch.set_c(1, 2, 2, Poly(1));
  ch.name = "sl2";
  return {ch, std::nullopt};
}

Fixture curved2() {
  Fixture f = tangent2();
  f.chart.name = "curved2";
  Connection g(2);
  g.at(0, 1, 0) = Poly::var(1);
  g.at(1, 0, 0) = Poly::var(1);
  f.gamma = g;
  return f;
}

Fixture invalid_anchor() {
  AlgebroidChart ch(1, 2);
  ch.set_anchor(0, 0, Poly(1));
  ch.set_anchor(1, 0, Poly::var(0));
  ch.name = "invalid_anchor";
  return {ch, std::nullopt};
}

std::vector<Fixture> valid() { return {abelian1(), tangent2(), aff1(), sl2(), curved2()}; }

std::optional<Fixture> by_name(const std::string& name) {
  for (auto& f : valid())
    if (f.chart.name == name) return f;
  if (name == "invalid_anchor") return invalid_anchor();
  return std::nullopt;
}

}  // namespace fixtures

Connection connection_of(const Fixture& f) { return f.gamma ? *f.gamma : torsion_free(f.chart); }

}  // namespace lafed
