#pragma once

#include <map>
#include <string>

#include "lafed/polyvector.hpp"

namespace lafed {

// E-form: f_I xi^I with I ascending. Reversed grading: a term with |I| factors
// has degree -|I|.
struct EForm {
  std::map<Mask, Poly> terms;

  static EForm function(const Poly& f);
  static EForm xi(int i);

  bool is_zero() const { return terms.empty(); }
  void add(Mask m, const Poly& f);
  EForm& operator+=(const EForm& o);
  EForm& operator-=(const EForm& o);
  EForm& operator*=(const Q& c);
  friend EForm operator+(EForm a, const EForm& b) { return a += b; }
  friend EForm operator-(EForm a, const EForm& b) { return a -= b; }
  friend EForm operator*(const Q& c, EForm a) { return a *= c; }
  bool operator==(const EForm& o) const { return terms == o.terms; }
  std::string str(int n) const;
};

EForm wedge(const EForm& a, const EForm& b);

EForm e_de_rham(const AlgebroidChart& chart, const EForm& w);
// iota_{f e_I} = f iota_{e_i1} ... iota_{e_is}, iota_{e_i} the left derivative in xi^i.
EForm contract(const EPolyvector& u, const EForm& w);
// Cartan formula d iota_u + (-1)^k iota_u d, termwise in the degree k of u.
EForm lie_derivative(const AlgebroidChart& chart, const EPolyvector& u, const EForm& w);

}  // namespace lafed
