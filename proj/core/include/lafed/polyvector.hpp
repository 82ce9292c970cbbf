#pragma once

#include <map>
#include <string>

#include "lafed/chart.hpp"
#include "lafed/koszul.hpp"

namespace lafed {

// Section of the exterior algebra of E: f_I e_I with I ascending. A term with
// |I| = k+1 factors has degree k; functions have degree -1.
struct EPolyvector {
  std::map<Mask, Poly> terms;

  static EPolyvector function(const Poly& f);
  static EPolyvector gen(int i);
  static EPolyvector wedge_of(const std::vector<int>& idx, const Poly& f = Poly(1));

  bool is_zero() const { return terms.empty(); }
  void add(Mask m, const Poly& f);
  EPolyvector& operator+=(const EPolyvector& o);
  EPolyvector& operator-=(const EPolyvector& o);
  EPolyvector& operator*=(const Q& c);
  friend EPolyvector operator+(EPolyvector a, const EPolyvector& b) { return a += b; }
  friend EPolyvector operator-(EPolyvector a, const EPolyvector& b) { return a -= b; }
  friend EPolyvector operator*(const Q& c, EPolyvector a) { return a *= c; }
  bool operator==(const EPolyvector& o) const { return terms == o.terms; }

  // Degree of the unique homogeneous component; throws if mixed or zero.
  int degree() const;
  std::string str(int n) const;
};

inline int pv_degree(Mask m) { return popcount(m) - 1; }

EPolyvector wedge(const EPolyvector& a, const EPolyvector& b);
EPolyvector times(const Poly& f, const EPolyvector& a);

// Schouten-Nijenhuis bracket of E-polyvectors, built from the anchor action on
// functions, the algebroid bracket on generators, and the graded Leibniz rule.
EPolyvector schouten(const AlgebroidChart& chart, const EPolyvector& u, const EPolyvector& v);

}  // namespace lafed
