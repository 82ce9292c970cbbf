#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "lafed/koszul.hpp"
#include "lafed/pbw.hpp"

namespace lafed {

// Multi-index over the r fiber coordinates: y^a or d^a/dy^a.
using YMono = UMono;

// Validity cap meaning "exact in every y-degree".
inline constexpr int kExact = 1 << 24;

// S: formal fiber functions, A: fiber forms in dy, T: fiber polyvectors
// (functions included as degree -1), D: fiber polydifferential operators
// (functions as degree -1), J: fiber Hochschild chains in groups y_0..y_k.
enum class Bundle { S, A, T, D, J };

const char* bundle_name(Bundle b);

// xi^I (an E-form) times y^a times the bundle payload. For J the fiber
// monomials live in `ops`, one per group, and `y` is unused.
struct FKey {
  Mask xi = 0;
  Mask odd = 0;            // A: dy^M, T: d/dy^M wedge
  YMono y{};
  std::vector<YMono> ops;  // D: d/dy multi-index per slot, J: monomial per group
  auto operator<=>(const FKey&) const = default;
};

// y-degree of a key: total for S/A/T/D, the largest group degree for J.
int y_degree(Bundle b, const FKey& k);
// Grading of the payload: -1 for functions, |M| - 1 for T, slots - 1 for D,
// |M| for A (reversed grading is handled by callers), groups - 1 for J.
int payload_degree(Bundle b, const FKey& k);

// Sparse section of E-forms with values in a fiber bundle. Every term of
// y-degree <= cap is exact; terms above the cap are never stored.
struct Section {
  Bundle bundle = Bundle::S;
  int cap = kExact;
  std::map<FKey, Poly> terms;

  Section() = default;
  Section(Bundle b, int c) : bundle(b), cap(c) {}

  static Section function(const Poly& f, int cap = kExact);
  // y^a with x-coefficient f in bundle S.
  static Section y_mono(const YMono& a, const Poly& f = Poly(1), int cap = kExact);
  // The constant fiber vector field d/dy^i in T.
  static Section d_dy(int i, int cap = kExact);

  bool is_zero() const { return terms.empty(); }
  void add(const FKey& k, const Poly& c);
  Section& operator+=(const Section& o);
  Section& operator-=(const Section& o);
  Section& operator*=(const Q& c);
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(Section a, const Section& b) { return a -= b; }
  friend Section operator*(const Q& c, Section a) { return a *= c; }
  // Multiplication by a base function f(x).
  Section times(const Poly& f) const;
  // Drop terms above y-degree m and lower the cap to m.
  Section truncated(int m) const;
  // Smallest y-degree present; kExact for zero.
  int min_y_degree() const;
  // Largest total derivative order of a D payload slot (0 otherwise).
  int max_op_order() const;
  // Terms with a given E-form degree.
  Section xi_part(int degree) const;
  // Terms with a given payload degree.
  Section payload_part(int degree) const;

  // Compares bundle and terms only.
  bool operator==(const Section& o) const { return bundle == o.bundle && terms == o.terms; }
  std::string str(int n) const;
};

// Equality of the parts of y-degree <= m.
bool agree_to(const Section& a, const Section& b, int m);

int combine_caps(int a, int b);

}  // namespace lafed
