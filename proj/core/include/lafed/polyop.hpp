#pragma once

#include <map>
#include <string>
#include <vector>

#include "lafed/pbw.hpp"

namespace lafed {

using Tuple = std::vector<UMono>;

// E-polydifferential operator: sum of f * (e^b0 (x) ... (x) e^bk) over O.
// The empty tuple is the degree -1 part (functions). Terms of different
// degrees may coexist; degree() requires homogeneity.
struct EPolyOp {
  std::map<Tuple, Poly> terms;

  static EPolyOp function(const Poly& f);
  static EPolyOp unit(int slots);  // 1 (x) ... (x) 1
  static EPolyOp tuple(const Tuple& t, const Poly& f = Poly(1));
  static EPolyOp from_pbw(const PbwElement& p);
  // p_0 (x) ... (x) p_k with coefficients collected in front.
  static EPolyOp tensor(const std::vector<PbwElement>& slots);

  bool is_zero() const { return terms.empty(); }
  void add(const Tuple& t, const Poly& f);
  EPolyOp& operator+=(const EPolyOp& o);
  EPolyOp& operator-=(const EPolyOp& o);
  EPolyOp& operator*=(const Q& c);
  friend EPolyOp operator+(EPolyOp a, const EPolyOp& b) { return a += b; }
  friend EPolyOp operator-(EPolyOp a, const EPolyOp& b) { return a -= b; }
  friend EPolyOp operator*(const Q& c, EPolyOp a) { return a *= c; }
  bool operator==(const EPolyOp& o) const { return terms == o.terms; }

  int degree() const;  // throws on zero or mixed
  int order() const;   // max total PBW order, -1 for zero
  EPolyOp times(const Poly& f) const;
  std::string str(int n) const;
};

inline int tuple_order(const Tuple& t) {
  int d = 0;
  for (auto& m : t) d += m.order();
  return d;
}

// Slotwise product X * Y of equal-length tensors. The coefficient of each Y
// term enters slot 0, which is well defined when X lies in the image of an
// iterated coproduct.
EPolyOp slot_product(const Enveloping& U, const EPolyOp& x, const EPolyOp& y);
// X * (1 (x) .. (x) P (x) .. (x) 1) with P starting at slot `at`; the
// coefficient of P enters slot `at`.
EPolyOp insert_product(const Enveloping& U, const EPolyOp& x, const EPolyOp& p, int at);
// Applies Delta^(k) to the given slot.
EPolyOp delta_at(const Enveloping& U, const EPolyOp& p, int slot, int k);
EPolyOp coproduct(const Enveloping& U, const PbwElement& p);

EPolyOp bullet(const Enveloping& U, const EPolyOp& p, const EPolyOp& q);
EPolyOp gerstenhaber(const Enveloping& U, const EPolyOp& p, const EPolyOp& q);
EPolyOp cochain_d(const Enveloping& U, const EPolyOp& p);
// Tensor concatenation over O.
EPolyOp cup(const EPolyOp& p, const EPolyOp& q);
// Cyclic rotation (P_0 (x) ... (x) P_k) -> (P_k (x) P_0 (x) ...), used for t(Pi).
EPolyOp transpose(const EPolyOp& p);

// P(f_0, ..., f_k) = coefficient * prod rho(P_i) f_i.
Poly evaluate(const Enveloping& U, const EPolyOp& p, const std::vector<Poly>& args);

// All (slots)-tuples of PBW monomials in r generators of total order <= cap,
// ordered by the tuple comparison.
std::vector<Tuple> enumerate_tuples(int r, int slots, int cap);
std::vector<UMono> enumerate_monos(int r, int cap);

}  // namespace lafed
