#pragma once

#include <map>
#include <vector>

#include "lafed/polyop.hpp"

namespace lafed {

// O-multilinear functional on (degree+1)-fold tensors of UE, stored on PBW
// basis tuples of total order <= cap. Entries missing from the table are zero.
struct EJet {
  int degree = 0;
  int cap = 0;
  std::map<Tuple, Poly> table;

  void set(const Tuple& t, const Poly& v);
  // Throws BudgetExhausted when the tuple exceeds the cap.
  Poly at(const Tuple& t) const;
  Poly at_or_zero(const Tuple& t) const {
    auto it = table.find(t);
    return it == table.end() ? Poly() : it->second;
  }
  // O-linear evaluation on an operator of matching degree.
  Poly eval(const EPolyOp& p) const;
  // Evaluation of t^j(a) without materializing the rotation.
  Poly eval_rotated(const EPolyOp& p, int j) const;
  bool operator==(const EJet& o) const { return degree == o.degree && table == o.table; }
  bool is_zero() const { return table.empty(); }
  EJet& operator+=(const EJet& o);
  EJet& operator-=(const EJet& o);
  EJet& operator*=(const Q& c);
  friend EJet operator+(EJet a, const EJet& b) { return a += b; }
  friend EJet operator-(EJet a, const EJet& b) { return a -= b; }
  friend EJet operator*(const Q& c, EJet a) { return a *= c; }
};

// t(a)(P_0 .. P_l) = a(P_1 .. P_l, P_0), applied `times` times.
EJet cyclic(const EJet& a, int times = 1);

// E-S_P(a): the action of a homogeneous operator on jets. Output cap is
// a.cap - order(P); a negative budget throws BudgetExhausted.
EJet jet_action(const Enveloping& U, const EPolyOp& p, const EJet& a);
// The bilinear correction H(P1, P2)(a) relating E-S_{P1} E-S_{P2} to E-S_{P1 . P2}.
EJet getzler_H(const Enveloping& U, const EPolyOp& p1, const EPolyOp& p2, const EJet& a);
// b = E-S_{1 (x) 1}
EJet jet_b(const Enveloping& U, const EJet& a);

// Grothendieck connection along the section sum u_i e_i; output cap j.cap - 1.
EJet grothendieck(const Enveloping& U, const std::vector<Poly>& u, const EJet& j);

// Hochschild E-chain: degree 0 is a function, degree -m < 0 a jet of degree m-1.
struct EChain {
  int degree = 0;
  Poly f;
  EJet jet;

  static EChain function(const Poly& g) { return {0, g, {}}; }
  static EChain of_jet(const EJet& j) { return {-j.degree - 1, Poly(), j}; }
  bool operator==(const EChain& o) const {
    return degree == o.degree && (degree == 0 ? f == o.f : jet == o.jet);
  }
  bool is_zero() const { return degree == 0 ? f.is_zero() : jet.is_zero(); }
};

// chi(a)(P) = a(1 (x) P); a degree 0 jet gives the chain a(1).
EChain chi(const EJet& a);

enum class PeelOrder { Smallest, Largest };

// Flat lift of a chain: the unique Grothendieck-flat jet with chi(varrho(c)) = c.
// Slot-0 monomials are peeled one generator at a time. For function chains the
// lift is tabulated up to `cap`; jet chains keep their own cap.
EJet varrho(const Enveloping& U, const EChain& c, int cap, PeelOrder peel = PeelOrder::Smallest);

// E-R_P(c) = chi(E-S_P(varrho(c))).
EChain chain_action(const Enveloping& U, const EPolyOp& p, const EChain& c, int cap);
EChain chain_b(const Enveloping& U, const EChain& c, int cap);

}  // namespace lafed
