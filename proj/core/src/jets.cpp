#include "lafed/jets.hpp"

#include <algorithm>

#include "lafed/errors.hpp"

namespace lafed {

void EJet::set(const Tuple& t, const Poly& v) {
  if (v.is_zero()) table.erase(t);
  else table[t] = v;
}

Poly EJet::at(const Tuple& t) const {
  int o = tuple_order(t);
  if (o > cap) throw BudgetExhausted("jet evaluated beyond its cap", o, cap);
  auto it = table.find(t);
  return it == table.end() ? Poly() : it->second;
}

Poly EJet::eval(const EPolyOp& p) const {
  Poly out;
  for (auto& [t, f] : p.terms) {
    if (static_cast<int>(t.size()) != degree + 1) throw Rejected("jet evaluated on operator of wrong degree");
    Poly v = at(t);
    if (!v.is_zero()) out += f * v;
  }
  return out;
}

Poly EJet::eval_rotated(const EPolyOp& p, int j) const {
  Poly out;
  for (auto& [t, f] : p.terms) {
    if (static_cast<int>(t.size()) != degree + 1) throw Rejected("jet evaluated on operator of wrong degree");
    Tuple r(t.begin() + j, t.end());
    r.insert(r.end(), t.begin(), t.begin() + j);
    Poly v = at(r);
    if (!v.is_zero()) out += f * v;
  }
  return out;
}

EJet& EJet::operator+=(const EJet& o) {
  for (auto& [t, v] : o.table) set(t, at_or_zero(t) + v);
  return *this;
}

EJet& EJet::operator-=(const EJet& o) {
  for (auto& [t, v] : o.table) set(t, at_or_zero(t) - v);
  return *this;
}

EJet& EJet::operator*=(const Q& c) {
  if (c == 0) table.clear();
  for (auto& [t, v] : table) v *= c;
  return *this;
}

EJet cyclic(const EJet& a, int times) {
  const int slots = a.degree + 1;
  times %= slots;
  if (times < 0) times += slots;
  EJet out{a.degree, a.cap, {}};
  for (auto& [t, v] : a.table) {
    // t^j(a)(P) = a(rot_j P) with rot_j P = (P_j, .., P_l, P_0, .., P_{j-1});
    // the entry a(T) lands at P = rot_{-j} T.
    Tuple p(t.end() - times, t.end());
    p.insert(p.end(), t.begin(), t.end() - times);
    out.table[p] = v;
  }
  return out;
}

namespace {

int homogeneous_degree(const EPolyOp& p) {
  if (p.is_zero()) throw Rejected("operator has no degree");
  return p.degree();
}

EPolyOp place(const Enveloping& U, const EPolyOp& x, const EPolyOp& p, int at, int d) {
  return insert_product(U, delta_at(U, x, at, d), p, at);
}

}  // namespace

EJet jet_action(const Enveloping& U, const EPolyOp& p, const EJet& a) {
  const int k = homogeneous_degree(p), l = a.degree;
  if (k > l) throw Rejected("jet_action: operator degree exceeds jet degree");
  const int cap = a.cap - p.order();
  if (cap < 0) throw BudgetExhausted("jet_action", p.order(), a.cap);
  EJet out{l - k, cap, {}};
  EPolyOp tail = EPolyOp::unit(l - k);
  EPolyOp p_ext = cup(p, tail);
  for (auto& q : enumerate_tuples(U.r(), l - k + 1, cap)) {
    EPolyOp qop = EPolyOp::tuple(q);
    Poly v = a.eval(bullet(U, qop, p));
    if (k >= 1) {
      EPolyOp y = insert_product(U, delta_at(U, qop, 0, k), p_ext, 0);
      for (int j = 1; j <= k; ++j) {
        Poly t = a.eval_rotated(y, j);
        if ((l * j) % 2) v -= t;
        else v += t;
      }
    }
    out.set(q, v);
  }
  return out;
}

EJet getzler_H(const Enveloping& U, const EPolyOp& p1, const EPolyOp& p2, const EJet& a) {
  const int d1 = homogeneous_degree(p1), d2 = homogeneous_degree(p2), n = a.degree;
  const int cap = a.cap - p1.order() - p2.order();
  if (cap < 0) throw BudgetExhausted("getzler_H", p1.order() + p2.order(), a.cap);
  const int qdeg = n - d1 - d2;
  if (qdeg < 0) throw Rejected("getzler_H: degrees exceed jet degree");
  EJet out{qdeg, cap, {}};
  if (d1 < 0 || d2 < 0) return out;
  for (auto& q : enumerate_tuples(U.r(), qdeg + 1, cap)) {
    EPolyOp qop = EPolyOp::tuple(q);
    Poly v;
    for (int j = d1 + 1; j <= n - d2; ++j)
      for (int i = 0; i <= j - d1 - 1; ++i) {
        EPolyOp x = place(U, place(U, qop, p1, i, d1), p2, j, d2);
        Poly t = a.eval(x);
        if ((i * d1 + j * d2) % 2) v -= t;
        else v += t;
      }
    for (int s = 1; s <= d1; ++s)
      for (int k = d1 - s + 1; k <= n - d2 - s; ++k) {
        EPolyOp x = place(U, place(U, qop, p1, 0, d1), p2, k + s, d2);
        Poly t = a.eval_rotated(x, s);
        if ((k * d2 + s * (n - d2)) % 2) v -= t;
        else v += t;
      }
    out.set(q, v);
  }
  return out;
}

EJet jet_b(const Enveloping& U, const EJet& a) { return jet_action(U, EPolyOp::unit(2), a); }

EJet grothendieck(const Enveloping& U, const std::vector<Poly>& u, const EJet& j) {
  const int cap = j.cap - 1;
  if (cap < 0) throw BudgetExhausted("grothendieck", 1, j.cap);
  EPolyOp sigma;
  for (int i = 0; i < static_cast<int>(u.size()); ++i) sigma.add({UMono::gen(i)}, u[i]);
  EJet out{j.degree, cap, {}};
  for (auto& p : enumerate_tuples(U.r(), j.degree + 1, cap)) {
    Poly v;
    Poly jp = j.at(p);
    for (int i = 0; i < static_cast<int>(u.size()); ++i)
      if (!u[i].is_zero()) v += u[i] * U.chart().rho(i, jp);
    v -= j.eval(bullet(U, sigma, EPolyOp::tuple(p)));
    out.set(p, v);
  }
  return out;
}

EChain chi(const EJet& a) {
  if (a.degree == 0) return EChain::function(a.at({UMono{}}));
  EJet b{a.degree - 1, a.cap, {}};
  for (auto& [t, v] : a.table)
    if (t[0] == UMono{}) b.set(Tuple(t.begin() + 1, t.end()), v);
  return EChain::of_jet(b);
}

EJet varrho(const Enveloping& U, const EChain& c, int cap, PeelOrder peel) {
  if (c.degree == 0) {
    EJet out{0, cap, {}};
    for (auto& m : enumerate_monos(U.r(), cap)) out.set({m}, U.anchor_apply(m, c.f));
    return out;
  }
  const EJet& b = c.jet;
  const int m = b.degree + 1;
  EJet out{m, b.cap, {}};
  auto tuples = enumerate_tuples(U.r(), m + 1, b.cap);
  std::stable_sort(tuples.begin(), tuples.end(),
                   [](const Tuple& x, const Tuple& y) { return x[0].order() < y[0].order(); });
  auto value = [&](const UMono& head, const EPolyOp& rest) {
    Poly v;
    for (auto& [t, f] : rest.terms) {
      Tuple full{head};
      full.insert(full.end(), t.begin(), t.end());
      v += f * out.at(full);
    }
    return v;
  };
  for (auto& t : tuples) {
    const UMono& head = t[0];
    Tuple tail(t.begin() + 1, t.end());
    if (head == UMono{}) {
      out.set(t, b.at(tail));
      continue;
    }
    const int u = peel == PeelOrder::Smallest ? head.first() : head.last();
    UMono q = head.without(u);
    // a(u Q (x) P) = rho(u) a(Q (x) P) - a(Q (x) Delta(u) P)
    Tuple qt{q};
    qt.insert(qt.end(), tail.begin(), tail.end());
    Poly v = U.chart().rho(u, out.at(qt));
    EPolyOp tail_op = EPolyOp::tuple(tail);
    for (int s = 0; s < m; ++s) {
      Tuple left(m);
      left[s] = UMono::gen(u);
      v -= value(q, insert_product(U, EPolyOp::tuple(left), tail_op, 0));
    }
    if (peel == PeelOrder::Largest) {
      // u Q = e^head + lower terms
      for (auto& [mm, f] : U.mono_mono(UMono::gen(u), q).terms) {
        if (mm == head) continue;
        Tuple lt{mm};
        lt.insert(lt.end(), tail.begin(), tail.end());
        v -= f * out.at(lt);
      }
    }
    out.set(t, v);
  }
  return out;
}

EChain chain_action(const Enveloping& U, const EPolyOp& p, const EChain& c, int cap) {
  const int k = homogeneous_degree(p);
  // No chains live in positive degree.
  if (c.degree + k > 0) return {c.degree + k, Poly(), {}};
  return chi(jet_action(U, p, varrho(U, c, cap)));
}

EChain chain_b(const Enveloping& U, const EChain& c, int cap) { return chain_action(U, EPolyOp::unit(2), c, cap); }

}  // namespace lafed
