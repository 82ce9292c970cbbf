#include "lafed/forms.hpp"

namespace lafed {

EForm EForm::function(const Poly& f) {
  EForm w;
  w.add(0, f);
  return w;
}

EForm EForm::xi(int i) {
  EForm w;
  w.add(Mask{1} << i, Poly(1));
  return w;
}

void EForm::add(Mask m, const Poly& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = terms.try_emplace(m, f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) terms.erase(it);
  }
}

EForm& EForm::operator+=(const EForm& o) {
  for (auto& [m, f] : o.terms) add(m, f);
  return *this;
}

EForm& EForm::operator-=(const EForm& o) {
  for (auto& [m, f] : o.terms) add(m, -f);
  return *this;
}

EForm& EForm::operator*=(const Q& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [m, f] : terms) f *= c;
  return *this;
}

std::string EForm::str(int n) const {
  if (terms.empty()) return "0";
  std::string out;
  for (auto& [m, f] : terms) {
    if (!out.empty()) out += " + ";
    out += "(" + f.str(n) + ")";
    for (int i : mask_indices(m)) out += "xi" + std::to_string(i + 1);
  }
  return out;
}

EForm wedge(const EForm& a, const EForm& b) {
  EForm out;
  for (auto& [ma, fa] : a.terms)
    for (auto& [mb, fb] : b.terms) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      Poly p = fa * fb;
      if (s < 0) p = -p;
      out.add(ma | mb, p);
    }
  return out;
}

namespace {

EForm d_xi(const AlgebroidChart& ch, int k) {
  EForm out;
  for (int a = 0; a < ch.r(); ++a)
    for (int b = a + 1; b < ch.r(); ++b) out.add((Mask{1} << a) | (Mask{1} << b), -ch.c(a, b, k));
  return out;
}

}  // namespace

EForm e_de_rham(const AlgebroidChart& ch, const EForm& w) {
  EForm out;
  for (auto& [M, f] : w.terms) {
    for (int i = 0; i < ch.r(); ++i) {
      Poly d = ch.rho(i, f);
      if (d.is_zero()) continue;
      int s = wedge_sign(Mask{1} << i, M);
      if (s == 0) continue;
      out.add(M | (Mask{1} << i), s < 0 ? -d : d);
    }
    auto idx = mask_indices(M);
    for (std::size_t q = 0; q < idx.size(); ++q) {
      EForm dq = d_xi(ch, idx[q]);
      if (dq.is_zero()) continue;
      EForm left = EForm::function(f), right = EForm::function(1);
      for (std::size_t p = 0; p < q; ++p) left = wedge(left, EForm::xi(idx[p]));
      for (std::size_t p = q + 1; p < idx.size(); ++p) right = wedge(right, EForm::xi(idx[p]));
      EForm t = wedge(wedge(left, dq), right);
      if (q % 2 == 1) t *= Q(-1);
      out += t;
    }
  }
  return out;
}

EForm contract(const EPolyvector& u, const EForm& w) {
  EForm out;
  for (auto& [I, f] : u.terms) {
    auto idx = mask_indices(I);
    EForm cur = w;
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
      EForm next;
      for (auto& [M, g] : cur.terms) {
        int s = left_derivative_sign(M, *it);
        if (s == 0) continue;
        next.add(M & ~(Mask{1} << *it), s < 0 ? -g : g);
      }
      cur = std::move(next);
    }
    for (auto& [M, g] : cur.terms) out.add(M, f * g);
  }
  return out;
}

EForm lie_derivative(const AlgebroidChart& ch, const EPolyvector& u, const EForm& w) {
  EForm out;
  EForm dw = e_de_rham(ch, w);
  for (auto& [I, f] : u.terms) {
    EPolyvector term;
    term.add(I, f);
    out += e_de_rham(ch, contract(term, w));
    EForm second = contract(term, dw);
    if (pv_degree(I) % 2 != 0) second *= Q(-1);
    out += second;
  }
  return out;
}

}  // namespace lafed
