#include "lafed/polyvector.hpp"

#include <stdexcept>

namespace lafed {

EPolyvector EPolyvector::function(const Poly& f) {
  EPolyvector v;
  v.add(0, f);
  return v;
}

EPolyvector EPolyvector::gen(int i) {
  EPolyvector v;
  v.add(Mask{1} << i, Poly(1));
  return v;
}

EPolyvector EPolyvector::wedge_of(const std::vector<int>& idx, const Poly& f) {
  EPolyvector out = function(f);
  for (int i : idx) out = wedge(out, gen(i));
  return out;
}

void EPolyvector::add(Mask m, const Poly& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = terms.try_emplace(m, f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) terms.erase(it);
  }
}

EPolyvector& EPolyvector::operator+=(const EPolyvector& o) {
  for (auto& [m, f] : o.terms) add(m, f);
  return *this;
}

EPolyvector& EPolyvector::operator-=(const EPolyvector& o) {
  for (auto& [m, f] : o.terms) add(m, -f);
  return *this;
}

EPolyvector& EPolyvector::operator*=(const Q& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [m, f] : terms) f *= c;
  return *this;
}

int EPolyvector::degree() const {
  if (terms.empty()) throw std::logic_error("degree of zero polyvector");
  int d = pv_degree(terms.begin()->first);
  for (auto& [m, f] : terms)
    if (pv_degree(m) != d) throw std::logic_error("inhomogeneous polyvector");
  return d;
}

std::string EPolyvector::str(int n) const {
  if (terms.empty()) return "0";
  std::string out;
  for (auto& [m, f] : terms) {
    if (!out.empty()) out += " + ";
    out += "(" + f.str(n) + ")";
    for (int i : mask_indices(m)) out += "e" + std::to_string(i + 1);
  }
  return out;
}

EPolyvector wedge(const EPolyvector& a, const EPolyvector& b) {
  EPolyvector out;
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

EPolyvector times(const Poly& f, const EPolyvector& a) {
  EPolyvector out;
  for (auto& [m, g] : a.terms) out.add(m, f * g);
  return out;
}

namespace {

// [e_j, f e_I]: derivation, no signs.
EPolyvector ad_gen(const AlgebroidChart& ch, int j, Mask I, const Poly& f) {
  EPolyvector out;
  out.add(I, ch.rho(j, f));
  auto idx = mask_indices(I);
  for (std::size_t q = 0; q < idx.size(); ++q) {
    EPolyvector left = EPolyvector::function(f), mid, right = EPolyvector::function(1);
    for (std::size_t p = 0; p < q; ++p) left = wedge(left, EPolyvector::gen(idx[p]));
    for (int m = 0; m < ch.r(); ++m) mid.add(Mask{1} << m, ch.c(j, idx[q], m));
    if (mid.is_zero()) continue;
    for (std::size_t p = q + 1; p < idx.size(); ++p) right = wedge(right, EPolyvector::gen(idx[p]));
    out += wedge(wedge(left, mid), right);
  }
  return out;
}

// [g, f e_I] = f sum_q (-1)^(q+1) rho_{i_q}(g) e_{I minus i_q}
EPolyvector ad_fun(const AlgebroidChart& ch, const Poly& g, Mask I, const Poly& f) {
  EPolyvector out;
  auto idx = mask_indices(I);
  for (std::size_t q = 0; q < idx.size(); ++q) {
    Poly d = ch.rho(idx[q], g);
    if (d.is_zero()) continue;
    Poly p = f * d;
    if (q % 2 == 0) p = -p;
    out.add(I & ~(Mask{1} << idx[q]), p);
  }
  return out;
}

}  // namespace

EPolyvector schouten(const AlgebroidChart& ch, const EPolyvector& u, const EPolyvector& v) {
  EPolyvector out;
  for (auto& [I, f] : u.terms) {
    const int k = pv_degree(I);
    const int sk = sign_of(k);
    for (auto& [J, g] : v.terms) {
      // [u, g] wedge e_J with [u, g] = -(-1)^k [g, u]
      EPolyvector ug = ad_fun(ch, g, I, f);
      if (!ug.is_zero()) {
        ug *= Q(-sk);
        out += wedge(ug, EPolyvector::wedge_of(mask_indices(J)));
      }
      // g * sum_p (-1)^(kp) e_{J<p} [u, e_{j_p}] e_{J>p}, [u, e_j] = -[e_j, u]
      auto idx = mask_indices(J);
      for (std::size_t p = 0; p < idx.size(); ++p) {
        EPolyvector mid = ad_gen(ch, idx[p], I, f);
        if (mid.is_zero()) continue;
        Q s = (k % 2 != 0 && p % 2 == 1) ? Q(1) : Q(-1);
        mid *= s;
        EPolyvector left = EPolyvector::function(g), right = EPolyvector::function(1);
        for (std::size_t a = 0; a < p; ++a) left = wedge(left, EPolyvector::gen(idx[a]));
        for (std::size_t a = p + 1; a < idx.size(); ++a) right = wedge(right, EPolyvector::gen(idx[a]));
        out += wedge(wedge(left, mid), right);
      }
    }
  }
  return out;
}

}  // namespace lafed
