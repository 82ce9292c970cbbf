#include "lafed/chart.hpp"

#include <stdexcept>

namespace lafed {

AlgebroidChart::AlgebroidChart(int n, int r) : n_(n), r_(r) {
  if (n < 0 || n > kMaxBase) throw std::invalid_argument("chart: base dimension out of range");
  if (r < 1 || r > kMaxRank) throw std::invalid_argument("chart: rank out of range");
  anchor_.assign(static_cast<std::size_t>(r) * n, Poly{});
  c_.assign(static_cast<std::size_t>(r) * r * r, Poly{});
}

void AlgebroidChart::set_c(int i, int j, int k, const Poly& p) {
  if (i == j) {
    if (!p.is_zero()) throw std::invalid_argument("chart: c_ii^k must vanish");
    return;
  }
  c_[(i * r_ + j) * r_ + k] = p;
  c_[(j * r_ + i) * r_ + k] = -p;
}

Poly AlgebroidChart::rho(int i, const Poly& f) const {
  Poly out;
  for (int a = 0; a < n_; ++a) {
    const Poly& coef = anchor(i, a);
    if (coef.is_zero()) continue;
    Poly d = f.derivative(a);
    if (d.is_zero()) continue;
    out += coef * d;
  }
  return out;
}

bool AlgebroidChart::abelian() const {
  for (auto& p : c_)
    if (!p.is_zero()) return false;
  return true;
}

bool AlgebroidChart::structure_constant() const {
  for (auto& p : c_)
    if (!p.is_constant()) return false;
  return true;
}

ChartValidation validate_chart(const AlgebroidChart& ch) {
  ChartValidation rep;
  const int r = ch.r(), n = ch.n();
  // rho([e_i,e_j])^a = [rho_i, rho_j]^a
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int a = 0; a < n; ++a) {
        Poly lhs;
        for (int k = 0; k < r; ++k) lhs += ch.c(i, j, k) * ch.anchor(k, a);
        Poly rhs = ch.rho(i, ch.anchor(j, a)) - ch.rho(j, ch.anchor(i, a));
        if (!(lhs == rhs)) {
          rep.ok = false;
          rep.failed_check = "anchor-morphism";
          rep.triple = {i, j, a};
          rep.detail = "rho([e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) +
                       "]) differs from [rho e" + std::to_string(i + 1) + ", rho e" +
                       std::to_string(j + 1) + "] in component x" + std::to_string(a + 1) +
                       ": " + (lhs - rhs).str(n);
          return rep;
        }
      }
  // [e_i,[e_j,e_k]] + cyclic = 0 with [e_i, f e_m] = rho_i(f) e_m + f c_im^l e_l
  auto nested = [&](int i, int j, int k, int l) {
    Poly s;
    for (int m = 0; m < r; ++m) {
      const Poly& f = ch.c(j, k, m);
      if (f.is_zero()) continue;
      if (m == l) s += ch.rho(i, f);
      s += f * ch.c(i, m, l);
    }
    return s;
  };
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int k = j + 1; k < r; ++k)
        for (int l = 0; l < r; ++l) {
          Poly s = nested(i, j, k, l) + nested(j, k, i, l) + nested(k, i, j, l);
          if (!s.is_zero()) {
            rep.ok = false;
            rep.failed_check = "jacobi";
            rep.triple = {i, j, k};
            rep.detail = "Jacobi sum for (e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) +
                         ",e" + std::to_string(k + 1) + ") has e" + std::to_string(l + 1) +
                         " component " + s.str(n);
            return rep;
          }
        }
  return rep;
}

}  // namespace lafed
