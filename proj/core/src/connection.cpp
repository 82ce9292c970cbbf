#include "lafed/connection.hpp"

namespace lafed {

namespace {

bool all_zero(const std::vector<Poly>& v) {
  for (auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

using Vecf = std::vector<Poly>;  // components along e_0..e_{r-1}

}  // namespace

bool Connection::zero() const { return all_zero(g_); }
bool Torsion::zero() const { return all_zero(t); }
bool Curvature::zero() const { return all_zero(R); }

Torsion torsion(const AlgebroidChart& ch, const Connection& g) {
  const int r = ch.r();
  Torsion T{r, std::vector<Poly>(static_cast<std::size_t>(r) * r * r)};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) T.t[(i * r + j) * r + k] = g(i, j, k) - g(j, i, k) - ch.c(i, j, k);
  return T;
}

Curvature curvature(const AlgebroidChart& ch, const Connection& g) {
  const int r = ch.r();
  Curvature C{r, std::vector<Poly>(static_cast<std::size_t>(r) * r * r * r)};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
          Poly v = ch.rho(i, g(j, k, l)) - ch.rho(j, g(i, k, l));
          for (int m = 0; m < r; ++m) {
            v += g(i, m, l) * g(j, k, m);
            v -= g(i, k, m) * g(j, m, l);
            v -= ch.c(i, j, m) * g(m, k, l);
          }
          C.R[((i * r + j) * r + k) * r + l] = v;
        }
  return C;
}

Connection torsion_free(const AlgebroidChart& ch) {
  const int r = ch.r();
  Connection g(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) g.at(i, j, k) = ch.c(i, j, k) * Q(1, 2);
  return g;
}

BianchiResidual bianchi(const AlgebroidChart& ch, const Connection& g) {
  const int r = ch.r();
  Torsion T = torsion(ch, g);
  Curvature R = curvature(ch, g);

  auto cov = [&](int a, const Vecf& v) {  // nabla_{e_a} v
    Vecf out(r);
    for (int k = 0; k < r; ++k) {
      if (v[k].is_zero()) continue;
      out[k] += ch.rho(a, v[k]);
      for (int m = 0; m < r; ++m) out[m] += v[k] * g(a, k, m);
    }
    return out;
  };
  auto Tv = [&](const Vecf& u, const Vecf& v) {  // T(u, v)
    Vecf out(r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        if (u[i].is_zero() || v[j].is_zero()) continue;
        Poly uv = u[i] * v[j];
        for (int k = 0; k < r; ++k) out[k] += uv * T(i, j, k);
      }
    return out;
  };
  auto Rv = [&](const Vecf& u, const Vecf& v, const Vecf& w) {  // R(u, v) w
    Vecf out(r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        if (u[i].is_zero() || v[j].is_zero()) continue;
        Poly uv = u[i] * v[j];
        for (int k = 0; k < r; ++k) {
          if (w[k].is_zero()) continue;
          Poly uvw = uv * w[k];
          for (int l = 0; l < r; ++l) out[l] += uvw * R(i, j, k, l);
        }
      }
    return out;
  };
  auto basis = [&](int i) {
    Vecf v(r);
    v[i] = Poly(1);
    return v;
  };
  auto add = [](Vecf& a, const Vecf& b, int s) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s > 0 ? b[i] : -b[i];
  };
  auto nonzero = [](const Vecf& v) {
    for (auto& p : v)
      if (!p.is_zero()) return true;
    return false;
  };

  // (nabla_a R)(e_b, e_c) e_d
  auto covR = [&](int a, int b, int c, int d) {
    Vecf out = cov(a, Rv(basis(b), basis(c), basis(d)));
    add(out, Rv(cov(a, basis(b)), basis(c), basis(d)), -1);
    add(out, Rv(basis(b), cov(a, basis(c)), basis(d)), -1);
    add(out, Rv(basis(b), basis(c), cov(a, basis(d))), -1);
    return out;
  };
  // (nabla_a T)(e_b, e_c)
  auto covT = [&](int a, int b, int c) {
    Vecf out = cov(a, Tv(basis(b), basis(c)));
    add(out, Tv(cov(a, basis(b)), basis(c)), -1);
    add(out, Tv(basis(b), cov(a, basis(c))), -1);
    return out;
  };

  BianchiResidual res;
  for (int u = 0; u < r; ++u)
    for (int v = 0; v < r; ++v)
      for (int w = 0; w < r; ++w) {
        const int cyc[3][3] = {{u, v, w}, {v, w, u}, {w, u, v}};
        for (int d = 0; d < r; ++d) {
          Vecf b1(r);
          for (auto& c : cyc) {
            add(b1, covR(c[0], c[1], c[2], d), 1);
            add(b1, Rv(Tv(basis(c[0]), basis(c[1])), basis(c[2]), basis(d)), 1);
          }
          if (nonzero(b1)) return {false, "B1", {u, v, w, d}};
        }
        Vecf b2(r);
        for (auto& c : cyc) {
          add(b2, Rv(basis(c[0]), basis(c[1]), basis(c[2])), 1);
          add(b2, Tv(Tv(basis(c[0]), basis(c[1])), basis(c[2])), -1);
          add(b2, covT(c[0], c[1], c[2]), -1);
        }
        if (nonzero(b2)) return {false, "B2", {u, v, w}};
      }
  return res;
}

}  // namespace lafed
