#include "lafed/fedosov.hpp"

#include <algorithm>

#include "lafed/errors.hpp"
#include "lafed/fiber_ops.hpp"
#include "lafed/homotopy.hpp"

namespace lafed {

namespace {

void require_torsion_free(const AlgebroidChart& chart, const Connection& g) {
  if (g.r() != chart.r()) throw Rejected("connection rank does not match the chart");
  if (!torsion(chart, g).zero()) throw Rejected("connection has torsion");
}

Section half_bracket(const Section& a, const Section& b) {
  Section s = fw_schouten(a, b);
  s *= Q(1, 2);
  return s;
}

}  // namespace

Section connection_field(const Connection& g) {
  const int r = g.r();
  Section out(Bundle::T, kExact);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        FKey key;
        key.xi = Mask{1} << i;
        key.y = YMono::gen(j);
        key.odd = Mask{1} << k;
        out.add(key, -g(i, j, k));
      }
  return out;
}

Section curvature_field(const AlgebroidChart& chart, const Connection& g) {
  const int r = g.r();
  Curvature R = curvature(chart, g);
  Section out(Bundle::T, kExact);
  // -1/2 xi^i xi^j R_ij = -xi^i xi^j R_ij summed over i < j
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
          FKey key;
          key.xi = (Mask{1} << i) | (Mask{1} << j);
          key.y = YMono::gen(k);
          key.odd = Mask{1} << l;
          out.add(key, -R(i, j, k, l));
        }
  return out;
}

Section nabla_apply(const AlgebroidChart& chart, const Connection& g, const Section& s) {
  require_torsion_free(chart, g);
  return e_d(chart, s) + vf_act(connection_field(g), s);
}

Section fedosov_nabla(const FedosovData& fd, const Section& s) {
  return e_d(fd.chart, s) + vf_act(fd.gamma, s);
}

Section fedosov_D_with(const FedosovData& fd, const Section& a, const Section& s) {
  return fedosov_nabla(fd, s) - delta_diff(s) + vf_act(a, s);
}

Section fedosov_D(const FedosovData& fd, const Section& s) { return fedosov_D_with(fd, fd.a, s); }

Section fedosov_residual(const FedosovData& fd, const Section& a) {
  return fd.curvature + fedosov_nabla(fd, a) - delta_diff(a) + half_bracket(a, a);
}

int vanishing_order(const Section& s) {
  int m = s.cap;
  for (auto& [k, c] : s.terms) m = std::min(m, y_degree(s.bundle, k) - 1);
  return m;
}

FedosovData build_fedosov(const AlgebroidChart& chart, const Connection& g, int order) {
  require_torsion_free(chart, g);
  if (order < 2) throw Rejected("build_fedosov: order must be at least 2");
  FedosovData fd;
  fd.chart = chart;
  fd.connection = g;
  fd.order = order;
  fd.gamma = connection_field(g);
  fd.curvature = curvature_field(chart, g);
  const Section kr = kappa(fd.curvature).truncated(order);
  Section a = kr;
  for (int round = 1; round < order; ++round) {
    Section next = kr + kappa(fedosov_nabla(fd, a) + half_bracket(a, a));
    next = next.truncated(order);
    ++fd.rounds;
    if (next == a && next.cap == a.cap) break;
    a = std::move(next);
  }
  fd.a = a;
  fd.certified_order = vanishing_order(fedosov_residual(fd, a));
  return fd;
}

Section fiber_polyvector(const EPolyvector& u) {
  Section out(Bundle::T, kExact);
  for (auto& [m, f] : u.terms) {
    FKey k;
    k.odd = m;
    out.add(k, f);
  }
  return out;
}

Section fiber_form(const EForm& w) {
  Section out(Bundle::A, kExact);
  for (auto& [m, f] : w.terms) {
    FKey k;
    k.odd = m;
    out.add(k, f);
  }
  return out;
}

EPolyvector base_polyvector(const Section& t) {
  EPolyvector out;
  for (auto& [k, c] : t.terms)
    if (k.xi == 0 && k.y == YMono{}) out.add(k.odd, c);
  return out;
}

EForm base_form(const Section& a) {
  EForm out;
  for (auto& [k, c] : a.terms)
    if (k.xi == 0 && k.y == YMono{}) out.add(k.odd, c);
  return out;
}

Section xi_component(const Section& s, int i) {
  Section out(s.bundle, s.cap);
  for (auto& [k, c] : s.terms) {
    int sg = left_derivative_sign(k.xi, i);
    if (sg == 0) continue;
    FKey nk = k;
    nk.xi = k.xi & ~(Mask{1} << i);
    out.add(nk, sg < 0 ? -c : c);
  }
  return out;
}

Section lift_lambda(const FedosovData& fd, const Section& u) {
  if (u.bundle == Bundle::J) throw Rejected("lift_lambda: chains are not lifted");
  for (auto& [k, c] : u.terms)
    if (k.xi != 0) throw Rejected("lift_lambda: expects xi-degree 0 data");
  if (!delta_diff(u).is_zero()) throw Rejected("lift_lambda: input is not delta-closed");
  Section lam = u;
  for (int round = 0; round <= fd.order + 1; ++round) {
    Section next = u + kappa(fedosov_nabla(fd, lam) + vf_act(fd.a, lam));
    next = next.truncated(fd.order);
    if (next == lam && next.cap == lam.cap) break;
    lam = std::move(next);
  }
  return lam;
}

}  // namespace lafed
