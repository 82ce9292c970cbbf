#include "lafed/quantize.hpp"

#include <algorithm>

#include "lafed/errors.hpp"
#include "lafed/hkr.hpp"

namespace lafed {

namespace {

std::vector<XMono> xmonos(int n, int cap) {
  std::vector<XMono> out{XMono{}};
  for (int a = 0; a < n; ++a) {
    std::vector<XMono> next;
    for (auto& m : out) {
      XMono k = m;
      while (k.degree() <= cap) {
        next.push_back(k);
        ++k.e[a];
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const XMono& p, const XMono& q) {
    return p.degree() != q.degree() ? p.degree() < q.degree() : p < q;
  });
  return out;
}

std::string xmono_label(const XMono& m, int n) {
  std::string s;
  for (int a = 0; a < n; ++a)
    if (m.e[a]) s += "x" + std::to_string(a + 1) + (m.e[a] > 1 ? "^" + std::to_string(m.e[a]) : "");
  return s.empty() ? "1" : s;
}

std::string mask_label(Mask m, const char* sym) {
  std::string s;
  for (int i : mask_indices(m)) s += std::string(s.empty() ? "" : "^") + sym + std::to_string(i + 1);
  return s.empty() ? "1" : s;
}

template <class T>
const T& at_or(const std::vector<T>& v, int i, const T& zero) {
  return i >= 0 && i < static_cast<int>(v.size()) ? v[i] : zero;
}

struct SeriesBasis {
  int K = 0;
  std::vector<XMono> monos;
  std::map<int, std::map<std::pair<Mask, XMono>, int>> local;  // degree -> (mask, mono) -> index
  std::map<int, std::vector<Mask>> masks;

  int size(int deg) const { return K * static_cast<int>(local.at(deg).size()); }
  int column(int deg, int s, Mask m, const XMono& x) const {
    const auto& l = local.at(deg);
    auto it = l.find({m, x});
    if (it == l.end()) return -1;
    return s * static_cast<int>(l.size()) + it->second;
  }
};

// Differential on basis hbar^s x^a v_I given by d(v) per hbar shift.
template <class Apply>
void fill_series_diff(ComplexSlice& slice, const SeriesBasis& b, int from, int to, Apply apply) {
  if (!b.local.count(from)) return;
  if (!b.local.count(to)) {
    slice.diff[from] = Matrix{};
    return;
  }
  Matrix m(b.size(to), Vec(b.size(from)));
  for (auto& [key, idx] : b.local.at(from)) {
    for (int s = 0; s < b.K; ++s) {
      const int col = s * static_cast<int>(b.local.at(from).size()) + idx;
      for (int t = 0; s + t < b.K; ++t) {
        auto image = apply(t, key.first, Poly::monomial(key.second, Q(1)));
        for (auto& [mask, coeff] : image)
          for (auto& [xm, q] : coeff.terms()) {
            const int row = b.column(to, s + t, mask, xm);
            if (row < 0) throw Rejected("deformation complex leaves the x-degree cap");
            m[row][col] += q;
          }
      }
    }
  }
  slice.diff[from] = std::move(m);
}

}  // namespace

PoissonReport poisson_validate(const AlgebroidChart& chart, const EPolyvector& pi) {
  PoissonReport rep;
  rep.jacobi = schouten(chart, pi, pi);
  rep.ok = rep.jacobi.is_zero();
  return rep;
}

PolyvectorSeries jacobi_series(const AlgebroidChart& chart, const PolyvectorSeries& pi_h, int max_order) {
  PolyvectorSeries out(max_order + 1);
  const EPolyvector zero;
  for (int s = 0; s <= max_order; ++s)
    for (int a = 0; a <= s; ++a) {
      const auto& u = at_or(pi_h, a, zero);
      const auto& v = at_or(pi_h, s - a, zero);
      if (!u.is_zero() && !v.is_zero()) out[s] += schouten(chart, u, v);
    }
  return out;
}

Deformation moyal_deform(const AlgebroidChart& chart, const EPolyvector& pi, int m) {
  if (!chart.abelian()) throw Rejected("moyal_deform: chart is not abelian");
  if (m < 0) throw Rejected("moyal_deform: negative order");
  EPolyOp p1;
  for (auto& [mask, f] : pi.terms) {
    if (popcount(mask) != 2) throw Rejected("moyal_deform: expects a bivector");
    if (!f.is_constant()) throw Rejected("moyal_deform: bivector has nonconstant coefficients");
    auto idx = mask_indices(mask);
    p1.add({UMono::gen(idx[0]), UMono::gen(idx[1])}, f);
    p1.add({UMono::gen(idx[1]), UMono::gen(idx[0])}, -f);
  }
  Enveloping U(chart);
  Deformation d;
  d.coeffs.push_back(EPolyOp::unit(2));
  EPolyOp power = EPolyOp::unit(2);
  Q w = 1;
  for (int s = 1; s <= m; ++s) {
    power = slot_product(U, power, p1);
    w /= Q(2 * s);
    d.coeffs.push_back(w * power);
  }
  return d;
}

ClassicalLimitReport classical_limit(const Deformation& d, const EPolyvector& pi) {
  ClassicalLimitReport rep;
  rep.unit = !d.coeffs.empty() && d.coeffs[0] == EPolyOp::unit(2);
  const EPolyOp p1 = d.coeffs.size() > 1 ? d.coeffs[1] : EPolyOp{};
  rep.antisymmetric = Q(1, 2) * (p1 - transpose(p1)) == hkr_V(pi);
  return rep;
}

OperatorSeries associativity_residual(const Enveloping& U, const Deformation& d) {
  const int m = d.order();
  OperatorSeries out(m + 1);
  for (int s = 0; s <= m; ++s)
    for (int a = 0; a <= s; ++a) out[s] += gerstenhaber(U, d.coeffs[a], d.coeffs[s - a]);
  return out;
}

PbwSeries series_mul(const Enveloping& U, const PbwSeries& a, const PbwSeries& b, int m) {
  PbwSeries out(m + 1);
  for (int s = 0; s <= m; ++s)
    for (int i = 0; i <= s; ++i) {
      if (i >= static_cast<int>(a.size()) || s - i >= static_cast<int>(b.size())) continue;
      out[s] += U.mul(a[i], b[s - i]);
    }
  return out;
}

EquivalenceReport equivalence_check(const Enveloping& U, const Deformation& pi, const Deformation& pi2,
                                    const PbwSeries& psi, int m) {
  if (psi.empty() || !(psi[0] == PbwElement::one())) throw Rejected("equivalence_check: Psi_0 must be 1");
  const PbwElement zero;
  const EPolyOp ozero;
  EquivalenceReport rep;
  rep.residual.resize(m + 1);
  for (int s = 0; s <= m; ++s) {
    EPolyOp& r = rep.residual[s];
    for (int a = 0; a <= s; ++a) {
      const auto& p = at_or(psi, a, zero);
      const auto& q = at_or(pi2.coeffs, s - a, ozero);
      if (!p.is_zero() && !q.is_zero()) r += slot_product(U, coproduct(U, p), q);
    }
    for (int a = 0; a <= s; ++a)
      for (int b = 0; a + b <= s; ++b) {
        const auto& p = at_or(pi.coeffs, a, ozero);
        const auto& x = at_or(psi, b, zero);
        const auto& y = at_or(psi, s - a - b, zero);
        if (!p.is_zero() && !x.is_zero() && !y.is_zero()) r -= slot_product(U, p, EPolyOp::tensor({x, y}));
      }
    if (!r.is_zero() && rep.leading_order < 0) rep.leading_order = s;
  }
  return rep;
}

PolyvectorSeries gauge_direction(const AlgebroidChart& chart, const PolyvectorSeries& u,
                                 const PolyvectorSeries& pi_h, int max_order) {
  if (!u.empty() && !u[0].is_zero()) throw Rejected("gauge_direction: u must start at hbar^1");
  PolyvectorSeries out(max_order + 1);
  const EPolyvector zero;
  for (int s = 0; s <= max_order; ++s)
    for (int a = 0; a <= s; ++a) {
      const auto& x = at_or(u, a, zero);
      const auto& y = at_or(pi_h, s - a, zero);
      if (!x.is_zero() && !y.is_zero()) out[s] += schouten(chart, x, y);
    }
  return out;
}

DeformationComplexes deformation_complexes(const AlgebroidChart& chart, const PolyvectorSeries& pi_h, int K,
                                           int xcap) {
  if (K < 1) throw Rejected("deformation_complexes: K must be positive");
  for (auto& term : jacobi_series(chart, pi_h, K))
    if (!term.is_zero()) throw Rejected("deformation_complexes: pi_h fails the Jacobi identity");
  const int r = chart.r();
  const auto monos = xmonos(chart.n(), xcap);

  auto make_basis = [&](bool forms) {
    SeriesBasis b;
    b.K = K;
    b.monos = monos;
    for (Mask m = 0; m < (Mask{1} << r); ++m) {
      const int deg = forms ? -popcount(m) : popcount(m) - 1;
      b.masks[deg].push_back(m);
    }
    for (auto& [deg, ms] : b.masks) {
      auto& l = b.local[deg];
      for (Mask m : ms)
        for (auto& x : monos) l.emplace(std::make_pair(m, x), static_cast<int>(l.size()));
    }
    return b;
  };
  auto labels = [&](const SeriesBasis& b, ComplexSlice& slice, const char* sym) {
    for (auto& [deg, l] : b.local) {
      std::vector<std::string> names(b.size(deg));
      for (auto& [key, idx] : l)
        for (int s = 0; s < K; ++s)
          names[s * l.size() + idx] = "h^" + std::to_string(s) + " " + xmono_label(key.second, chart.n()) + " " +
                                      mask_label(key.first, sym);
      slice.basis[deg] = std::move(names);
    }
  };

  DeformationComplexes out;
  const EPolyvector zero;

  SeriesBasis pv = make_basis(false);
  out.polyvectors.label = "polyvectors under [pi_h, .]";
  labels(pv, out.polyvectors, "e");
  for (auto& [deg, ms] : pv.masks)
    fill_series_diff(out.polyvectors, pv, deg, deg + 1, [&](int t, Mask m, const Poly& x) {
      const auto& p = at_or(pi_h, t, zero);
      if (p.is_zero()) return std::map<Mask, Poly>{};
      EPolyvector v;
      v.add(m, x);
      return schouten(chart, p, v).terms;
    });
  out.polyvector_homology = truncated_cohomology(out.polyvectors);

  SeriesBasis fm = make_basis(true);
  out.forms.label = "forms under L_{pi_h}";
  labels(fm, out.forms, "xi");
  for (auto& [deg, ms] : fm.masks)
    fill_series_diff(out.forms, fm, deg, deg + 1, [&](int t, Mask m, const Poly& x) {
      const auto& p = at_or(pi_h, t, zero);
      if (p.is_zero()) return std::map<Mask, Poly>{};
      EForm w;
      w.add(m, x);
      return lie_derivative(chart, p, w).terms;
    });
  out.form_homology = truncated_cohomology(out.forms);
  return out;
}

std::vector<Q> TraceSpace::apply(const Vec& tr, const std::vector<Poly>& f) const {
  std::vector<Q> out(K);
  for (int n = 0; n < K; ++n)
    for (int k = 0; k <= n; ++k) {
      if (n - k >= static_cast<int>(f.size())) continue;
      for (auto& [xm, q] : f[n - k].terms()) {
        auto it = std::find(monomials.begin(), monomials.end(), xm);
        if (it == monomials.end()) throw Rejected("trace applied outside its function space");
        out[n] += tr[index(k, static_cast<int>(it - monomials.begin()))] * q;
      }
    }
  return out;
}

bool TraceSpace::in_space(const Poly& f) const {
  for (auto& [xm, q] : f.terms())
    if (std::find(monomials.begin(), monomials.end(), xm) == monomials.end()) return false;
  return true;
}

std::vector<Poly> evaluate_on_series(const EJet& j, const PolyvectorSeries& pi_h, int K) {
  if (j.degree != 1) throw Rejected("evaluate_on_series: expects a degree 1 jet");
  std::vector<Poly> out(K);
  for (int s = 0; s < K && s < static_cast<int>(pi_h.size()); ++s)
    if (!pi_h[s].is_zero()) out[s] = j.eval(hkr_V(pi_h[s]));
  return out;
}

TraceSpace trace_space(const Enveloping& U, const PolyvectorSeries& pi_h, int K, int fcap, int jet_cap) {
  if (K < 1) throw Rejected("trace_space: K must be positive");
  for (auto& p : pi_h)
    for (auto& [m, f] : p.terms)
      if (popcount(m) != 2) throw Rejected("trace_space: pi_h must consist of bivectors");
  const AlgebroidChart& chart = U.chart();
  TraceSpace ts;
  ts.K = K;
  ts.monomials = xmonos(chart.n(), fcap);
  const int dim = K * static_cast<int>(ts.monomials.size());

  // All values j(pi_h) and their hbar shifts, over an extended monomial index.
  std::map<XMono, int> ext;
  std::vector<std::vector<Poly>> values;
  const auto chain_monos = xmonos(chart.n(), fcap + jet_cap);
  for (auto& m : enumerate_monos(chart.r(), jet_cap))
    for (auto& b : chain_monos) {
      EJet a{0, jet_cap, {}};
      a.set({m}, Poly::monomial(b, Q(1)));
      EJet j = varrho(U, EChain::of_jet(a), jet_cap);
      auto f = evaluate_on_series(j, pi_h, K);
      if (std::all_of(f.begin(), f.end(), [](const Poly& p) { return p.is_zero(); })) continue;
      for (int t = 0; t < K; ++t) {
        std::vector<Poly> shifted(K);
        for (int s = 0; s + t < K; ++s) shifted[s + t] = f[s];
        values.push_back(shifted);
      }
    }
  for (auto& v : values)
    for (auto& p : v)
      for (auto& [xm, q] : p.terms()) ext.emplace(xm, 0);
  std::vector<XMono> outside;
  for (auto& [xm, i] : ext)
    if (xm.degree() > fcap) outside.push_back(xm);

  // Combinations of the values whose parts above the cap cancel.
  Matrix high(K * outside.size(), Vec(values.size()));
  for (std::size_t c = 0; c < values.size(); ++c)
    for (int s = 0; s < K; ++s)
      for (auto& [xm, q] : values[c][s].terms()) {
        if (xm.degree() <= fcap) continue;
        auto pos = std::lower_bound(outside.begin(), outside.end(), xm) - outside.begin();
        high[s * outside.size() + pos][c] = q;
      }
  std::vector<Vec> combos;
  if (outside.empty()) {
    for (std::size_t c = 0; c < values.size(); ++c) {
      Vec e(values.size());
      e[c] = 1;
      combos.push_back(e);
    }
  } else {
    combos = kernel_basis(high, values.size());
  }

  // Each capped combination G gives the equations sum_k tau_k(G_{n-k}) = 0.
  for (auto& c : combos) {
    std::vector<Poly> g(K);
    for (std::size_t i = 0; i < values.size(); ++i)
      if (c[i] != 0)
        for (int s = 0; s < K; ++s) g[s] += c[i] * values[i][s];
    for (int s = 0; s < K; ++s) g[s] = g[s].truncated(fcap);
    for (int n = 0; n < K; ++n) {
      Vec row(dim);
      bool any = false;
      for (int k = 0; k <= n; ++k)
        for (auto& [xm, q] : g[n - k].terms()) {
          auto it = std::find(ts.monomials.begin(), ts.monomials.end(), xm);
          row[ts.index(k, static_cast<int>(it - ts.monomials.begin()))] += q;
          any = true;
        }
      if (any) ts.constraints.push_back(std::move(row));
    }
  }
  ts.basis = kernel_basis(ts.constraints, dim);
  return ts;
}

}  // namespace lafed
