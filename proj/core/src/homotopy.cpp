#include "lafed/homotopy.hpp"

#include "lafed/errors.hpp"
#include "lafed/forms.hpp"

namespace lafed {

Section delta_diff(const Section& s) {
  Section out(s.bundle, s.cap - 1);
  for (auto& [ks, c] : s.terms)
    for (int i = 0; i < kMaxRank; ++i) {
      const int xs = wedge_sign(Mask{1} << i, ks.xi);
      if (xs == 0) continue;
      FKey k = ks;
      k.xi = ks.xi | (Mask{1} << i);
      if (s.bundle == Bundle::J) {
        for (std::size_t m = 0; m < ks.ops.size(); ++m) {
          if (ks.ops[m].e[i] == 0) continue;
          k.ops = ks.ops;
          k.ops[m] = ks.ops[m].without(i);
          out.add(k, c * Q(xs * ks.ops[m].e[i]));
        }
        continue;
      }
      if (ks.y.e[i] == 0) continue;
      k.y = ks.y.without(i);
      out.add(k, c * Q(xs * ks.y.e[i]));
    }
  return out;
}

Section kappa(const Section& s) {
  if (s.bundle == Bundle::J) throw Rejected("kappa: not defined on chains");
  Section out(s.bundle, s.cap >= kExact ? kExact : s.cap + 1);
  for (auto& [ks, c] : s.terms) {
    const int q = popcount(ks.xi);
    if (q == 0) continue;
    const int p = ks.y.order();
    for (int i : mask_indices(ks.xi)) {
      FKey k = ks;
      k.xi = ks.xi & ~(Mask{1} << i);
      k.y = ks.y.with(i);
      Q w(left_derivative_sign(ks.xi, i), p + q);
      w.canonicalize();
      out.add(k, c * w);
    }
  }
  return out;
}

Section h_projection(const Section& s) {
  Section out(s.bundle, s.cap >= 0 ? kExact : s.cap);
  for (auto& [k, c] : s.terms)
    if (k.xi == 0 && y_degree(s.bundle, k) == 0) out.add(k, c);
  return out;
}

Section e_d(const AlgebroidChart& chart, const Section& s) {
  Section out(s.bundle, s.cap);
  for (auto& [ks, c] : s.terms) {
    EForm w;
    w.add(ks.xi, c);
    for (auto& [m, g] : e_de_rham(chart, w).terms) {
      FKey k = ks;
      k.xi = m;
      out.add(k, g);
    }
  }
  return out;
}

Section delta_generator(int r) {
  Section out(Bundle::T, kExact);
  for (int i = 0; i < r; ++i) {
    FKey k;
    k.xi = Mask{1} << i;
    k.odd = Mask{1} << i;
    out.add(k, Poly(1));
  }
  return out;
}

}  // namespace lafed
