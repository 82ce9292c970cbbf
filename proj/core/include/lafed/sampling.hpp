#pragma once

// Seeded generators for random chart data.

#include <algorithm>
#include <random>
#include <vector>

#include "lafed/forms.hpp"
#include "lafed/jets.hpp"
#include "lafed/polyop.hpp"
#include "lafed/section.hpp"

namespace lafed::sampling {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Q rand_q(Rng& rng) {
  int num = uniform(rng, -4, 4);
  if (num == 0) num = 1;
  Q q(num, uniform(rng, 1, 3));
  q.canonicalize();
  return q;
}

inline XMono rand_xmono(Rng& rng, int n, int deg) {
  XMono m;
  int d = uniform(rng, 0, deg);
  for (int k = 0; k < d && n > 0; ++k) ++m.e[uniform(rng, 0, n - 1)];
  return m;
}

inline Poly rand_poly(Rng& rng, int n, int deg, int terms) {
  Poly p;
  for (int t = 0; t < terms; ++t) p.add_term(rand_xmono(rng, n, deg), rand_q(rng));
  return p;
}

inline Mask rand_mask(Rng& rng, int r, int size) {
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  Mask m = 0;
  for (int i = 0; i < size && i < r; ++i) m |= Mask{1} << idx[i];
  return m;
}

// Homogeneous of degree k (k+1 factors); zero when k+1 > r.
inline EPolyvector rand_pv(Rng& rng, const AlgebroidChart& ch, int k, int terms = 2) {
  EPolyvector v;
  if (k + 1 > ch.r()) return v;
  for (int t = 0; t < terms; ++t) v.add(rand_mask(rng, ch.r(), k + 1), rand_poly(rng, ch.n(), 2, 2));
  return v;
}

inline EForm rand_form(Rng& rng, const AlgebroidChart& ch, int q, int terms = 2) {
  EForm w;
  if (q > ch.r()) return w;
  for (int t = 0; t < terms; ++t) w.add(rand_mask(rng, ch.r(), q), rand_poly(rng, ch.n(), 2, 2));
  return w;
}

inline UMono rand_umono(Rng& rng, int r, int order) {
  UMono m;
  for (int k = 0; k < order; ++k) ++m.e[uniform(rng, 0, r - 1)];
  return m;
}

// Homogeneous operator of degree k with slot orders <= ord and total order <= cap.
inline EPolyOp rand_op(Rng& rng, int n, int r, int k, int ord, int cap, int terms = 2) {
  EPolyOp p;
  for (int t = 0; t < terms; ++t) {
    Tuple tu;
    int left = cap;
    for (int s = 0; s <= k; ++s) {
      int o = std::min(uniform(rng, 0, ord), left);
      tu.push_back(rand_umono(rng, r, o));
      left -= o;
    }
    p.add(tu, rand_poly(rng, n, 1, 2));
  }
  return p;
}

}  // namespace lafed::sampling


namespace lafed::sampling {

inline EJet rand_jet(Rng& rng, int n, int r, int degree, int cap, int density = 3) {
  EJet a{degree, cap, {}};
  for (auto& t : enumerate_tuples(r, degree + 1, cap))
    if (uniform(rng, 0, density) == 0) a.set(t, rand_poly(rng, n, 1, 2));
  return a;
}

inline EJet restrict_cap(const EJet& a, int cap) {
  EJet out{a.degree, cap, {}};
  for (auto& [t, v] : a.table)
    if (tuple_order(t) <= cap) out.set(t, v);
  return out;
}

}  // namespace lafed::sampling

namespace lafed::sampling {


inline YMono rand_ymono(Rng& rng, int r, int max_order) {
  YMono m;
  int d = uniform(rng, 0, max_order);
  for (int k = 0; k < d; ++k) ++m.e[uniform(rng, 0, r - 1)];
  return m;
}

struct FiberShape {
  int r = 2;          // fiber rank
  int n = 1;          // base dimension
  int ydeg = 3;       // y-degree of coefficients (per group for J)
  int xi = -1;        // E-form degree, -1 = random in [0, 2]
  int payload = -2;   // payload degree, -2 = random
  int op_order = 2;   // D: derivative order per slot
  int terms = 3;
  int cap = kExact;
};

inline FKey rand_fkey(Rng& rng, Bundle b, const FiberShape& s) {
  FKey k;
  k.xi = rand_mask(rng, s.r, s.xi >= 0 ? s.xi : uniform(rng, 0, std::min(2, s.r)));
  if (b != Bundle::J) k.y = rand_ymono(rng, s.r, s.ydeg);
  switch (b) {
    case Bundle::S: break;
    case Bundle::A:
      k.odd = rand_mask(rng, s.r, s.payload >= 0 ? s.payload : uniform(rng, 0, std::min(2, s.r)));
      break;
    case Bundle::T:
      k.odd = rand_mask(rng, s.r, s.payload >= -1 ? s.payload + 1 : uniform(rng, 0, std::min(2, s.r)));
      break;
    case Bundle::D: {
      int slots = s.payload >= -1 ? s.payload + 1 : uniform(rng, 0, 2);
      for (int t = 0; t < slots; ++t) k.ops.push_back(rand_ymono(rng, s.r, s.op_order));
      break;
    }
    case Bundle::J: {
      int groups = s.payload >= 0 ? s.payload + 1 : uniform(rng, 1, 3);
      for (int t = 0; t < groups; ++t) k.ops.push_back(rand_ymono(rng, s.r, s.ydeg));
      break;
    }
  }
  return k;
}

inline Section rand_fiber(Rng& rng, Bundle b, const FiberShape& s) {
  Section out(b, s.cap);
  for (int t = 0; t < s.terms; ++t) out.add(rand_fkey(rng, b, s), rand_poly(rng, s.n, 1, 2));
  return out;
}

}  // namespace lafed::sampling
