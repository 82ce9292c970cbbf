#include <gtest/gtest.h>

#include "lafed/errors.hpp"
#include "lafed/fiber_ops.hpp"
#include "lafed/fixtures.hpp"
#include "lafed/homotopy.hpp"
#include "lafed/polyvector.hpp"
#include "support/fiber_random.hpp"

using namespace lafed;
using lafed::testing::FiberShape;
using lafed::testing::rand_fiber;
using lafed::testing::Rng;
using lafed::testing::uniform;

namespace {

YMono ym(std::initializer_list<int> e) {
  YMono m;
  int i = 0;
  for (int v : e) m.e[i++] = static_cast<std::uint8_t>(v);
  return m;
}

void put(Section& s, Mask xi, const YMono& y, Mask odd, std::vector<YMono> ops, const Q& c) {
  FKey k;
  k.xi = xi;
  k.y = y;
  k.odd = odd;
  k.ops = std::move(ops);
  s.add(k, Poly(c));
}

Section vf(int i, const YMono& y, const Q& c = 1) {
  Section s(Bundle::T, kExact);
  put(s, 0, y, Mask{1} << i, {}, c);
  return s;
}

Section fn(const YMono& y, const Q& c = 1) { return Section::y_mono(y, Poly(c)); }

Section op(std::vector<YMono> ops, const YMono& y = {}, const Q& c = 1, Mask xi = 0) {
  Section s(Bundle::D, kExact);
  put(s, xi, y, 0, std::move(ops), c);
  return s;
}

int total_degree(const Section& s) {
  const auto& k = s.terms.begin()->first;
  return popcount(k.xi) + payload_degree(s.bundle, k);
}

// Random section of a single total degree: fixed xi-degree and payload degree.
Section homogeneous(Rng& rng, Bundle b, int xi, int payload, int ydeg = 2, int r = 2) {
  FiberShape sh;
  sh.r = r;
  sh.xi = xi;
  sh.payload = payload;
  sh.ydeg = ydeg;
  sh.op_order = 1;
  sh.terms = 2;
  return rand_fiber(rng, b, sh);
}

Section signed_sum(const Section& a, const Section& b, int sign) {
  Section out = a;
  if (sign > 0) out += b;
  else out -= b;
  return out;
}

}  // namespace

TEST(FiberSchouten, Examples) {
  Section one(Bundle::T, kExact);
  put(one, 0, {}, 0, {}, 1);
  EXPECT_EQ(fw_schouten(vf(0, {}), fn(ym({1}))), one);
  Section lhs = fw_schouten(vf(0, ym({0, 1})), vf(1, ym({1, 0})));
  Section rhs = vf(1, ym({0, 1})) - vf(0, ym({1, 0}));
  EXPECT_EQ(lhs, rhs);

  Section biv(Bundle::T, kExact);
  put(biv, 0, {}, 0b11, {}, 1);
  Section br = fw_schouten(biv, fn(ym({1, 1})));
  EXPECT_EQ(br, vf(0, ym({1, 0})) - vf(1, ym({0, 1})));
}

TEST(FiberSchouten, GerstenhaberOnAntisymmetrizedBivector) {
  // The same pair through the antisymmetrization map and the Gerstenhaber
  // bracket gives the opposite sign.
  Section v = op({ym({1}), ym({0, 1})}, {}, Q(1, 2)) - op({ym({0, 1}), ym({1})}, {}, Q(1, 2));
  Section f(Bundle::D, kExact);
  put(f, 0, ym({1, 1}), 0, {}, 1);
  Section g = fw_gerstenhaber(v, f);
  Section expected = op({ym({0, 1})}, ym({0, 1})) - op({ym({1})}, ym({1}));
  EXPECT_EQ(g, expected);
}

TEST(FiberSchouten, MatchesChartBracketOnTangentChart) {
  Rng rng(301);
  auto ch = fixtures::tangent2().chart;
  auto to_pv = [&](const Section& s) {
    EPolyvector v;
    for (auto& [k, c] : s.terms) {
      XMono m;
      for (int i = 0; i < 2; ++i) m.e[i] = k.y.e[i];
      v.add(k.odd, Poly::monomial(m, c.constant_term()));
    }
    return v;
  };
  for (int trial = 0; trial < 60; ++trial) {
    FiberShape sh;
    sh.n = 0;
    sh.xi = 0;
    sh.ydeg = 3;
    auto u = rand_fiber(rng, Bundle::T, sh), v = rand_fiber(rng, Bundle::T, sh);
    EXPECT_EQ(to_pv(fw_schouten(u, v)), schouten(ch, to_pv(u), to_pv(v))) << u.str(0) << " , " << v.str(0);
  }
}

TEST(FiberSchouten, GradedAntisymmetryAndJacobi) {
  Rng rng(302);
  for (int trial = 0; trial < 80; ++trial) {
    Section a = homogeneous(rng, Bundle::T, uniform(rng, 0, 1), uniform(rng, -1, 1));
    Section b = homogeneous(rng, Bundle::T, uniform(rng, 0, 1), uniform(rng, -1, 1));
    Section c = homogeneous(rng, Bundle::T, uniform(rng, 0, 1), uniform(rng, -1, 1));
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    const int da = total_degree(a), db = total_degree(b);
    Section ab = fw_schouten(a, b), ba = fw_schouten(b, a);
    EXPECT_EQ(ab, signed_sum(Section(Bundle::T, kExact), ba, (da * db) % 2 ? 1 : -1));
    Section lhs = fw_schouten(a, fw_schouten(b, c));
    Section rhs = signed_sum(fw_schouten(ab, c), fw_schouten(b, fw_schouten(a, c)), (da * db) % 2 ? -1 : 1);
    EXPECT_EQ(lhs, rhs) << a.str(1) << " | " << b.str(1) << " | " << c.str(1);
  }
}

TEST(FiberSchouten, LeibnizOverWedge) {
  Rng rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    int k = uniform(rng, -1, 1), l = uniform(rng, -1, 1);
    Section u = homogeneous(rng, Bundle::T, 0, k), v = homogeneous(rng, Bundle::T, 0, l);
    Section w = homogeneous(rng, Bundle::T, 0, uniform(rng, -1, 1));
    Section lhs = fw_schouten(u, fw_wedge(v, w));
    Section rhs = signed_sum(fw_wedge(fw_schouten(u, v), w), fw_wedge(v, fw_schouten(u, w)),
                             (k * (l + 1)) % 2 ? -1 : 1);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(FiberOperators, Examples) {
  Section d1 = op({ym({1})});
  Section y1d1 = op({ym({1})}, ym({1}));
  EXPECT_EQ(fw_compose(d1, y1d1), op({ym({1})}) + op({ym({2})}, ym({1})));

  Section m = fw_multiplication();
  EXPECT_TRUE(fw_gerstenhaber(m, m).is_zero());

  Section a(Bundle::D, kExact);
  put(a, 0, ym({2, 1}), 0, {}, 3);
  EXPECT_TRUE(fw_cochain_d(a).is_zero());
}

TEST(FiberOperators, ComposeIsAssociative) {
  Rng rng(304);
  for (int trial = 0; trial < 40; ++trial) {
    Section p = homogeneous(rng, Bundle::D, 0, 0), q = homogeneous(rng, Bundle::D, 0, 0),
            s = homogeneous(rng, Bundle::D, uniform(rng, 0, 1), 0);
    EXPECT_EQ(fw_compose(fw_compose(p, q), s), fw_compose(p, fw_compose(q, s)));
  }
}

TEST(FiberOperators, GerstenhaberJacobiAndHochschildSquare) {
  Rng rng(305);
  for (int trial = 0; trial < 50; ++trial) {
    Section a = homogeneous(rng, Bundle::D, uniform(rng, 0, 1), uniform(rng, -1, 1));
    Section b = homogeneous(rng, Bundle::D, uniform(rng, 0, 1), uniform(rng, -1, 1));
    Section c = homogeneous(rng, Bundle::D, uniform(rng, 0, 1), uniform(rng, -1, 1));
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    const int da = total_degree(a), db = total_degree(b);
    Section ab = fw_gerstenhaber(a, b);
    EXPECT_EQ(ab, signed_sum(Section(Bundle::D, kExact), fw_gerstenhaber(b, a), (da * db) % 2 ? 1 : -1));
    Section lhs = fw_gerstenhaber(a, fw_gerstenhaber(b, c));
    Section rhs = signed_sum(fw_gerstenhaber(ab, c), fw_gerstenhaber(b, fw_gerstenhaber(a, c)),
                             (da * db) % 2 ? -1 : 1);
    EXPECT_EQ(lhs, rhs);
    EXPECT_TRUE(fw_cochain_d(fw_cochain_d(a)).is_zero());
  }
}

TEST(FiberOperators, VectorFieldsAreCocycles) {
  Rng rng(306);
  for (int trial = 0; trial < 20; ++trial) {
    Section v = homogeneous(rng, Bundle::T, uniform(rng, 0, 2), 0);
    EXPECT_TRUE(fw_cochain_d(as_operator(v)).is_zero());
  }
}

TEST(FiberChains, Examples) {
  Section a0 = fn(ym({1})), a1 = fn(ym({0, 1})), a2 = fn(ym({2}));
  EXPECT_TRUE(fw_chain_b(fw_chain({a0, a1})).is_zero());
  Section b = fw_chain_b(fw_chain({a0, a1, a2}));
  Section expected = fw_chain({fw_mul(a0, a1), a2}) - fw_chain({a0, fw_mul(a1, a2)}) + fw_chain({fw_mul(a2, a0), a1});
  EXPECT_EQ(b, expected);
  EXPECT_EQ(fw_chain_action(fw_multiplication(), fw_chain({a0, a1, a2})), b);
}

TEST(FiberChains, BSquaresToZero) {
  Rng rng(307);
  for (int trial = 0; trial < 40; ++trial) {
    Section c = homogeneous(rng, Bundle::J, uniform(rng, 0, 1), uniform(rng, 1, 3));
    EXPECT_TRUE(fw_chain_b(fw_chain_b(c)).is_zero());
  }
}

TEST(FiberChains, RepresentsGerstenhaberBracket) {
  Rng rng(308);
  for (int trial = 0; trial < 40; ++trial) {
    int d1 = uniform(rng, 0, 1), d2 = uniform(rng, 0, 1);
    Section p = homogeneous(rng, Bundle::D, 0, d1), q = homogeneous(rng, Bundle::D, 0, d2);
    Section c = homogeneous(rng, Bundle::J, 0, d1 + d2 + uniform(rng, 0, 1));
    Section lhs = signed_sum(fw_chain_action(p, fw_chain_action(q, c)), fw_chain_action(q, fw_chain_action(p, c)),
                             (d1 * d2) % 2 ? 1 : -1);
    EXPECT_EQ(lhs, fw_chain_action(fw_gerstenhaber(p, q), c)) << "d1=" << d1 << " d2=" << d2;
  }
}

TEST(FiberChains, CompatibleWithB) {
  Rng rng(309);
  for (int trial = 0; trial < 40; ++trial) {
    int k = uniform(rng, 0, 1);
    Section p = homogeneous(rng, Bundle::D, 0, k);
    Section c = homogeneous(rng, Bundle::J, 0, k + 1 + uniform(rng, 0, 1));
    Section lhs = fw_chain_b(fw_chain_action(p, c));
    Section rhs = signed_sum(fw_chain_action(fw_cochain_d(p), c), fw_chain_action(p, fw_chain_b(c)), k % 2 ? -1 : 1);
    EXPECT_EQ(lhs, rhs) << "k=" << k;
  }
}

TEST(FiberChains, PairingIsDualToBullet) {
  Rng rng(310);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 0, l = uniform(rng, 0, 2);
    Section p = homogeneous(rng, Bundle::D, 0, k);
    Section x = homogeneous(rng, Bundle::D, 0, l - k);
    Section c = homogeneous(rng, Bundle::J, 0, l);
    // Unary operators have no cyclic terms.
    EXPECT_EQ(fw_pair(x, fw_chain_action(p, c)), fw_pair(fw_bullet(x, p), c));
  }
}

TEST(Delta, Examples) {
  Section d = delta_diff(fn(ym({1})));
  Section xi1(Bundle::S, kExact);
  put(xi1, 0b1, {}, 0, {}, 1);
  EXPECT_EQ(d, xi1);

  Section e = delta_diff(fn(ym({1, 1})));
  Section expected(Bundle::S, kExact);
  put(expected, 0b1, ym({0, 1}), 0, {}, 1);
  put(expected, 0b10, ym({1, 0}), 0, {}, 1);
  EXPECT_EQ(e, expected);

  EXPECT_TRUE(delta_diff(vf(0, {})).is_zero());
}

TEST(Delta, SquaresToZeroAndMatchesGenerator) {
  Rng rng(311);
  for (Bundle b : {Bundle::S, Bundle::A, Bundle::T, Bundle::D, Bundle::J}) {
    for (int trial = 0; trial < 25; ++trial) {
      FiberShape sh;
      sh.r = 3;
      Section s = rand_fiber(rng, b, sh);
      EXPECT_TRUE(delta_diff(delta_diff(s)).is_zero()) << bundle_name(b);
      EXPECT_EQ(delta_diff(s), vf_act(delta_generator(3), s)) << bundle_name(b) << " " << s.str(1);
    }
  }
}

TEST(Delta, DerivationOfProductsAndBrackets) {
  Rng rng(312);
  for (int trial = 0; trial < 40; ++trial) {
    for (Bundle b : {Bundle::A, Bundle::T, Bundle::D}) {
      FiberShape sh;
      sh.ydeg = 2;
      sh.op_order = 1;
      sh.xi = uniform(rng, 0, 1);
      sh.payload = b == Bundle::A ? uniform(rng, 0, 1) : uniform(rng, -1, 1);
      Section u = rand_fiber(rng, b, sh);
      sh.xi = -1;
      sh.payload = -2;
      Section v = rand_fiber(rng, b, sh);
      if (u.is_zero()) continue;
      const auto& k = u.terms.begin()->first;
      const int unshifted = popcount(k.xi) + (b == Bundle::D ? static_cast<int>(k.ops.size()) : popcount(k.odd));
      Section lhs = delta_diff(fw_mul(u, v));
      Section rhs = signed_sum(fw_mul(delta_diff(u), v), fw_mul(u, delta_diff(v)), unshifted % 2 ? -1 : 1);
      EXPECT_EQ(lhs, rhs) << bundle_name(b);
      if (b == Bundle::A) continue;
      const int shifted = total_degree(u);
      auto br = [&](const Section& x, const Section& y) {
        return b == Bundle::T ? fw_schouten(x, y) : fw_gerstenhaber(x, y);
      };
      Section lb = delta_diff(br(u, v));
      Section rb = signed_sum(br(delta_diff(u), v), br(u, delta_diff(v)), shifted % 2 ? -1 : 1);
      EXPECT_EQ(lb, rb) << bundle_name(b);
    }
  }
}

TEST(Delta, AnticommutesWithChainB) {
  Rng rng(313);
  for (int trial = 0; trial < 30; ++trial) {
    Section c = homogeneous(rng, Bundle::J, uniform(rng, 0, 1), uniform(rng, 1, 2), 3, 3);
    EXPECT_TRUE((delta_diff(fw_chain_b(c)) + fw_chain_b(delta_diff(c))).is_zero());
  }
}

TEST(Kappa, Examples) {
  Section xi1(Bundle::S, kExact);
  put(xi1, 0b1, {}, 0, {}, 1);
  EXPECT_EQ(kappa(xi1), fn(ym({1})));

  Section s(Bundle::S, kExact);
  put(s, 0b10, ym({1}), 0, {}, 1);
  EXPECT_EQ(kappa(s), fn(ym({1, 1}), Q(1, 2)));
  EXPECT_EQ(delta_diff(kappa(s)) + kappa(delta_diff(s)), s);

  Section f = Section::function(Poly::var(0)) + Section::y_mono(ym({0, 1}), Poly::var(0) * Poly::var(0));
  EXPECT_EQ(h_projection(f), Section::function(Poly::var(0)));

  EXPECT_THROW(kappa(fw_chain({fn({})})), Rejected);
}

TEST(Kappa, HomotopyIdentity) {
  Rng rng(314);
  const int N = 5;
  for (Bundle b : {Bundle::S, Bundle::A, Bundle::T, Bundle::D}) {
    for (int trial = 0; trial < 200; ++trial) {
      FiberShape sh;
      sh.r = 3;
      sh.ydeg = N;
      sh.xi = uniform(rng, 0, 3);
      sh.cap = N;
      Section s = rand_fiber(rng, b, sh);
      Section rebuilt = delta_diff(kappa(s)) + kappa(delta_diff(s)) + h_projection(s);
      EXPECT_GE(rebuilt.cap, N);
      EXPECT_TRUE(agree_to(rebuilt, s, N)) << bundle_name(b) << " " << s.str(1);
      EXPECT_TRUE(kappa(kappa(s)).is_zero());
    }
  }
}

TEST(FiberForms, LieDerivativeAgreesWithVectorFieldAction) {
  Rng rng(315);
  for (int trial = 0; trial < 40; ++trial) {
    Section x = homogeneous(rng, Bundle::T, 0, 0, 2, 3);
    Section w = homogeneous(rng, Bundle::A, 0, uniform(rng, 0, 2), 2, 3);
    EXPECT_EQ(fw_lie(x, w), vf_act(x, w));
    EXPECT_TRUE(fw_de_rham(fw_de_rham(w)).is_zero());
  }
}

TEST(FiberForms, VectorFieldActionIsABracketRepresentation) {
  Rng rng(316);
  for (Bundle b : {Bundle::S, Bundle::A, Bundle::T, Bundle::D, Bundle::J}) {
    for (int trial = 0; trial < 20; ++trial) {
      Section x = homogeneous(rng, Bundle::T, 0, 0, 2, 2), y = homogeneous(rng, Bundle::T, 0, 0, 2, 2);
      FiberShape sh;
      sh.xi = 0;
      sh.ydeg = 2;
      sh.op_order = 1;
      Section s = rand_fiber(rng, b, sh);
      Section lhs = vf_act(x, vf_act(y, s)) - vf_act(y, vf_act(x, s));
      EXPECT_EQ(lhs, vf_act(fw_schouten(x, y), s)) << bundle_name(b);
    }
  }
}
