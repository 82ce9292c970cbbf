#include <gtest/gtest.h>
#include <algorithm>

#include "lafed/errors.hpp"
#include "lafed/fixtures.hpp"
#include "lafed/jets.hpp"
#include "support/random.hpp"

using namespace lafed;
using lafed::testing::restrict_cap;
using lafed::testing::Rng;
using lafed::testing::uniform;

namespace {

EJet rand_jet(Rng& rng, const AlgebroidChart& ch, int degree, int cap) {
  return lafed::testing::rand_jet(rng, ch.n(), ch.r(), degree, cap);
}

EPolyOp rand_op(Rng& rng, const AlgebroidChart& ch, int k, int cap) {
  return lafed::testing::rand_op(rng, ch.n(), ch.r(), k, 1, cap, 2);
}

void expect_jets_equal(const EJet& a, const EJet& b, const std::string& what) {
  int cap = std::min(a.cap, b.cap);
  EXPECT_EQ(restrict_cap(a, cap), restrict_cap(b, cap)) << what;
}

std::vector<Poly> rand_section(Rng& rng, const AlgebroidChart& ch) {
  std::vector<Poly> u(ch.r());
  for (auto& p : u) p = lafed::testing::rand_poly(rng, ch.n(), 1, 2);
  return u;
}

}  // namespace

TEST(Cyclic, DefinitionAndOrder) {
  Rng rng(51);
  auto ch = fixtures::sl2().chart;
  auto a = rand_jet(rng, ch, 0, 3);
  EXPECT_EQ(cyclic(a), a);
  auto b = rand_jet(rng, ch, 1, 3);
  auto tb = cyclic(b);
  for (auto& t : enumerate_tuples(3, 2, 3)) EXPECT_EQ(tb.at(t), b.at({t[1], t[0]}));
  EXPECT_EQ(cyclic(tb), b);
  auto c = rand_jet(rng, ch, 2, 3);
  EXPECT_EQ(cyclic(c, 3), c);
  auto tc = cyclic(c);
  for (auto& t : enumerate_tuples(3, 3, 2)) EXPECT_EQ(tc.at(t), c.at({t[1], t[2], t[0]}));
}

TEST(JetAction, FunctionOnFlatJet) {
  auto f = fixtures::sl2();
  Enveloping U(f.chart);
  Poly g = Poly::var(0) * Poly::var(0), h = Poly::var(0) + Poly(2);
  auto a = varrho(U, EChain::function(g), 3);
  auto s = jet_action(U, EPolyOp::function(h), a);
  EXPECT_EQ(s.degree, 1);
  for (auto& q : enumerate_tuples(3, 2, 3)) EXPECT_EQ(s.at(q), a.eval(bullet(U, EPolyOp::tuple(q), EPolyOp::function(h))));
}

TEST(JetAction, BudgetIsEnforced) {
  auto f = fixtures::sl2();
  Enveloping U(f.chart);
  EJet a{1, 1, {}};
  EXPECT_THROW(jet_action(U, EPolyOp::tuple({UMono::gen(0).with(1)}), a), BudgetExhausted);
  EJet z{1, 0, {}};
  EXPECT_NO_THROW(jet_action(U, EPolyOp::unit(2), z));
}

TEST(JetAction, BSquaresToZero) {
  Rng rng(52);
  for (auto& f : fixtures::valid()) {
    Enveloping U(f.chart);
    for (int trial = 0; trial < 5; ++trial) {
      auto a = rand_jet(rng, f.chart, uniform(rng, 2, 3), 3);
      EXPECT_TRUE(jet_b(U, jet_b(U, a)).is_zero()) << f.chart.name;
    }
  }
}

TEST(JetAction, BOnDegreeOneExpansion) {
  // b(a)(Q) = a(Q . (1 (x) 1)) - t(a)(Delta(Q))
  Rng rng(53);
  auto f = fixtures::aff1();
  Enveloping U(f.chart);
  auto a = rand_jet(rng, f.chart, 1, 3);
  auto b = jet_b(U, a);
  for (auto& q : enumerate_tuples(2, 1, 3)) {
    EPolyOp qop = EPolyOp::tuple(q);
    Poly expect = a.eval(bullet(U, qop, EPolyOp::unit(2))) - cyclic(a).eval(delta_at(U, qop, 0, 1));
    EXPECT_EQ(b.at(q), expect);
  }
}

TEST(JetAction, GetzlerCrossCheck) {
  Rng rng(54);
  int checked = 0;
  for (auto& f : fixtures::valid()) {
    Enveloping U(f.chart);
    for (int trial = 0; trial < 10; ++trial) {
      int d1 = uniform(rng, 0, 1), d2 = uniform(rng, 0, 1);
      int n = d1 + d2 + uniform(rng, 0, 1);
      auto p1 = rand_op(rng, f.chart, d1, 1), p2 = rand_op(rng, f.chart, d2, 1);
      if (p1.is_zero() || p2.is_zero()) continue;
      auto a = rand_jet(rng, f.chart, n, 4);
      auto lhs = jet_action(U, p1, jet_action(U, p2, a));
      auto comp = bullet(U, p1, p2);
      EJet rhs = comp.is_zero() ? EJet{n - d1 - d2, lhs.cap, {}} : jet_action(U, comp, a);
      rhs += getzler_H(U, p1, p2, a);
      auto h21 = getzler_H(U, p2, p1, a);
      if ((d1 * d2) % 2) rhs -= h21;
      else rhs += h21;
      expect_jets_equal(lhs, rhs, f.chart.name + " d1=" + std::to_string(d1) + " d2=" + std::to_string(d2) +
                                      " n=" + std::to_string(n));
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(JetAction, RepresentsGerstenhaberBracket) {
  Rng rng(55);
  for (auto& f : fixtures::valid()) {
    Enveloping U(f.chart);
    for (int trial = 0; trial < 6; ++trial) {
      int d1 = uniform(rng, 0, 1), d2 = uniform(rng, 0, 1);
      int n = d1 + d2 + uniform(rng, 0, 1);
      auto p1 = rand_op(rng, f.chart, d1, 1), p2 = rand_op(rng, f.chart, d2, 1);
      auto a = rand_jet(rng, f.chart, n, 4);
      auto lhs = jet_action(U, p1, jet_action(U, p2, a));
      auto other = jet_action(U, p2, jet_action(U, p1, a));
      if ((d1 * d2) % 2) lhs += other;
      else lhs -= other;
      auto br = gerstenhaber(U, p1, p2);
      if (br.is_zero()) {
        EXPECT_TRUE(restrict_cap(lhs, lhs.cap).is_zero())
            << f.chart.name << " d1=" << d1 << " d2=" << d2 << " n=" << n;
        continue;
      }
      expect_jets_equal(lhs, jet_action(U, br, a),
                        f.chart.name + " d1=" + std::to_string(d1) + " d2=" + std::to_string(d2) + " n=" + std::to_string(n));
    }
  }
}

TEST(JetAction, CompatibleWithB) {
  Rng rng(56);
  for (auto& f : fixtures::valid()) {
    Enveloping U(f.chart);
    for (int trial = 0; trial < 5; ++trial) {
      int k = uniform(rng, 0, 1);
      auto p = rand_op(rng, f.chart, k, 1);
      int l = std::max(k + 1, 1) + uniform(rng, 0, 1);
      auto a = rand_jet(rng, f.chart, l, 4);
      auto lhs = jet_b(U, jet_action(U, p, a));
      auto dp = cochain_d(U, p);
      EJet rhs = dp.is_zero() ? EJet{lhs.degree, lhs.cap, {}} : jet_action(U, dp, a);
      auto second = jet_action(U, p, jet_b(U, a));
      if (k % 2) rhs -= second;
      else rhs += second;
      expect_jets_equal(lhs, rhs, f.chart.name + " k=" + std::to_string(k) + " l=" + std::to_string(l));
    }
  }
}

TEST(JetAction, FunctionsAnticommuteWithBOnlyUpToCyclicTerms) {
  // a(P0, P1) = P0(x) P1(x), f = x: b S_f + S_f b leaves x^3 at (1, 1).
  auto f = *fixtures::by_name("abelian1");
  Enveloping U(f.chart);
  Poly x = Poly::var(0);
  EJet a{1, 3, {}};
  for (auto& t : enumerate_tuples(1, 2, 3)) a.set(t, U.anchor_apply(t[0], x) * U.anchor_apply(t[1], x));
  auto fx = EPolyOp::function(x);
  auto lhs = jet_b(U, jet_action(U, fx, a)) + jet_action(U, fx, jet_b(U, a));
  EXPECT_EQ(lhs.at({UMono{}, UMono{}}), x * x * x);
}

TEST(Grothendieck, FlatOnLifts) {
  Rng rng(57);
  for (auto& f : fixtures::valid()) {
    Enveloping U(f.chart);
    for (int trial = 0; trial < 4; ++trial) {
      auto g = lafed::testing::rand_poly(rng, f.chart.n(), 3, 3);
      auto a = varrho(U, EChain::function(g), 3);
      for (int i = 0; i < f.chart.r(); ++i) {
        std::vector<Poly> u(f.chart.r());
        u[i] = Poly(1);
        EXPECT_TRUE(grothendieck(U, u, a).is_zero()) << f.chart.name;
      }
      auto c = EChain::of_jet(rand_jet(rng, f.chart, uniform(rng, 0, 1), 3));
      auto lift = varrho(U, c, 3);
      EXPECT_TRUE(grothendieck(U, rand_section(rng, f.chart), lift).is_zero()) << f.chart.name;
    }
  }
}

TEST(Grothendieck, ZeroSection) {
  Rng rng(58);
  auto f = fixtures::sl2();
  Enveloping U(f.chart);
  auto a = rand_jet(rng, f.chart, 1, 3);
  EXPECT_TRUE(grothendieck(U, std::vector<Poly>(3), a).is_zero());
}

TEST(Grothendieck, CommutesWithActionAndCyclic) {
  Rng rng(59);
  for (auto& f : fixtures::valid()) {
    Enveloping U(f.chart);
    for (int trial = 0; trial < 4; ++trial) {
      auto u = rand_section(rng, f.chart);
      int k = uniform(rng, 0, 1);
      auto p = rand_op(rng, f.chart, k, 1);
      auto a = rand_jet(rng, f.chart, std::max(k, 0) + 1, 4);
      expect_jets_equal(grothendieck(U, u, jet_action(U, p, a)), jet_action(U, p, grothendieck(U, u, a)),
                        f.chart.name);
      expect_jets_equal(grothendieck(U, u, cyclic(a)), cyclic(grothendieck(U, u, a)), f.chart.name);
    }
  }
}

TEST(Varrho, Examples) {
  auto f = fixtures::sl2();
  Enveloping U(f.chart);
  Poly x = Poly::var(0);
  auto a = varrho(U, EChain::function(x * x), 3);
  EXPECT_EQ(a.at({UMono::gen(0)}), Q(2) * x);
  for (auto& m : enumerate_monos(3, 3)) EXPECT_EQ(a.at({m}), U.anchor_apply(m, x * x));
}

TEST(Varrho, ChiInverts) {
  Rng rng(60);
  for (auto& f : fixtures::valid()) {
    Enveloping U(f.chart);
    for (int trial = 0; trial < 4; ++trial) {
      Poly g = lafed::testing::rand_poly(rng, f.chart.n(), 2, 2);
      EXPECT_EQ(chi(varrho(U, EChain::function(g), 3)), EChain::function(g));
      auto c = EChain::of_jet(rand_jet(rng, f.chart, uniform(rng, 0, 1), 3));
      auto lift = varrho(U, c, 3);
      EXPECT_EQ(chi(lift), c);
      // varrho o chi = id on flat jets
      EXPECT_EQ(varrho(U, chi(lift), 3), lift);
    }
  }
}

TEST(Varrho, PeelOrderIsIrrelevant) {
  Rng rng(61);
  for (auto& f : fixtures::valid()) {
    Enveloping U(f.chart);
    auto c = EChain::of_jet(rand_jet(rng, f.chart, 1, 3));
    EXPECT_EQ(varrho(U, c, 3, PeelOrder::Smallest), varrho(U, c, 3, PeelOrder::Largest)) << f.chart.name;
  }
}

TEST(Chains, BVanishesOnFunctions) {
  auto f = fixtures::sl2();
  Enveloping U(f.chart);
  EXPECT_TRUE(chain_b(U, EChain::function(Poly::var(0)), 3).is_zero());
}

TEST(Chains, FunctionActionOnFunctions) {
  // E-R_f(g)(P) = f rho(P) g - g rho(P) f
  auto fx = fixtures::sl2();
  Enveloping U(fx.chart);
  Poly x = Poly::var(0);
  Poly f = x + Poly(1), g = x * x;
  auto r = chain_action(U, EPolyOp::function(f), EChain::function(g), 3);
  ASSERT_EQ(r.degree, -1);
  for (auto& m : enumerate_monos(3, 3))
    EXPECT_EQ(r.jet.at({m}), f * U.anchor_apply(m, g) - g * U.anchor_apply(m, f));
}

TEST(Chains, BSquaresToZero) {
  Rng rng(62);
  for (auto& f : fixtures::valid()) {
    Enveloping U(f.chart);
    for (int deg = -1; deg >= -2; --deg) {
      auto c = EChain::of_jet(rand_jet(rng, f.chart, -deg - 1, 3));
      auto bb = chain_b(U, chain_b(U, c, 3), 3);
      EXPECT_TRUE(bb.is_zero()) << f.chart.name;
    }
  }
}

TEST(Chains, BIsDualToHochschildDifferential) {
  // (b c)(P) = (-1)^(slots+1) c(d P) on chains, with d = [1 (x) 1, .]_G
  Rng rng(63);
  for (auto& f : fixtures::valid()) {
    Enveloping U(f.chart);
    for (int deg = -2; deg <= -1; ++deg) {
      auto c = EChain::of_jet(rand_jet(rng, f.chart, -deg - 1, 3));
      auto bc = chain_b(U, c, 3);
      int slots = -deg - 1;  // b c is a jet of degree -deg-2, evaluated on D^{-deg-2}
      for (auto& t : enumerate_tuples(f.chart.r(), slots, 2)) {
        Poly lhs = bc.degree == 0 ? bc.f : bc.jet.at(t);
        Poly rhs = slots == 0 ? Poly() : c.jet.eval(cochain_d(U, EPolyOp::tuple(t)));
        EXPECT_EQ(lhs, Q(-sign_of(slots)) * rhs) << f.chart.name << " deg=" << deg;
      }
    }
  }
}
