#include <gtest/gtest.h>

#include "lafed/errors.hpp"
#include "lafed/fixtures.hpp"
#include "lafed/hkr.hpp"
#include "lafed/quantize.hpp"
#include "support/random.hpp"

using namespace lafed;
using lafed::testing::rand_jet;
using lafed::testing::rand_poly;
using lafed::testing::Rng;
using lafed::testing::uniform;

namespace {

AlgebroidChart abelian_point(int r) {
  AlgebroidChart ch(0, r);
  ch.name = "abelian point";
  return ch;
}

EPolyOp t2(int a, int b, const Q& c) { return EPolyOp::tuple({UMono::gen(a), UMono::gen(b)}, Poly(c)); }

EPolyOp t2m(const UMono& a, const UMono& b, const Q& c) { return EPolyOp::tuple({a, b}, Poly(c)); }

UMono mono(std::initializer_list<int> gens) {
  UMono m;
  for (int g : gens) ++m.e[g];
  return m;
}

// Pi' = Delta(Psi^-1) Pi (Psi (x) Psi) to order m, for Psi = 1 + hbar psi1.
Deformation conjugate(const Enveloping& U, const Deformation& pi, const PbwElement& psi1, int m) {
  PbwSeries psi{PbwElement::one(), psi1};
  PbwSeries inv{PbwElement::one()};
  PbwElement power = PbwElement::one();
  for (int s = 1; s <= m; ++s) {
    power = U.mul(power, Q(-1) * psi1);
    inv.push_back(power);
  }
  Deformation out;
  out.coeffs.resize(m + 1);
  for (int s = 0; s <= m; ++s)
    for (int a = 0; a <= s; ++a)
      for (int b = 0; a + b <= s; ++b)
        for (int c = 0; a + b + c <= s; ++c) {
          const int d = s - a - b - c;
          if (b > pi.order() || c > 1 || d > 1) continue;
          EPolyOp right = slot_product(U, pi.coeffs[b], EPolyOp::tensor({psi[c], psi[d]}));
          out.coeffs[s] += slot_product(U, coproduct(U, inv[a]), right);
        }
  return out;
}

bool all_zero(const OperatorSeries& s) {
  for (auto& p : s)
    if (!p.is_zero()) return false;
  return true;
}

bool all_zero(const PolyvectorSeries& s) {
  for (auto& p : s)
    if (!p.is_zero()) return false;
  return true;
}

}  // namespace

TEST(Poisson, Examples) {
  auto tangent = fixtures::tangent2();
  EXPECT_TRUE(poisson_validate(tangent.chart, EPolyvector::wedge_of({0, 1})).ok);
  EXPECT_TRUE(poisson_validate(tangent.chart, EPolyvector::wedge_of({0, 1}, Poly::var(0))).ok);
  auto sl2 = fixtures::sl2();
  EXPECT_TRUE(poisson_validate(sl2.chart, EPolyvector::wedge_of({0, 1})).ok);
  // [e1 ^ e3, e1 ^ e3] expands to two terms [e1, e3] ^ e3 ^ e1 and [e3, e1] ^ e1 ^ e3
  // with [e1, e3] = 2 e2; both are multiples of e1 ^ e2 ^ e3 and add up to magnitude 4.
  auto rep = poisson_validate(sl2.chart, EPolyvector::wedge_of({0, 2}));
  EXPECT_FALSE(rep.ok);
  ASSERT_EQ(rep.jacobi.terms.size(), 1u);
  EXPECT_EQ(rep.jacobi.terms.begin()->first, Mask{0b111});
  const Poly& c = rep.jacobi.terms.begin()->second;
  EXPECT_TRUE(c == Poly(4) || c == Poly(-4)) << c.str(1);
}

TEST(Moyal, LowOrders) {
  auto ch = fixtures::tangent2().chart;
  Enveloping U(ch);
  EPolyvector pi = EPolyvector::wedge_of({0, 1});
  auto d0 = moyal_deform(ch, pi, 0);
  ASSERT_EQ(d0.coeffs.size(), 1u);
  EXPECT_EQ(d0.coeffs[0], EPolyOp::unit(2));
  EXPECT_TRUE(all_zero(associativity_residual(U, d0)));

  auto d2 = moyal_deform(ch, pi, 2);
  EXPECT_EQ(d2.coeffs[1], t2(0, 1, Q(1, 2)) - t2(1, 0, Q(1, 2)));
  auto lim = classical_limit(d2, pi);
  EXPECT_TRUE(lim.unit && lim.antisymmetric);
  EXPECT_EQ(d2.coeffs[1] - transpose(d2.coeffs[1]), t2(0, 1, 1) - t2(1, 0, 1));
  EPolyOp expected = t2m(mono({0, 0}), mono({1, 1}), Q(1, 8)) - t2m(mono({0, 1}), mono({0, 1}), Q(1, 4)) +
                     t2m(mono({1, 1}), mono({0, 0}), Q(1, 8));
  EXPECT_EQ(d2.coeffs[2], expected);
  EXPECT_TRUE(all_zero(associativity_residual(U, d2)));
  EXPECT_FALSE(classical_limit(d2, Q(2) * pi).antisymmetric);
}

TEST(Moyal, AssociativeToHigherOrder) {
  AlgebroidChart ch = abelian_point(3);
  Enveloping U(ch);
  EPolyvector pi = EPolyvector::wedge_of({0, 1}) + Q(2) * EPolyvector::wedge_of({1, 2}) -
                   Q(1, 3) * EPolyvector::wedge_of({0, 2});
  auto d = moyal_deform(ch, pi, 3);
  EXPECT_TRUE(all_zero(associativity_residual(U, d)));
  EXPECT_TRUE(classical_limit(d, pi).antisymmetric);
  auto broken = d;
  broken.coeffs[2] += t2m(mono({0, 0}), UMono::gen(1), 1);
  auto res = associativity_residual(U, broken);
  EXPECT_TRUE(res[0].is_zero() && res[1].is_zero());
  EXPECT_FALSE(res[2].is_zero());
}

TEST(Moyal, Rejections) {
  EPolyvector pi = EPolyvector::wedge_of({0, 1});
  EXPECT_THROW(moyal_deform(fixtures::sl2().chart, pi, 1), Rejected);
  EXPECT_THROW(moyal_deform(fixtures::tangent2().chart, EPolyvector::wedge_of({0, 1}, Poly::var(0)), 1), Rejected);
  EXPECT_THROW(moyal_deform(fixtures::tangent2().chart, EPolyvector::gen(0), 1), Rejected);
}

TEST(Equivalence, ReflexiveAndConjugated) {
  auto ch = fixtures::tangent2().chart;
  Enveloping U(ch);
  const int m = 2;
  auto pi = moyal_deform(ch, EPolyvector::wedge_of({0, 1}), m);
  EXPECT_TRUE(equivalence_check(U, pi, pi, {PbwElement::one()}, m).equivalent());

  PbwElement psi1 = PbwElement::gen(0);
  auto pi2 = conjugate(U, pi, psi1, m);
  EXPECT_TRUE(all_zero(associativity_residual(U, pi2)));
  EXPECT_FALSE(pi2.coeffs[1] == pi.coeffs[1] && pi2.coeffs[2] == pi.coeffs[2]);
  auto rep = equivalence_check(U, pi, pi2, {PbwElement::one(), psi1}, m);
  EXPECT_TRUE(rep.equivalent());

  auto bad = pi2;
  bad.coeffs[2] += t2(1, 1, 1);
  auto rep2 = equivalence_check(U, pi, bad, {PbwElement::one(), psi1}, m);
  EXPECT_EQ(rep2.leading_order, 2);
  EXPECT_THROW(equivalence_check(U, pi, pi, {PbwElement::gen(0)}, m), Rejected);
}

TEST(Equivalence, Transitive) {
  AlgebroidChart ch = abelian_point(2);
  Enveloping U(ch);
  const int m = 2;
  auto pi = moyal_deform(ch, EPolyvector::wedge_of({0, 1}), m);
  PbwElement a = PbwElement::gen(0) + Q(3) * PbwElement::mono(mono({1, 1}));
  PbwElement b = Q(-1, 2) * PbwElement::gen(1);
  auto pi2 = conjugate(U, pi, a, m);
  auto pi3 = conjugate(U, pi2, b, m);
  PbwSeries psi = series_mul(U, {PbwElement::one(), a}, {PbwElement::one(), b}, m);
  EXPECT_TRUE(equivalence_check(U, pi, pi3, psi, m).equivalent());
  PbwSeries wrong = series_mul(U, {PbwElement::one(), b}, {PbwElement::one(), a}, m);
  wrong[1] += PbwElement::gen(1);
  EXPECT_FALSE(equivalence_check(U, pi, pi3, wrong, m).equivalent());
}

TEST(Gauge, DirectionIsTangentToTheCone) {
  auto ch = fixtures::sl2().chart;
  PolyvectorSeries pi_h{EPolyvector{}, EPolyvector::wedge_of({0, 1})};
  ASSERT_TRUE(all_zero(jacobi_series(ch, pi_h, 3)));
  PolyvectorSeries u{EPolyvector{}, EPolyvector::gen(2) + times(Poly::var(0), EPolyvector::gen(1)),
                     times(Poly::var(0) * Poly::var(0), EPolyvector::gen(0))};
  auto g = gauge_direction(ch, u, pi_h, 4);
  EXPECT_FALSE(all_zero(g));
  for (int s = 0; s <= 4; ++s) {
    EPolyvector lin;
    for (int a = 0; a <= s; ++a)
      if (a < static_cast<int>(pi_h.size())) lin += schouten(ch, pi_h[a], g[s - a]);
    EXPECT_TRUE(lin.is_zero()) << "order " << s;
  }
  EXPECT_THROW(gauge_direction(ch, {EPolyvector::gen(0)}, pi_h, 2), Rejected);
}

TEST(DeformationComplexes, ZeroBivector) {
  auto ch = fixtures::tangent2().chart;
  auto dc = deformation_complexes(ch, {}, 2, 1);
  for (auto& row : dc.polyvector_homology) EXPECT_EQ(row.homology, row.dim);
  for (auto& row : dc.form_homology) EXPECT_EQ(row.homology, row.dim);
  // 3 monomials x 2 hbar orders x C(2, k+1) generators.
  EXPECT_EQ(dc.polyvectors.dim(-1), 6);
  EXPECT_EQ(dc.polyvectors.dim(0), 12);
  EXPECT_EQ(dc.polyvectors.dim(1), 6);
  EXPECT_EQ(dc.forms.dim(-2), 6);
}

TEST(DeformationComplexes, ConstantSymplecticBivector) {
  auto ch = fixtures::tangent2().chart;
  EPolyvector pi = EPolyvector::wedge_of({0, 1});
  auto dc = deformation_complexes(ch, {EPolyvector{}, pi}, 2, 2);
  // Independent assembly of [pi, .] on capped polyvectors of each degree.
  std::map<int, int> rk;
  std::vector<XMono> monos;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) {
      XMono m;
      m.e[0] = a;
      m.e[1] = b;
      monos.push_back(m);
    }
  for (int k = -1; k <= 0; ++k) {
    std::vector<Mask> src, dst;
    for (Mask m = 0; m < 4; ++m) {
      if (popcount(m) == k + 1) src.push_back(m);
      if (popcount(m) == k + 2) dst.push_back(m);
    }
    Matrix mat(dst.size() * monos.size(), Vec(src.size() * monos.size()));
    for (std::size_t i = 0; i < src.size(); ++i)
      for (std::size_t j = 0; j < monos.size(); ++j) {
        EPolyvector v;
        v.add(src[i], Poly::monomial(monos[j], Q(1)));
        for (auto& [mask, f] : schouten(ch, pi, v).terms) {
          auto di = std::find(dst.begin(), dst.end(), mask) - dst.begin();
          for (auto& [xm, q] : f.terms()) {
            auto xi = std::find(monos.begin(), monos.end(), xm) - monos.begin();
            mat[di * monos.size() + xi][i * monos.size() + j] += q;
          }
        }
      }
    rk[k] = rank(mat);
  }
  for (auto& row : dc.polyvector_homology) {
    EXPECT_TRUE(row.complete);
    EXPECT_EQ(row.rank_in + row.rank_out + row.homology, row.dim);
    EXPECT_EQ(row.homology, row.dim - rk[row.degree] - rk[row.degree - 1]) << "degree " << row.degree;
  }
  for (auto& row : dc.form_homology) EXPECT_EQ(row.rank_in + row.rank_out + row.homology, row.dim);
  EXPECT_GT(rk[-1], 0);
}

TEST(DeformationComplexes, Sl2) {
  auto ch = fixtures::sl2().chart;
  auto dc = deformation_complexes(ch, {EPolyvector{}, EPolyvector::wedge_of({0, 1})}, 2, 2);
  bool some_differential = false;
  for (auto& row : dc.polyvector_homology) {
    EXPECT_EQ(row.rank_in + row.rank_out + row.homology, row.dim);
    some_differential |= row.rank_out > 0;
  }
  EXPECT_TRUE(some_differential);
  EXPECT_THROW(deformation_complexes(ch, {EPolyvector{}, EPolyvector::wedge_of({0, 2})}, 2, 2), Rejected);
}

TEST(Traces, ZeroBivectorAndRankOne) {
  auto ch = fixtures::tangent2().chart;
  Enveloping U(ch);
  auto ts = trace_space(U, {}, 2, 2, 2);
  EXPECT_EQ(ts.basis.size(), 12u);
  auto ab = fixtures::abelian1().chart;
  Enveloping U1(ab);
  auto ts1 = trace_space(U1, {EPolyvector{}, EPolyvector{}}, 1, 3, 2);
  EXPECT_EQ(ts1.basis.size(), 4u);
}

TEST(Traces, SymplecticPlaneKillsBrackets) {
  auto ch = fixtures::tangent2().chart;
  Enveloping U(ch);
  EPolyvector pi = EPolyvector::wedge_of({0, 1});
  auto ts = trace_space(U, {EPolyvector{}, pi}, 2, 2, 2);
  // Every polynomial is a Poisson bracket {x1, h}, so tau_0 vanishes; tau_1 is free.
  EXPECT_EQ(ts.basis.size(), 6u);
  int checked = 0;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int d = 0; c + d <= 3; ++d) {
          XMono f, g;
          f.e[0] = a, f.e[1] = b, g.e[0] = c, g.e[1] = d;
          Poly pf = Poly::monomial(f, 1), pg = Poly::monomial(g, 1);
          Poly br = pf.derivative(0) * pg.derivative(1) - pf.derivative(1) * pg.derivative(0);
          if (!ts.in_space(br)) continue;
          for (auto& tr : ts.basis) {
            auto v = ts.apply(tr, {Poly(), br});
            EXPECT_EQ(v[1], 0);
          }
          ++checked;
        }
  EXPECT_GT(checked, 10);
}

TEST(Traces, NonUnimodularPoint) {
  auto ch = fixtures::aff1().chart;
  Enveloping U(ch);
  auto ts = trace_space(U, {EPolyvector{}, EPolyvector::wedge_of({0, 1})}, 2, 0, 2);
  EXPECT_EQ(ts.basis.size(), 1u);
}

TEST(Traces, AnnihilateTheMoyalCommutator) {
  Rng rng(701);
  auto ch = fixtures::tangent2().chart;
  Enveloping U(ch);
  EPolyvector pi = EPolyvector::wedge_of({0, 1});
  auto ts = trace_space(U, {EPolyvector{}, pi}, 2, 2, 2);
  auto moyal = moyal_deform(ch, pi, 2);
  int verified = 0;
  for (int trial = 0; trial < 30; ++trial) {
    EJet a = rand_jet(rng, ch.n(), ch.r(), 0, 4, 2);
    EJet j = varrho(U, EChain::of_jet(a), 4);
    std::vector<Poly> f;
    bool inside = true;
    for (auto& p : moyal.coeffs) {
      f.push_back(j.eval(p - transpose(p)));
      inside = inside && ts.in_space(f.back());
    }
    if (!inside) continue;
    for (auto& tr : ts.basis)
      for (auto& v : ts.apply(tr, f)) EXPECT_EQ(v, 0);
    ++verified;
  }
  EXPECT_GT(verified, 3);
}
