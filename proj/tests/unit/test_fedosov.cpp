#include <gtest/gtest.h>

#include "lafed/errors.hpp"
#include "lafed/fedosov.hpp"
#include "lafed/fiber_ops.hpp"
#include "lafed/fixtures.hpp"
#include "lafed/homotopy.hpp"
#include "support/fiber_random.hpp"

using namespace lafed;
using lafed::testing::FiberShape;
using lafed::testing::rand_fiber;
using lafed::testing::Rng;
using lafed::testing::uniform;

namespace {

constexpr Bundle kAll[] = {Bundle::S, Bundle::A, Bundle::T, Bundle::D, Bundle::J};

Section rand_section(Rng& rng, const AlgebroidChart& ch, Bundle b, int cap, int xi = -1) {
  FiberShape sh;
  sh.r = ch.r();
  sh.n = ch.n();
  sh.ydeg = b == Bundle::J ? std::min(cap, 2) : cap;
  sh.xi = xi;
  sh.op_order = 1;
  sh.cap = cap;
  return rand_fiber(rng, b, sh);
}

Section fvar(int i) { return Section::y_mono(YMono::gen(i)); }

Section xi_term(Bundle b, Mask xi, const YMono& y, const Poly& c, Mask odd = 0) {
  Section s(b, kExact);
  FKey k;
  k.xi = xi;
  k.y = y;
  k.odd = odd;
  s.add(k, c);
  return s;
}

}  // namespace

TEST(Nabla, RejectsTorsion) {
  auto f = fixtures::tangent2();
  Connection g(2);
  g.at(0, 1, 0) = Poly::var(0) * Poly::var(0);
  EXPECT_THROW(nabla_apply(f.chart, g, fvar(0)), Rejected);
  EXPECT_THROW(build_fedosov(f.chart, g, 3), Rejected);
  EXPECT_THROW(build_fedosov(f.chart, connection_of(f), 1), Rejected);
}

TEST(Nabla, Examples) {
  auto ab = fixtures::tangent2();
  Connection zero(2);
  Poly f = Poly::var(0) * Poly::var(1) + Poly::var(1);
  Section expected = xi_term(Bundle::S, 0b1, {}, ab.chart.rho(0, f)) + xi_term(Bundle::S, 0b10, {}, ab.chart.rho(1, f));
  EXPECT_EQ(nabla_apply(ab.chart, zero, Section::function(f)), expected);
  EXPECT_TRUE(nabla_apply(ab.chart, zero, Section::function(1)).is_zero());

  auto aff = fixtures::aff1();
  auto g = torsion_free(aff.chart);
  Section n = nabla_apply(aff.chart, g, fvar(0));
  Section want = xi_term(Bundle::S, 0b1, YMono::gen(1), Q(-1, 2)) + xi_term(Bundle::S, 0b10, YMono::gen(0), Q(1, 2));
  EXPECT_EQ(n, want);
}

TEST(Nabla, AnticommutesWithDelta) {
  Rng rng(401);
  for (auto& f : fixtures::valid()) {
    auto g = connection_of(f);
    for (Bundle b : kAll)
      for (int trial = 0; trial < 6; ++trial) {
        Section s = rand_section(rng, f.chart, b, 4);
        Section x = nabla_apply(f.chart, g, delta_diff(s)) + delta_diff(nabla_apply(f.chart, g, s));
        EXPECT_TRUE(x.is_zero()) << f.chart.name << " " << bundle_name(b) << " " << x.str(f.chart.n());
      }
  }
}

TEST(Curvature, FieldExamples) {
  auto ab = fixtures::tangent2();
  EXPECT_TRUE(curvature_field(ab.chart, Connection(2)).is_zero());
  auto one = fixtures::abelian1();
  Connection g1(1);
  g1.at(0, 0, 0) = Poly::var(0);
  EXPECT_TRUE(curvature_field(one.chart, g1).is_zero());

  auto cu = fixtures::curved2();
  auto g = connection_of(cu);
  Section R = curvature_field(cu.chart, g);
  EXPECT_FALSE(R.is_zero());
  Section lhs = nabla_apply(cu.chart, g, nabla_apply(cu.chart, g, fvar(0)));
  EXPECT_EQ(lhs, vf_act(R, fvar(0)));
}

TEST(Curvature, IsTheSquareOfNabla) {
  Rng rng(402);
  for (auto& f : fixtures::valid()) {
    auto g = connection_of(f);
    Section gamma = connection_field(g);
    Section R = curvature_field(f.chart, g);
    Section half = fw_schouten(gamma, gamma);
    half *= Q(1, 2);
    EXPECT_EQ(R, e_d(f.chart, gamma) + half) << f.chart.name;
    for (Bundle b : kAll)
      for (int trial = 0; trial < 5; ++trial) {
        Section s = rand_section(rng, f.chart, b, 4);
        Section lhs = nabla_apply(f.chart, g, nabla_apply(f.chart, g, s));
        EXPECT_TRUE(agree_to(lhs, vf_act(R, s), std::min(lhs.cap, 3))) << f.chart.name << " " << bundle_name(b);
      }
  }
}

TEST(Fedosov, AbelianFlatChart) {
  auto f = fixtures::tangent2();
  auto fd = build_fedosov(f.chart, Connection(2), 4);
  EXPECT_TRUE(fd.a.is_zero());
  Section s = Section::y_mono(YMono::gen(0), Poly::var(1));
  EXPECT_EQ(fedosov_D(fd, s), e_d(f.chart, s) - delta_diff(s));
  EXPECT_TRUE(fedosov_D(fd, Section::function(1)).is_zero());
}

TEST(Fedosov, Aff1ResidualVanishes) {
  auto f = fixtures::aff1();
  auto fd = build_fedosov(f.chart, torsion_free(f.chart), 4);
  EXPECT_GE(fd.certified_order, 3);
  for (auto& [k, c] : fd.a.terms) {
    EXPECT_GE(k.y.order(), 2);
    EXPECT_EQ(popcount(k.xi), 1);
  }
  // D^2 on coordinates, applied directly.
  for (int i = 0; i < 2; ++i) {
    Section s = fvar(i);
    s.cap = 4;
    Section dd = fedosov_D(fd, fedosov_D(fd, s));
    EXPECT_TRUE(dd.is_zero()) << dd.str(0);
    EXPECT_GE(dd.cap, 2);
  }
}

TEST(Fedosov, Sl2CertifiedOrder) {
  auto f = fixtures::sl2();
  auto fd = build_fedosov(f.chart, torsion_free(f.chart), 6);
  EXPECT_GE(fd.certified_order, 5);
  EXPECT_LE(fd.rounds, 5);
}

TEST(Fedosov, DSquaresToZeroWithinMargin) {
  Rng rng(403);
  for (auto& f : fixtures::valid()) {
    const int N = 5;
    auto fd = build_fedosov(f.chart, connection_of(f), N);
    EXPECT_GE(fd.certified_order, N - 1) << f.chart.name;
    for (Bundle b : kAll)
      for (int trial = 0; trial < 4; ++trial) {
        Section s = rand_section(rng, f.chart, b, N, uniform(rng, 0, 1));
        Section dd = fedosov_D(fd, fedosov_D(fd, s));
        EXPECT_TRUE(dd.is_zero()) << f.chart.name << " " << bundle_name(b) << " " << dd.str(f.chart.n());
        EXPECT_GE(dd.cap, b == Bundle::D ? N - 4 : N - 3) << f.chart.name << " " << bundle_name(b);
      }
  }
}

TEST(Fedosov, ResidualTransportForAnyA) {
  Rng rng(404);
  for (auto& f : fixtures::valid()) {
    const int N = 4;
    auto fd = build_fedosov(f.chart, connection_of(f), N);
    for (int trial = 0; trial < 3; ++trial) {
      FiberShape sh;
      sh.r = f.chart.r();
      sh.n = f.chart.n();
      sh.xi = 1;
      sh.payload = 0;
      sh.ydeg = N;
      sh.cap = N;
      Section a = rand_fiber(rng, Bundle::T, sh);
      Section c = fedosov_residual(fd, a);
      Section t = fedosov_nabla(fd, c) - delta_diff(c) + fw_schouten(a, c);
      EXPECT_TRUE(t.is_zero()) << f.chart.name;
    }
    Section c = fedosov_residual(fd, fd.a);
    EXPECT_TRUE((fedosov_nabla(fd, c) - delta_diff(c) + fw_schouten(fd.a, c)).is_zero());
  }
}

TEST(Lambda, Examples) {
  auto f = fixtures::sl2();
  auto fd = build_fedosov(f.chart, torsion_free(f.chart), 4);
  EXPECT_EQ(lift_lambda(fd, Section::function(1)), Section::function(1).truncated(4));

  Poly g = Poly::var(0) * Poly::var(0) + 3;
  Section lam = lift_lambda(fd, Section::function(g));
  Section first = Section::function(g);
  for (int i = 0; i < 3; ++i) first += Section::y_mono(YMono::gen(i), f.chart.rho(i, g));
  EXPECT_TRUE(agree_to(lam, first, 1));

  auto cu = fixtures::curved2();
  auto gc = connection_of(cu);
  auto fc = build_fedosov(cu.chart, gc, 4);
  EForm alpha;
  alpha.add(0b1, Poly::var(1));
  alpha.add(0b10, Poly::var(0) * Poly::var(1));
  Section la = lift_lambda(fc, fiber_form(alpha));
  Section want = fiber_form(alpha);
  auto coeff = [&](int j) {
    auto it = alpha.terms.find(Mask{1} << j);
    return it == alpha.terms.end() ? Poly() : it->second;
  };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Poly v = cu.chart.rho(i, coeff(j));
      for (int k = 0; k < 2; ++k) v -= gc(i, j, k) * coeff(k);
      want += xi_term(Bundle::A, 0, YMono::gen(i), v, Mask{1} << j);
    }
  EXPECT_TRUE(agree_to(la, want, 1));

  EXPECT_THROW(lift_lambda(fd, fvar(0)), Rejected);
}

TEST(Lambda, FlatAndSplitsTheProjection) {
  Rng rng(405);
  for (auto& f : fixtures::valid()) {
    const int N = 5;
    auto fd = build_fedosov(f.chart, connection_of(f), N);
    for (Bundle b : {Bundle::S, Bundle::A, Bundle::T, Bundle::D}) {
      FiberShape sh;
      sh.r = f.chart.r();
      sh.n = f.chart.n();
      sh.xi = 0;
      sh.ydeg = 0;
      sh.op_order = 1;
      Section u = rand_fiber(rng, b, sh);
      Section lam = lift_lambda(fd, u);
      EXPECT_EQ(h_projection(lam), u) << f.chart.name << " " << bundle_name(b);
      Section d = fedosov_D(fd, lam);
      EXPECT_TRUE(d.is_zero()) << f.chart.name << " " << bundle_name(b) << " " << d.str(f.chart.n());
      EXPECT_GE(d.cap, N - 2) << f.chart.name << " " << bundle_name(b);
    }
  }
}

TEST(Lambda, MultiplicativeAndBracketPreserving) {
  Rng rng(406);
  for (auto& f : fixtures::valid()) {
    const int N = 4;
    auto fd = build_fedosov(f.chart, connection_of(f), N);
    Poly p = lafed::testing::rand_poly(rng, f.chart.n(), 2, 2), q = lafed::testing::rand_poly(rng, f.chart.n(), 2, 2);
    Section lp = lift_lambda(fd, Section::function(p)), lq = lift_lambda(fd, Section::function(q));
    Section prod = fw_mul(lp, lq);
    EXPECT_TRUE(agree_to(lift_lambda(fd, Section::function(p * q)), prod, prod.cap)) << f.chart.name;

    for (int trial = 0; trial < 3; ++trial) {
      auto u = lafed::testing::rand_pv(rng, f.chart, uniform(rng, -1, 1));
      auto v = lafed::testing::rand_pv(rng, f.chart, uniform(rng, 0, 1));
      Section lu = lift_lambda(fd, fiber_polyvector(u)), lv = lift_lambda(fd, fiber_polyvector(v));
      Section br = fw_schouten(lu, lv);
      Section lb = lift_lambda(fd, fiber_polyvector(schouten(f.chart, u, v)));
      EXPECT_TRUE(agree_to(lb, br, br.cap)) << f.chart.name << " u=" << u.str(f.chart.n()) << " v=" << v.str(f.chart.n());
      EXPECT_GE(br.cap, N - 2);
    }
  }
}

TEST(Lambda, IntertwinesLieDerivatives) {
  Rng rng(407);
  for (auto& f : fixtures::valid()) {
    auto fd = build_fedosov(f.chart, connection_of(f), 4);
    for (int trial = 0; trial < 3; ++trial) {
      auto u = lafed::testing::rand_pv(rng, f.chart, 0);
      auto w = lafed::testing::rand_form(rng, f.chart, uniform(rng, 0, 2));
      Section lie = fw_lie(lift_lambda(fd, fiber_polyvector(u)), lift_lambda(fd, fiber_form(w)));
      EXPECT_EQ(base_form(lie), lie_derivative(f.chart, u, w)) << f.chart.name;
    }
  }
}
