#include "lafed/cli/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "lafed/cohomology.hpp"
#include "lafed/comparison.hpp"
#include "lafed/errors.hpp"
#include "lafed/fedosov.hpp"
#include "lafed/fiber_ops.hpp"
#include "lafed/hkr.hpp"
#include "lafed/homotopy.hpp"
#include "lafed/quantize.hpp"
#include "lafed/sampling.hpp"

namespace lafed::cli {

using namespace lafed::sampling;

namespace {

struct Outcome {
  Status status = Status::Pass;
  int required = -1;
  int achieved = -1;
  int samples = 0;
  std::string detail;
};

Outcome skipped(std::string why) { return {Status::Skipped, -1, -1, 0, std::move(why)}; }

// Counts samples and keeps the first failure.
class Tally {
 public:
  void pass() { ++samples_; }
  void check(bool ok, const std::function<std::string()>& what) {
    ++samples_;
    if (ok) return;
    if (failures_++ == 0) first_ = what();
  }
  void order(int achieved) { achieved_ = achieved_ < 0 ? achieved : std::min(achieved_, achieved); }
  int samples() const { return samples_; }

  Outcome done(int required = -1) const {
    Outcome o;
    o.samples = samples_;
    o.required = required;
    o.achieved = required >= 0 ? std::max(achieved_, -1) : -1;
    if (failures_ > 0) {
      o.status = Status::Fail;
      o.detail = std::to_string(failures_) + " of " + std::to_string(samples_) + " failed; first: " + first_;
    } else if (required >= 0 && achieved_ < required) {
      o.status = Status::Fail;
      o.detail = "order below requirement";
    }
    return o;
  }

 private:
  int samples_ = 0;
  int failures_ = 0;
  int achieved_ = -1;
  std::string first_;
};

constexpr Bundle kFiberBundles[] = {Bundle::S, Bundle::A, Bundle::T, Bundle::D};
constexpr Bundle kAllBundles[] = {Bundle::S, Bundle::A, Bundle::T, Bundle::D, Bundle::J};

struct Ctx {
  const ChartFile& file;
  const AlgebroidChart& ch;
  const SuiteConfig& cfg;
  Connection g;
  Enveloping U;
  std::optional<FedosovData> fd;
  std::optional<MuMap> mu;

  Ctx(const ChartFile& f, const SuiteConfig& c) : file(f), ch(f.chart), cfg(c), g(connection_for(f)), U(f.chart) {}

  int n() const { return ch.n(); }
  int r() const { return ch.r(); }
  const Samples& s() const { return cfg.samples; }
  const Caps& caps() const { return cfg.caps; }

  const FedosovData& fedosov() {
    if (!fd) fd = build_fedosov(ch, g, caps().order);
    return *fd;
  }
  const MuMap& mu_map() {
    if (!mu) mu.emplace(fedosov());
    return *mu;
  }
};

using CheckFn = Outcome (*)(Ctx&, Rng&);

struct Entry {
  CheckSpec spec;
  CheckFn fn;
};

std::string degs(std::initializer_list<int> ds) {
  std::string out;
  for (int d : ds) out += (out.empty() ? "" : ",") + std::to_string(d);
  return "degrees " + out;
}

int sgn(int e) { return sign_of(e); }

EJet restrict_to(const EJet& a, int cap) { return restrict_cap(a, cap); }

bool jets_agree(const EJet& a, const EJet& b) {
  const int cap = std::min(a.cap, b.cap);
  return restrict_to(a, cap) == restrict_to(b, cap);
}

Section fiber_sample(Rng& rng, const Ctx& c, Bundle b, int ydeg, int xi, int op_order = 1, int cap = kExact) {
  FiberShape sh;
  sh.r = c.r();
  sh.n = c.n();
  sh.ydeg = b == Bundle::J ? std::min(ydeg, 2) : ydeg;
  sh.xi = xi;
  sh.op_order = op_order;
  sh.cap = cap;
  return rand_fiber(rng, b, sh);
}

std::vector<Poly> unit_section(int r, int i) {
  std::vector<Poly> u(r);
  u[i] = Poly(1);
  return u;
}

// ---------------------------------------------------------------- axioms

Outcome anchor_morphism(Ctx& c, Rng&) {
  auto v = validate_chart(c.ch);
  Outcome o;
  o.samples = 1;
  if (!v.ok && v.failed_check == "anchor-morphism") {
    o.status = Status::Fail;
    o.detail = "anchor-morphism violated: " + v.detail;
  }
  return o;
}

Outcome jacobi(Ctx& c, Rng&) {
  auto v = validate_chart(c.ch);
  if (!v.ok && v.failed_check == "anchor-morphism") return skipped("anchor-morphism fails first");
  Outcome o;
  o.samples = 1;
  if (!v.ok) {
    o.status = Status::Fail;
    o.detail = "jacobi violated: " + v.detail;
  }
  return o;
}

Outcome torsion_free_check(Ctx& c, Rng&) {
  Tally t;
  t.check(torsion(c.ch, torsion_free(c.ch)).zero(), [] { return std::string("c/2 connection has torsion"); });
  if (c.file.connection)
    t.check(torsion(c.ch, *c.file.connection).zero(), [] { return std::string("the file's connection has torsion"); });
  return t.done();
}

Outcome bianchi_check(Ctx& c, Rng&) {
  auto b = bianchi(c.ch, c.g);
  Tally t;
  t.check(b.ok, [&] {
    std::string w;
    for (int i : b.where) w += " " + std::to_string(i + 1);
    return b.which + " fails at" + w;
  });
  return t.done();
}

Outcome lie_contraction(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().forms; ++trial) {
    int k = uniform(rng, -1, 1), l = uniform(rng, -1, 1);
    auto u = rand_pv(rng, c.ch, k), v = rand_pv(rng, c.ch, l);
    auto w = rand_form(rng, c.ch, uniform(rng, 0, c.r()));
    auto lhs = lie_derivative(c.ch, u, contract(v, w)) - Q(sgn(k * (l + 1))) * contract(v, lie_derivative(c.ch, u, w));
    auto rhs = Q(sgn(k)) * contract(schouten(c.ch, u, v), w);
    t.check(lhs == rhs, [&] { return degs({k, l}); });
  }
  return t.done();
}

Outcome lie_bracket(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().forms; ++trial) {
    int k = uniform(rng, -1, 1), l = uniform(rng, -1, 1);
    auto u = rand_pv(rng, c.ch, k), v = rand_pv(rng, c.ch, l);
    auto w = rand_form(rng, c.ch, uniform(rng, 0, c.r()));
    auto lhs = lie_derivative(c.ch, u, lie_derivative(c.ch, v, w)) -
               Q(sgn(k * l)) * lie_derivative(c.ch, v, lie_derivative(c.ch, u, w));
    t.check(lhs == lie_derivative(c.ch, schouten(c.ch, u, v), w), [&] { return degs({k, l}); });
  }
  return t.done();
}

// ---------------------------------------------------------------- calculus

Outcome schouten_antisymmetry(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    int k = uniform(rng, -1, 2), l = uniform(rng, -1, 2);
    auto u = rand_pv(rng, c.ch, k), v = rand_pv(rng, c.ch, l);
    t.check(schouten(c.ch, u, v) == Q(-sgn(k * l)) * schouten(c.ch, v, u), [&] { return degs({k, l}); });
  }
  return t.done();
}

Outcome schouten_jacobi(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    int k = uniform(rng, -1, 2), l = uniform(rng, -1, 2), m = uniform(rng, -1, 2);
    auto u = rand_pv(rng, c.ch, k), v = rand_pv(rng, c.ch, l), w = rand_pv(rng, c.ch, m);
    auto lhs = schouten(c.ch, u, schouten(c.ch, v, w));
    auto rhs = schouten(c.ch, schouten(c.ch, u, v), w) + Q(sgn(k * l)) * schouten(c.ch, v, schouten(c.ch, u, w));
    t.check(lhs == rhs, [&] { return degs({k, l, m}); });
  }
  return t.done();
}

Outcome schouten_leibniz(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    int k = uniform(rng, -1, 1), l = uniform(rng, -1, 1), m = uniform(rng, -1, 1);
    auto u = rand_pv(rng, c.ch, k), v = rand_pv(rng, c.ch, l), w = rand_pv(rng, c.ch, m);
    auto lhs = schouten(c.ch, u, wedge(v, w));
    auto rhs = wedge(schouten(c.ch, u, v), w) + Q(sgn(k * (l + 1))) * wedge(v, schouten(c.ch, u, w));
    t.check(lhs == rhs, [&] { return degs({k, l, m}); });
  }
  return t.done();
}

Outcome de_rham_square(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    int q = uniform(rng, 0, c.r());
    auto w = rand_form(rng, c.ch, q);
    t.check(e_de_rham(c.ch, e_de_rham(c.ch, w)).is_zero(), [&] { return degs({q}); });
  }
  return t.done();
}

std::vector<Letter> rand_word(Rng& rng, const Ctx& c, int len) {
  std::vector<Letter> w;
  for (int i = 0; i < len; ++i) {
    if (uniform(rng, 0, 3) == 0) w.push_back(Letter::fn(rand_poly(rng, c.n(), 2, 2)));
    else w.push_back(Letter::g(uniform(rng, 0, c.r() - 1)));
  }
  return w;
}

PbwElement rand_pbw(Rng& rng, const Ctx& c, int ord) {
  PbwElement p;
  for (int t = 0; t < 2; ++t) p.add(rand_umono(rng, c.r(), uniform(rng, 0, ord)), rand_poly(rng, c.n(), 1, 2));
  return p;
}

Outcome pbw_confluence(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().words; ++trial) {
    const int len = uniform(rng, 1, 5);
    auto w = rand_word(rng, c, len);
    auto a = pbw_normalize(c.ch, w, RewriteOrder::Leftmost);
    auto b = pbw_normalize(c.ch, w, RewriteOrder::Rightmost);
    PbwElement prod = PbwElement::one();
    for (auto& l : w) prod = c.U.mul(prod, l.gen < 0 ? PbwElement::function(l.f) : PbwElement::gen(l.gen));
    t.check(a == b && a == prod, [&] { return "word of length " + std::to_string(len); });
  }
  return t.done();
}

Outcome pbw_filtration(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    auto a = rand_pbw(rng, c, 2), b = rand_pbw(rng, c, 2), d = rand_pbw(rng, c, 2);
    auto ab = c.U.mul(a, b);
    t.check(c.U.mul(ab, d) == c.U.mul(a, c.U.mul(b, d)) && ab.order() <= a.order() + b.order(),
            [] { return std::string("associativity or filtration"); });
  }
  return t.done();
}

Outcome coproduct_check(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    auto a = rand_pbw(rng, c, 3), b = rand_pbw(rng, c, 2);
    auto d = coproduct(c.U, a);
    t.check(delta_at(c.U, d, 0, 1) == delta_at(c.U, d, 1, 1), [] { return std::string("coassociativity"); });
    t.check(coproduct(c.U, c.U.mul(a, b)) == slot_product(c.U, d, coproduct(c.U, b)),
            [] { return std::string("multiplicativity"); });
  }
  return t.done();
}

Outcome anchor_representation(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    auto a = rand_pbw(rng, c, 2), b = rand_pbw(rng, c, 2);
    Poly f = rand_poly(rng, c.n(), 4, 3);
    t.check(c.U.anchor_apply(c.U.mul(a, b), f) == c.U.anchor_apply(a, c.U.anchor_apply(b, f)),
            [] { return std::string("rho(ab) != rho(a) rho(b)"); });
  }
  return t.done();
}

Outcome bullet_composition(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    int p = uniform(rng, 0, 2), q = uniform(rng, -1, 1);
    auto P = rand_op(rng, c.n(), c.r(), p, 2, 3);
    auto Qo = rand_op(rng, c.n(), c.r(), q, 2, 3);
    std::vector<Poly> args;
    for (int i = 0; i < p + q + 1; ++i) args.push_back(rand_poly(rng, c.n(), 3, 3));
    Poly expect;
    for (int i = 0; i <= p; ++i) {
      std::vector<Poly> inner(args.begin() + i, args.begin() + i + q + 1);
      std::vector<Poly> outer(args.begin(), args.begin() + i);
      outer.push_back(evaluate(c.U, Qo, inner));
      outer.insert(outer.end(), args.begin() + i + q + 1, args.end());
      Poly term = evaluate(c.U, P, outer);
      expect += (i * q) % 2 ? -term : term;
    }
    t.check(evaluate(c.U, bullet(c.U, P, Qo), args) == expect, [&] { return degs({p, q}); });
  }
  return t.done();
}

Outcome hochschild_square(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    const int k = uniform(rng, -1, 2);
    auto P = rand_op(rng, c.n(), c.r(), k, 2, 4);
    t.check(cochain_d(c.U, cochain_d(c.U, P)).is_zero(), [&] { return degs({k}); });
  }
  return t.done();
}

Outcome gerstenhaber_jacobi(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    int k = uniform(rng, -1, 1), l = uniform(rng, -1, 1), m = uniform(rng, -1, 1);
    auto A = rand_op(rng, c.n(), c.r(), k, 2, 2), B = rand_op(rng, c.n(), c.r(), l, 2, 2),
         C = rand_op(rng, c.n(), c.r(), m, 2, 2);
    auto lhs = gerstenhaber(c.U, A, gerstenhaber(c.U, B, C));
    auto rhs = gerstenhaber(c.U, gerstenhaber(c.U, A, B), C) + Q(sgn(k * l)) * gerstenhaber(c.U, B, gerstenhaber(c.U, A, C));
    t.check(lhs == rhs, [&] { return degs({k, l, m}); });
  }
  return t.done();
}

Outcome hochschild_derivation(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    int k = uniform(rng, -1, 1), l = uniform(rng, -1, 1);
    auto A = rand_op(rng, c.n(), c.r(), k, 2, 3), B = rand_op(rng, c.n(), c.r(), l, 2, 3);
    auto lhs = cochain_d(c.U, gerstenhaber(c.U, A, B));
    auto rhs = gerstenhaber(c.U, cochain_d(c.U, A), B) + Q(sgn(k)) * gerstenhaber(c.U, A, cochain_d(c.U, B));
    t.check(lhs == rhs, [&] { return "bracket, " + degs({k, l}); });
    auto cl = cochain_d(c.U, cup(A, B));
    auto cr = Q(sgn(l + 1)) * cup(cochain_d(c.U, A), B) + cup(A, cochain_d(c.U, B));
    t.check(cl == cr, [&] { return "cup, " + degs({k, l}); });
  }
  return t.done();
}

// ---------------------------------------------------------------- jets

EJet jet_sample(Rng& rng, const Ctx& c, int degree, int cap) { return rand_jet(rng, c.n(), c.r(), degree, cap); }
EPolyOp op_sample(Rng& rng, const Ctx& c, int k, int cap) { return rand_op(rng, c.n(), c.r(), k, 1, cap, 2); }

Outcome cyclic_order(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    const int d = uniform(rng, 0, 2);
    auto a = jet_sample(rng, c, d, std::min(c.caps().jet_cap, 3));
    t.check(cyclic(a, d + 1) == a, [&] { return degs({d}); });
  }
  return t.done();
}

Outcome jet_b_square(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    const int d = uniform(rng, 2, 3);
    auto a = jet_sample(rng, c, d, std::min(c.caps().jet_cap, 3));
    t.check(jet_b(c.U, jet_b(c.U, a)).is_zero(), [&] { return degs({d}); });
  }
  return t.done();
}

Outcome composition_correction(Ctx& c, Rng& rng) {
  Tally t;
  const int K = c.caps().jet_cap;
  while (t.samples() < c.s().jets) {
    int d1 = uniform(rng, 0, 1), d2 = uniform(rng, 0, 1);
    int deg = d1 + d2 + uniform(rng, 0, 1);
    auto p1 = op_sample(rng, c, d1, 1), p2 = op_sample(rng, c, d2, 1);
    if (p1.is_zero() || p2.is_zero()) continue;
    auto a = jet_sample(rng, c, deg, K);
    auto lhs = jet_action(c.U, p1, jet_action(c.U, p2, a));
    auto comp = bullet(c.U, p1, p2);
    EJet rhs = comp.is_zero() ? EJet{deg - d1 - d2, lhs.cap, {}} : jet_action(c.U, comp, a);
    rhs += getzler_H(c.U, p1, p2, a);
    auto h21 = getzler_H(c.U, p2, p1, a);
    if ((d1 * d2) % 2) rhs -= h21;
    else rhs += h21;
    t.check(jets_agree(lhs, rhs), [&] { return degs({d1, d2, deg}); });
  }
  return t.done();
}

Outcome bracket_representation(Ctx& c, Rng& rng) {
  Tally t;
  const int K = c.caps().jet_cap;
  while (t.samples() < c.s().jets) {
    int d1 = uniform(rng, 0, 1), d2 = uniform(rng, 0, 1);
    int deg = d1 + d2 + uniform(rng, 0, 1);
    auto p1 = op_sample(rng, c, d1, 1), p2 = op_sample(rng, c, d2, 1);
    if (p1.is_zero() || p2.is_zero()) continue;
    auto a = jet_sample(rng, c, deg, K);
    auto lhs = jet_action(c.U, p1, jet_action(c.U, p2, a));
    auto other = jet_action(c.U, p2, jet_action(c.U, p1, a));
    if ((d1 * d2) % 2) lhs += other;
    else lhs -= other;
    auto br = gerstenhaber(c.U, p1, p2);
    bool ok = br.is_zero() ? lhs.is_zero() : jets_agree(lhs, jet_action(c.U, br, a));
    t.check(ok, [&] { return degs({d1, d2, deg}); });
  }
  return t.done();
}

Outcome b_compatibility(Ctx& c, Rng& rng) {
  Tally t;
  const int K = c.caps().jet_cap;
  while (t.samples() < c.s().algebra) {
    const int k = uniform(rng, 0, 1);
    auto p = op_sample(rng, c, k, 1);
    if (p.is_zero()) continue;
    const int l = std::max(k + 1, 1) + uniform(rng, 0, 1);
    auto a = jet_sample(rng, c, l, K);
    auto lhs = jet_b(c.U, jet_action(c.U, p, a));
    auto dp = cochain_d(c.U, p);
    EJet rhs = dp.is_zero() ? EJet{lhs.degree, lhs.cap, {}} : jet_action(c.U, dp, a);
    auto second = jet_action(c.U, p, jet_b(c.U, a));
    if (k % 2) rhs -= second;
    else rhs += second;
    t.check(jets_agree(lhs, rhs), [&] { return degs({k, l}); });
  }
  return t.done();
}

std::vector<Poly> section_sample(Rng& rng, const Ctx& c) {
  std::vector<Poly> u(c.r());
  for (auto& p : u) p = rand_poly(rng, c.n(), 1, 2);
  return u;
}

Outcome grothendieck_flat(Ctx& c, Rng& rng) {
  Tally t;
  const int K = std::min(c.caps().jet_cap, 3);
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    auto lift = varrho(c.U, EChain::function(rand_poly(rng, c.n(), 3, 3)), K);
    for (int i = 0; i < c.r(); ++i)
      t.check(grothendieck(c.U, unit_section(c.r(), i), lift).is_zero(), [] { return std::string("function lift"); });
    const int d = uniform(rng, 0, 1);
    auto jl = varrho(c.U, EChain::of_jet(jet_sample(rng, c, d, K)), K);
    t.check(grothendieck(c.U, section_sample(rng, c), jl).is_zero(), [&] { return "chain lift, " + degs({d}); });
  }
  return t.done();
}

Outcome grothendieck_action(Ctx& c, Rng& rng) {
  Tally t;
  const int K = c.caps().jet_cap;
  while (t.samples() < 2 * c.s().algebra) {
    auto u = section_sample(rng, c);
    const int k = uniform(rng, 0, 1);
    auto p = op_sample(rng, c, k, 1);
    if (p.is_zero()) continue;
    auto a = jet_sample(rng, c, k + 1, K);
    t.check(jets_agree(grothendieck(c.U, u, jet_action(c.U, p, a)), jet_action(c.U, p, grothendieck(c.U, u, a))),
            [&] { return "operator action, " + degs({k}); });
    t.check(jets_agree(grothendieck(c.U, u, cyclic(a)), cyclic(grothendieck(c.U, u, a))),
            [] { return std::string("cyclic operator"); });
  }
  return t.done();
}

Outcome chi_varrho(Ctx& c, Rng& rng) {
  Tally t;
  const int K = std::min(c.caps().jet_cap, 3);
  for (int trial = 0; trial < c.s().algebra; ++trial) {
    Poly f = rand_poly(rng, c.n(), 2, 2);
    t.check(chi(varrho(c.U, EChain::function(f), K)) == EChain::function(f), [] { return std::string("function"); });
    auto ch = EChain::of_jet(jet_sample(rng, c, uniform(rng, 0, 1), K));
    auto lift = varrho(c.U, ch, K);
    t.check(chi(lift) == ch, [] { return std::string("chi o varrho"); });
    t.check(varrho(c.U, chi(lift), K) == lift, [] { return std::string("varrho o chi"); });
  }
  return t.done();
}

Outcome chain_b_dual(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < std::max(1, c.s().algebra / 5); ++trial)
    for (int jd = 1; jd <= 2; ++jd) {
      auto ch = EChain::of_jet(jet_sample(rng, c, jd, 3));
      auto bc = chain_b(c.U, ch, 3);
      for (auto& tu : enumerate_tuples(c.r(), jd, 2)) {
        const int s = static_cast<int>(tu.size());
        Poly lhs = bc.degree == 0 ? bc.f : bc.jet.at(tu);
        Poly rhs = ch.jet.eval(cochain_d(c.U, EPolyOp::tuple(tu)));
        t.check(lhs == (s % 2 ? rhs : -rhs), [&] { return degs({jd}); });
      }
    }
  return t.done();
}

// ---------------------------------------------------------------- homotopy

int fiber_degree(const Ctx& c) { return std::max(1, c.caps().order - 1); }

Outcome homotopy_decomposition(Ctx& c, Rng& rng) {
  Tally t;
  const int N = fiber_degree(c);
  for (Bundle b : kFiberBundles)
    for (int trial = 0; trial < c.s().homotopy; ++trial) {
      Section s = fiber_sample(rng, c, b, N, uniform(rng, 0, c.r()), 2, N);
      Section rebuilt = delta_diff(kappa(s)) + kappa(delta_diff(s)) + h_projection(s);
      t.check(rebuilt.cap >= N && agree_to(rebuilt, s, N), [&] { return std::string(bundle_name(b)); });
    }
  t.order(N);
  return t.done(N);
}

Outcome delta_square(Ctx& c, Rng& rng) {
  Tally t;
  for (Bundle b : kAllBundles)
    for (int trial = 0; trial < c.s().algebra; ++trial) {
      Section s = fiber_sample(rng, c, b, fiber_degree(c), uniform(rng, 0, c.r()));
      t.check(delta_diff(delta_diff(s)).is_zero(), [&] { return std::string(bundle_name(b)); });
    }
  return t.done();
}

Outcome kappa_square(Ctx& c, Rng& rng) {
  Tally t;
  for (Bundle b : kFiberBundles)
    for (int trial = 0; trial < c.s().algebra; ++trial) {
      Section s = fiber_sample(rng, c, b, fiber_degree(c), uniform(rng, 0, c.r()));
      t.check(kappa(kappa(s)).is_zero(), [&] { return std::string(bundle_name(b)); });
    }
  return t.done();
}

Outcome nabla_delta(Ctx& c, Rng& rng) {
  Tally t;
  for (Bundle b : kAllBundles)
    for (int trial = 0; trial < c.s().algebra / 3 + 1; ++trial) {
      Section s = fiber_sample(rng, c, b, 4, uniform(rng, 0, std::min(c.r(), 2)));
      Section x = nabla_apply(c.ch, c.g, delta_diff(s)) + delta_diff(nabla_apply(c.ch, c.g, s));
      t.check(x.is_zero(), [&] { return std::string(bundle_name(b)); });
    }
  return t.done();
}

Outcome curvature_square(Ctx& c, Rng& rng) {
  Tally t;
  Section gamma = connection_field(c.g);
  Section R = curvature_field(c.ch, c.g);
  Section half = fw_schouten(gamma, gamma);
  half *= Q(1, 2);
  t.check(R == e_d(c.ch, gamma) + half, [] { return std::string("R != dGamma + [Gamma, Gamma]/2"); });
  for (Bundle b : kAllBundles)
    for (int trial = 0; trial < c.s().algebra / 3 + 1; ++trial) {
      Section s = fiber_sample(rng, c, b, 4, uniform(rng, 0, std::min(c.r(), 2)), 1, 4);
      Section lhs = nabla_apply(c.ch, c.g, nabla_apply(c.ch, c.g, s));
      t.check(agree_to(lhs, vf_act(R, s), std::min(lhs.cap, 3)), [&] { return std::string(bundle_name(b)); });
    }
  return t.done();
}

// ---------------------------------------------------------------- fedosov

Outcome certified_order(Ctx& c, Rng&) {
  const auto& fd = c.fedosov();
  Tally t;
  t.pass();
  t.order(fd.certified_order);
  auto o = t.done(c.caps().order - 1);
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(fd.rounds) + " rounds";
  return o;
}

Outcome d_square(Ctx& c, Rng& rng) {
  const auto& fd = c.fedosov();
  Tally t;
  int worst_gap = 0;
  for (Bundle b : kAllBundles)
    for (int trial = 0; trial < c.s().fedosov; ++trial) {
      Section s = fiber_sample(rng, c, b, c.caps().order, uniform(rng, 0, 1));
      Section dd = fedosov_D(fd, fedosov_D(fd, s));
      const int need = c.caps().order - 2;
      worst_gap = std::min(worst_gap, dd.cap - need);
      t.check(dd.is_zero() && dd.cap >= need, [&] {
        return std::string(bundle_name(b)) + (dd.is_zero() ? " margin " + std::to_string(dd.cap) : " nonzero");
      });
    }
  t.order(c.caps().order - 2 + worst_gap);
  return t.done(c.caps().order - 2);
}

Outcome residual_transport(Ctx& c, Rng& rng) {
  const auto& fd = c.fedosov();
  Tally t;
  for (int trial = 0; trial < c.s().fedosov; ++trial) {
    FiberShape sh;
    sh.r = c.r();
    sh.n = c.n();
    sh.xi = 1;
    sh.payload = 0;
    sh.ydeg = std::min(c.caps().order, 4);
    sh.cap = sh.ydeg;
    Section a = rand_fiber(rng, Bundle::T, sh);
    Section cur = fedosov_residual(fd, a);
    Section tr = fedosov_nabla(fd, cur) - delta_diff(cur) + fw_schouten(a, cur);
    t.check(tr.is_zero(), [] { return std::string("random connection form"); });
  }
  Section cur = fedosov_residual(fd, fd.a);
  t.check((fedosov_nabla(fd, cur) - delta_diff(cur) + fw_schouten(fd.a, cur)).is_zero(),
          [] { return std::string("the constructed form"); });
  return t.done();
}

Outcome flat_connection(Ctx& c, Rng&) {
  if (!curvature(c.ch, c.g).zero()) return skipped("connection is curved");
  Tally t;
  t.check(c.fedosov().a.is_zero(), [] { return std::string("A != 0 for a flat connection"); });
  return t.done();
}

// Functions, 1-forms, generators and polyvectors of degree <= 1, as y-constant fiber data.
Section resolution_sample(Rng& rng, const Ctx& c, int kind) {
  switch (kind) {
    case 0: return Section::function(rand_poly(rng, c.n(), 2, 2));
    case 1: return fiber_form(rand_form(rng, c.ch, 1));
    case 2: return fiber_polyvector(EPolyvector::gen(uniform(rng, 0, c.r() - 1)));
    default: return fiber_polyvector(rand_pv(rng, c.ch, uniform(rng, -1, std::min(1, c.r() - 1))));
  }
}

const char* kResolutionKinds[] = {"function", "1-form", "generator", "polyvector"};

Outcome lift_projection(Ctx& c, Rng& rng) {
  const auto& fd = c.fedosov();
  Tally t;
  for (int trial = 0; trial < c.s().resolution; ++trial) {
    const int kind = trial % 4;
    Section u = resolution_sample(rng, c, kind);
    t.check(h_projection(lift_lambda(fd, u)) == u, [&] { return std::string(kResolutionKinds[kind]); });
  }
  return t.done();
}

Outcome lift_flat(Ctx& c, Rng& rng) {
  const auto& fd = c.fedosov();
  Tally t;
  const int need = c.caps().order - 2;
  for (int trial = 0; trial < c.s().resolution; ++trial) {
    const int kind = trial % 4;
    Section d = fedosov_D(fd, lift_lambda(fd, resolution_sample(rng, c, kind)));
    t.order(d.cap);
    t.check(d.is_zero() && d.cap >= need, [&] { return std::string(kResolutionKinds[kind]); });
  }
  return t.done(need);
}

Outcome lift_low_order(Ctx& c, Rng& rng) {
  const auto& fd = c.fedosov();
  Tally t;
  for (int trial = 0; trial < 10; ++trial) {
    Poly f = rand_poly(rng, c.n(), 3, 3);
    Section want = Section::function(f);
    for (int i = 0; i < c.r(); ++i) want += Section::y_mono(YMono::gen(i), c.ch.rho(i, f));
    t.check(agree_to(lift_lambda(fd, Section::function(f)), want, 1), [] { return std::string("function"); });

    EForm alpha = rand_form(rng, c.ch, 1);
    auto coeff = [&](int j) {
      auto it = alpha.terms.find(Mask{1} << j);
      return it == alpha.terms.end() ? Poly() : it->second;
    };
    Section wa = fiber_form(alpha);
    for (int i = 0; i < c.r(); ++i)
      for (int j = 0; j < c.r(); ++j) {
        Poly v = c.ch.rho(i, coeff(j));
        for (int k = 0; k < c.r(); ++k) v -= c.g(i, j, k) * coeff(k);
        FKey key;
        key.y = YMono::gen(i);
        key.odd = Mask{1} << j;
        Section term(Bundle::A, kExact);
        term.add(key, v);
        wa += term;
      }
    t.check(agree_to(lift_lambda(fd, fiber_form(alpha)), wa, 1), [] { return std::string("1-form"); });
  }
  return t.done();
}

Outcome lift_bracket(Ctx& c, Rng& rng) {
  const auto& fd = c.fedosov();
  Tally t;
  const int need = c.caps().order - 2;
  for (int trial = 0; trial < c.s().resolution; ++trial) {
    int k = uniform(rng, -1, 1), l = uniform(rng, 0, 1);
    auto u = rand_pv(rng, c.ch, k), v = rand_pv(rng, c.ch, l);
    Section br = fw_schouten(lift_lambda(fd, fiber_polyvector(u)), lift_lambda(fd, fiber_polyvector(v)));
    Section lb = lift_lambda(fd, fiber_polyvector(schouten(c.ch, u, v)));
    t.order(br.cap);
    t.check(agree_to(lb, br, br.cap) && br.cap >= need, [&] { return degs({k, l}); });
  }
  return t.done(need);
}

Outcome lift_lie(Ctx& c, Rng& rng) {
  const auto& fd = c.fedosov();
  Tally t;
  for (int trial = 0; trial < c.s().resolution; ++trial) {
    auto u = rand_pv(rng, c.ch, 0);
    const int q = uniform(rng, 0, std::min(2, c.r()));
    auto w = rand_form(rng, c.ch, q);
    Section lie = fw_lie(lift_lambda(fd, fiber_polyvector(u)), lift_lambda(fd, fiber_form(w)));
    t.check(base_form(lie) == lie_derivative(c.ch, u, w), [&] { return "form " + degs({q}); });
  }
  return t.done();
}

// ---------------------------------------------------------------- comparison

Outcome mu_projection(Ctx& c, Rng& rng) {
  const auto& mu = c.mu_map();
  Tally t;
  for (int i = 0; i < c.r(); ++i)
    t.check(agree_to(mu.generator(i), as_operator(Section::d_dy(i)), 0), [&] { return "e" + std::to_string(i + 1); });
  for (int trial = 0; trial < 5; ++trial) {
    Poly f = rand_poly(rng, c.n(), 2, 3);
    t.check(agree_to(mu.function(f), as_multiplication(Section::function(f)), 0), [] { return std::string("function"); });
  }
  return t.done();
}

Outcome mu_flat(Ctx& c, Rng& rng) {
  const auto& fd = c.fedosov();
  const auto& mu = c.mu_map();
  Tally t;
  const int N = c.caps().order;
  int gap = 0;
  for (int trial = 0; trial < c.s().comparison; ++trial) {
    const int k = uniform(rng, -1, 1);
    EPolyOp p = rand_op(rng, c.n(), c.r(), k, 2, 3);
    Section d = fedosov_D(fd, mu.prime(p));
    const int need = N - 1 - std::max(p.order(), 0);
    gap = std::min(gap, d.cap - need);
    t.check(d.is_zero() && d.cap >= need, [&] { return degs({k}); });
  }
  t.order(N - 1 + gap);
  return t.done(N - 1);
}

Outcome mu_morphism(Ctx& c, Rng& rng) {
  const auto& mu = c.mu_map();
  Tally t;
  const int need = c.caps().order - 4;
  for (int trial = 0; trial < std::max(1, c.s().comparison / 3); ++trial) {
    EPolyOp p = rand_op(rng, c.n(), c.r(), uniform(rng, -1, 1), 1, 2);
    EPolyOp q = rand_op(rng, c.n(), c.r(), uniform(rng, -1, 1), 1, 2);
    Section mp = mu.prime(p), mq = mu.prime(q);
    auto check = [&](const EPolyOp& base, const Section& fiber, const char* what) {
      Section lifted = mu.prime(base);
      const int m = std::min(lifted.cap, fiber.cap);
      t.order(m);
      t.check(m >= need && agree_to(lifted, fiber, m), [&] { return std::string(what); });
    };
    check(bullet(c.U, p, q), fw_bullet(mp, mq), "bullet");
    check(gerstenhaber(c.U, p, q), fw_gerstenhaber(mp, mq), "gerstenhaber");
    check(cup(p, q), fw_cup(mp, mq), "cup");
    check(cochain_d(c.U, p), fw_cochain_d(mp), "cochain_d");
  }
  return t.done(need);
}

Section chain_sample(Rng& rng, const Ctx& c, int groups) {
  FiberShape sh;
  sh.r = c.r();
  sh.n = c.n();
  sh.ydeg = 2;
  sh.xi = 0;
  sh.payload = groups - 1;
  sh.terms = 3;
  return rand_fiber(rng, Bundle::J, sh);
}

Outcome gamma_grothendieck(Ctx& c, Rng& rng) {
  const auto& fd = c.fedosov();
  const auto& mu = c.mu_map();
  Tally t;
  for (int trial = 0; trial < c.s().comparison; ++trial) {
    const int groups = 1 + trial % 2;
    Section j = chain_sample(rng, c, groups);
    const int cap = 3 - groups;
    EJet gj = gamma_map(mu, j, cap + 1);
    Section dj = fedosov_D(fd, j);
    const int i = uniform(rng, 0, c.r() - 1);
    EJet lhs = gamma_map(mu, xi_component(dj, i), cap, groups - 1);
    EJet rhs = grothendieck(c.U, unit_section(c.r(), i), gj);
    t.check(lhs == rhs, [&] { return std::to_string(groups) + " groups along e" + std::to_string(i + 1); });
  }
  return t.done();
}

Outcome gamma_action(Ctx& c, Rng& rng) {
  const auto& mu = c.mu_map();
  Tally t;
  for (int trial = 0; trial < c.s().comparison; ++trial) {
    const int groups = uniform(rng, 1, 2);
    Section a = chain_sample(rng, c, groups);
    const int k = uniform(rng, 0, groups - 1);
    EPolyOp p = rand_op(rng, c.n(), c.r(), k, 1, 1);
    const int cap = 1;
    EJet lhs = jet_action(c.U, p, gamma_map(mu, a, cap + std::max(p.order(), 0)));
    EJet rhs = gamma_map(mu, fw_chain_action(mu.prime(p), a), cap, groups - 1 - k);
    t.check(restrict_to(lhs, cap) == rhs, [&] { return degs({k, groups}); });
  }
  return t.done();
}

Outcome maurer_cartan(Ctx& c, Rng&) {
  const auto& fd = c.fedosov();
  auto rep = mc_check(c.ch, extract_B(fd));
  Tally t;
  t.check(rep.flat, [] { return std::string("dB + [B, B]/2 != 0"); });
  t.check(rep.cocycle, [] { return std::string("B is not a Hochschild cocycle"); });
  t.check(rep.operator_flat, [] { return std::string("Gerstenhaber form fails"); });
  t.order(rep.margin);
  return t.done(c.caps().order - 1);
}

// ---------------------------------------------------------------- hkr

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long b = 1;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

Outcome hkr_cocycle(Ctx& c, Rng& rng) {
  Tally t;
  for (int trial = 0; trial < c.s().hkr; ++trial) {
    const int k = uniform(rng, -1, std::min(2, c.r() - 1));
    EPolyvector u = k < 0 ? EPolyvector::function(rand_poly(rng, c.n(), 2, 2)) : rand_pv(rng, c.ch, k);
    t.check(cochain_d(c.U, hkr_V(u)).is_zero(), [&] { return degs({k}); });
  }
  return t.done();
}

Outcome connes_boundary(Ctx& c, Rng& rng) {
  Tally t;
  const int K = c.caps().jet_cap;
  for (int trial = 0; trial < c.s().hkr; ++trial) {
    const int jd = 1 + trial % 2;
    EChain ch = EChain::of_jet(jet_sample(rng, c, jd, K));
    EChain bc = chain_b(c.U, ch, K);
    t.check(connes_C(bc, c.r()).is_zero(), [&] { return degs({jd}); });
  }
  return t.done();
}

Outcome fiber_cohomology(Ctx& c, Rng&) {
  const int r = c.r(), ydeg = 2, order = 2;
  auto slice = fiber_cochain_slice(r, 1, ydeg, order);
  auto rows = truncated_cohomology(slice.slice);
  Tally t;
  const long ymonos = static_cast<long>(enumerate_monos(r, ydeg).size());
  for (auto& row : rows) {
    if (row.degree > 1) continue;
    const long expect = row.degree + 1 > order ? 0 : binom(r, row.degree + 1) * ymonos;
    t.check(row.complete && row.homology == expect, [&] {
      return "degree " + std::to_string(row.degree) + ": " + std::to_string(row.homology) + " vs " +
             std::to_string(expect);
    });
  }
  return t.done();
}

Outcome operator_cohomology(Ctx& c, Rng&) {
  auto slice = operator_slice(c.U, 1, 2);
  auto rows = truncated_cohomology(slice.slice);
  Tally t;
  for (auto& row : rows) {
    if (row.degree > 1) continue;
    const long expect = binom(c.r(), row.degree + 1);
    t.check(row.complete && row.homology == expect, [&] {
      return "degree " + std::to_string(row.degree) + ": " + std::to_string(row.homology) + " vs " +
             std::to_string(expect);
    });
    if (row.degree < 0) continue;
    Matrix cols;
    const Matrix& in = slice.slice.diff.at(row.degree - 1);
    for (int j = 0; j < slice.slice.dim(row.degree - 1); ++j) {
      Vec v;
      for (auto& rw : in) v.push_back(rw[j]);
      cols.push_back(v);
    }
    for (Mask m = 0; m < (Mask{1} << c.r()); ++m)
      if (popcount(m) == row.degree + 1)
        cols.push_back(slice.coords(row.degree, hkr_V(EPolyvector::wedge_of(mask_indices(m)))));
    t.check(static_cast<long>(rank(cols)) == row.rank_in + expect,
            [&] { return "HKR images do not span degree " + std::to_string(row.degree); });
  }
  return t.done();
}

// ---------------------------------------------------------------- quantize

PolyvectorSeries pi_series(const Ctx& c) {
  if (!c.file.pi.empty()) return c.file.pi;
  if (c.r() < 2) return {};
  EPolyvector pi = EPolyvector::wedge_of({0, 1});
  if (!poisson_validate(c.ch, pi).ok) return {};
  return {EPolyvector{}, pi};
}

// The constant bivector at hbar^1 when the chart admits the Moyal construction.
std::optional<EPolyvector> moyal_bivector(const Ctx& c) {
  auto pi = pi_series(c);
  if (!c.ch.abelian() || pi.size() < 2) return std::nullopt;
  for (std::size_t s = 0; s < pi.size(); ++s)
    if (s != 1 && !pi[s].is_zero()) return std::nullopt;
  for (auto& [m, f] : pi[1].terms)
    if (popcount(m) != 2 || !f.is_constant()) return std::nullopt;
  return pi[1];
}

Outcome poisson(Ctx& c, Rng&) {
  auto pi = pi_series(c);
  const int M = c.caps().hbar_order;
  auto js = jacobi_series(c.ch, pi, M);
  Tally t;
  int first = -1;
  for (int s = 0; s < static_cast<int>(js.size()); ++s)
    if (!js[s].is_zero() && first < 0) first = s;
  t.check(first < 0, [&] { return "[pi, pi] nonzero at hbar^" + std::to_string(first); });
  t.order(first < 0 ? M : first - 1);
  return t.done(M);
}

Outcome classical_limit_check(Ctx& c, Rng&) {
  auto pi = moyal_bivector(c);
  if (!pi) return skipped("no constant bivector on an abelian chart");
  auto d = moyal_deform(c.ch, *pi, c.caps().hbar_order);
  auto lim = classical_limit(d, *pi);
  Tally t;
  t.check(lim.unit, [] { return std::string("Pi_0 != 1 (x) 1"); });
  t.check(lim.antisymmetric, [] { return std::string("antisymmetric part of Pi_1 != pi"); });
  return t.done();
}

Outcome associativity(Ctx& c, Rng&) {
  auto pi = moyal_bivector(c);
  if (!pi) return skipped("no constant bivector on an abelian chart");
  const int M = c.caps().hbar_order;
  auto res = associativity_residual(c.U, moyal_deform(c.ch, *pi, M));
  Tally t;
  int first = -1;
  for (int s = 0; s < static_cast<int>(res.size()); ++s)
    if (!res[s].is_zero() && first < 0) first = s;
  t.check(first < 0, [&] { return "[Pi, Pi] nonzero at hbar^" + std::to_string(first); });
  t.order(first < 0 ? M : first - 1);
  return t.done(M);
}

// Delta(Psi^-1) Pi (Psi (x) Psi) for Psi = 1 + hbar psi1, truncated at hbar^m.
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
      for (int b = 0; a + b <= s && b <= pi.order(); ++b)
        for (int x = 0; x <= 1 && a + b + x <= s; ++x) {
          const int y = s - a - b - x;
          if (y > 1) continue;
          EPolyOp right = slot_product(U, pi.coeffs[b], EPolyOp::tensor({psi[x], psi[y]}));
          out.coeffs[s] += slot_product(U, coproduct(U, inv[a]), right);
        }
  return out;
}

Outcome equivalence(Ctx& c, Rng&) {
  auto pi = moyal_bivector(c);
  if (!pi) return skipped("no constant bivector on an abelian chart");
  const int m = std::min(2, c.caps().hbar_order);
  auto d = moyal_deform(c.ch, *pi, m);
  Tally t;
  t.check(equivalence_check(c.U, d, d, {PbwElement::one()}, m).equivalent(), [] { return std::string("reflexivity"); });
  PbwElement a = PbwElement::gen(0), b = Q(-1, 2) * PbwElement::gen(c.r() - 1);
  auto d2 = conjugate(c.U, d, a, m);
  auto d3 = conjugate(c.U, d2, b, m);
  t.check(equivalence_check(c.U, d, d2, {PbwElement::one(), a}, m).equivalent(),
          [] { return std::string("conjugation by 1 + hbar e1"); });
  PbwSeries both = series_mul(c.U, {PbwElement::one(), a}, {PbwElement::one(), b}, m);
  t.check(equivalence_check(c.U, d, d3, both, m).equivalent(), [] { return std::string("transitivity"); });
  t.order(m);
  return t.done(m);
}

Outcome cone(Ctx& c, Rng& rng) {
  auto pi = pi_series(c);
  const int M = c.caps().hbar_order;
  for (auto& s : jacobi_series(c.ch, pi, M))
    if (!s.is_zero()) return skipped("pi_h is not Poisson");
  Tally t;
  for (int trial = 0; trial < 5; ++trial) {
    PolyvectorSeries u{EPolyvector{}};
    for (int s = 1; s <= M; ++s) u.push_back(rand_pv(rng, c.ch, uniform(rng, -1, std::min(1, c.r() - 1))));
    auto g = gauge_direction(c.ch, u, pi, M);
    for (int s = 0; s <= M; ++s) {
      EPolyvector lin;
      for (int a = 0; a <= s && a < static_cast<int>(pi.size()); ++a)
        if (s - a < static_cast<int>(g.size())) lin += schouten(c.ch, pi[a], g[s - a]);
      t.check(lin.is_zero(), [&] { return "order " + std::to_string(s); });
    }
  }
  return t.done();
}

Outcome complexes(Ctx& c, Rng&) {
  auto pi = pi_series(c);
  auto dc = deformation_complexes(c.ch, pi, 2, c.caps().x_degree);
  Tally t;
  for (auto* rows : {&dc.polyvector_homology, &dc.form_homology})
    for (auto& row : *rows)
      t.check(row.complete && row.rank_in + row.rank_out + row.homology == row.dim,
              [&] { return "degree " + std::to_string(row.degree); });
  return t.done();
}

constexpr int kTraceOrders = 2;
constexpr int kTraceJetCap = 2;

Outcome traces(Ctx& c, Rng& rng) {
  auto pi = pi_series(c);
  const int fcap = c.caps().x_degree;
  auto ts = trace_space(c.U, pi, kTraceOrders, fcap, kTraceJetCap);
  Tally t;
  int attempts = 0;
  while (t.samples() < c.s().traces && attempts++ < 40 * c.s().traces) {
    EJet a = rand_jet(rng, c.n(), c.r(), 0, kTraceJetCap, 2);
    EJet j = varrho(c.U, EChain::of_jet(a), kTraceJetCap);
    auto values = evaluate_on_series(j, pi, kTraceOrders);
    if (!std::all_of(values.begin(), values.end(), [&](const Poly& f) { return ts.in_space(f); })) continue;
    bool ok = true;
    for (auto& tr : ts.basis)
      for (auto& v : ts.apply(tr, values)) ok = ok && v == 0;
    t.check(ok, [] { return std::string("trace does not vanish on a flat jet"); });
  }
  auto o = t.done();
  if (o.status == Status::Pass && t.samples() < c.s().traces) {
    o.status = Status::Budget;
    o.detail = "only " + std::to_string(t.samples()) + " samples stay inside x-degree " + std::to_string(fcap);
  }
  if (o.detail.empty()) o.detail = std::to_string(ts.basis.size()) + " independent traces";
  return o;
}

Outcome traces_zero(Ctx& c, Rng&) {
  auto ts = trace_space(c.U, {}, kTraceOrders, c.caps().x_degree, kTraceJetCap);
  Tally t;
  const std::size_t full = kTraceOrders * ts.monomials.size();
  t.check(ts.basis.size() == full,
          [&] { return std::to_string(ts.basis.size()) + " traces, expected " + std::to_string(full); });
  return t.done();
}

// ---------------------------------------------------------------- registry

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"axioms", "axioms.anchor-morphism", "algebroid.anchor-morphism"}, anchor_morphism},
      {{"axioms", "axioms.jacobi", "algebroid.jacobi"}, jacobi},
      {{"axioms", "axioms.torsion-free", "connection.torsion-free"}, torsion_free_check},
      {{"axioms", "axioms.bianchi", "connection.bianchi"}, bianchi_check},
      {{"axioms", "axioms.lie-contraction", "forms.lie-contraction"}, lie_contraction},
      {{"axioms", "axioms.lie-bracket", "forms.lie-bracket"}, lie_bracket},

      {{"calculus", "calculus.schouten-antisymmetry", "polyvectors.schouten-symmetry"}, schouten_antisymmetry},
      {{"calculus", "calculus.schouten-jacobi", "polyvectors.schouten-jacobi"}, schouten_jacobi},
      {{"calculus", "calculus.schouten-leibniz", "polyvectors.schouten-leibniz"}, schouten_leibniz},
      {{"calculus", "calculus.de-rham-square", "forms.de-rham"}, de_rham_square},
      {{"calculus", "calculus.pbw-confluence", "enveloping.pbw"}, pbw_confluence},
      {{"calculus", "calculus.pbw-filtration", "enveloping.filtration"}, pbw_filtration},
      {{"calculus", "calculus.coproduct", "enveloping.coproduct"}, coproduct_check},
      {{"calculus", "calculus.anchor-representation", "enveloping.anchor-representation"}, anchor_representation},
      {{"calculus", "calculus.bullet-composition", "polyop.bullet"}, bullet_composition},
      {{"calculus", "calculus.hochschild-square", "polyop.hochschild-differential"}, hochschild_square},
      {{"calculus", "calculus.gerstenhaber-jacobi", "polyop.gerstenhaber"}, gerstenhaber_jacobi},
      {{"calculus", "calculus.hochschild-derivation", "polyop.hochschild-derivation"}, hochschild_derivation},

      {{"jets", "jets.cyclic-order", "jets.cyclic"}, cyclic_order},
      {{"jets", "jets.b-square", "jets.b-differential"}, jet_b_square},
      {{"jets", "jets.composition-correction", "jets.composition-correction"}, composition_correction},
      {{"jets", "jets.bracket-representation", "jets.bracket-representation"}, bracket_representation},
      {{"jets", "jets.b-compatibility", "jets.b-compatibility"}, b_compatibility},
      {{"jets", "jets.grothendieck-flat", "jets.grothendieck-flat"}, grothendieck_flat},
      {{"jets", "jets.grothendieck-action", "jets.grothendieck-action"}, grothendieck_action},
      {{"jets", "jets.chi-varrho", "chains.lift"}, chi_varrho},
      {{"jets", "jets.chain-b-dual", "chains.b-differential"}, chain_b_dual},

      {{"homotopy", "homotopy.decomposition", "fiber.homotopy-decomposition"}, homotopy_decomposition},
      {{"homotopy", "homotopy.delta-square", "fiber.delta"}, delta_square},
      {{"homotopy", "homotopy.kappa-square", "fiber.kappa"}, kappa_square},
      {{"homotopy", "homotopy.nabla-delta", "fiber.nabla"}, nabla_delta},
      {{"homotopy", "homotopy.curvature", "fiber.curvature"}, curvature_square},

      {{"fedosov", "fedosov.certified-order", "fedosov.connection-form"}, certified_order},
      {{"fedosov", "fedosov.d-square", "fedosov.flatness"}, d_square},
      {{"fedosov", "fedosov.residual-transport", "fedosov.residual-transport"}, residual_transport},
      {{"fedosov", "fedosov.flat-connection", "fedosov.flat-connection"}, flat_connection},
      {{"fedosov", "fedosov.lift-projection", "resolution.projection"}, lift_projection},
      {{"fedosov", "fedosov.lift-flat", "resolution.flat-lift"}, lift_flat},
      {{"fedosov", "fedosov.lift-low-order", "resolution.low-order"}, lift_low_order},
      {{"fedosov", "fedosov.lift-bracket", "resolution.bracket"}, lift_bracket},
      {{"fedosov", "fedosov.lift-lie", "resolution.lie-derivative"}, lift_lie},

      {{"comparison", "comparison.mu-projection", "comparison.mu"}, mu_projection},
      {{"comparison", "comparison.mu-flat", "comparison.mu-flat"}, mu_flat},
      {{"comparison", "comparison.mu-morphism", "comparison.mu-prime"}, mu_morphism},
      {{"comparison", "comparison.gamma-grothendieck", "comparison.gamma"}, gamma_grothendieck},
      {{"comparison", "comparison.gamma-action", "comparison.gamma-action"}, gamma_action},
      {{"comparison", "comparison.maurer-cartan", "trivialized.maurer-cartan"}, maurer_cartan},

      {{"hkr", "hkr.v-cocycle", "hkr.polyvectors"}, hkr_cocycle},
      {{"hkr", "hkr.c-boundary", "hkr.chains"}, connes_boundary},
      {{"hkr", "hkr.fiber-cohomology", "hkr.fiber-cohomology"}, fiber_cohomology},
      {{"hkr", "hkr.operator-cohomology", "hkr.operator-cohomology"}, operator_cohomology},

      {{"quantize", "quantize.poisson", "quantize.jacobi"}, poisson},
      {{"quantize", "quantize.classical-limit", "quantize.classical-limit"}, classical_limit_check},
      {{"quantize", "quantize.associativity", "quantize.associativity"}, associativity},
      {{"quantize", "quantize.equivalence", "quantize.equivalence"}, equivalence},
      {{"quantize", "quantize.cone", "quantize.cone"}, cone},
      {{"quantize", "quantize.complexes", "quantize.deformation-complexes"}, complexes},
      {{"quantize", "quantize.traces", "quantize.traces"}, traces},
      {{"quantize", "quantize.traces-zero", "quantize.traces"}, traces_zero},
  };
  return entries;
}

Rng rng_for(std::uint64_t seed, const std::string& check) {
  std::uint32_t h = 2166136261u;
  for (unsigned char ch : check) {
    h ^= ch;
    h *= 16777619u;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), h};
  return Rng(seq);
}

CheckRecord run_entry(const Entry& e, Ctx& ctx, bool chart_ok, const std::string& chart_issue) {
  CheckRecord rec;
  rec.check = e.spec.check;
  rec.anchor = e.spec.anchor;
  const bool chart_level = e.spec.check == "axioms.anchor-morphism" || e.spec.check == "axioms.jacobi";
  if (!chart_ok && !chart_level) {
    rec.status = Status::Skipped;
    rec.detail = chart_issue;
    return rec;
  }
  Rng rng = rng_for(ctx.cfg.seed, e.spec.check);
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = e.fn(ctx, rng);
  } catch (const BudgetExhausted& ex) {
    o.status = Status::Budget;
    o.detail = ex.what();
  } catch (const Rejected& ex) {
    o.status = Status::Fail;
    o.detail = std::string("rejected: ") + ex.what();
  }
  if (ctx.cfg.timings)
    rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  rec.status = o.status;
  rec.required_order = o.required;
  rec.achieved_order = o.achieved;
  rec.samples = o.samples;
  rec.detail = o.detail;
  return rec;
}

}  // namespace

std::string engine_version() { return "lafed 0.4.0"; }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"axioms", "calculus", "jets",  "homotopy", "fedosov",
                                                 "comparison", "hkr",  "quantize", "all"};
  return names;
}

const std::vector<CheckSpec>& registered_checks() {
  static const std::vector<CheckSpec> specs = [] {
    std::vector<CheckSpec> out;
    for (auto& e : registry()) out.push_back(e.spec);
    return out;
  }();
  return specs;
}

Samples scaled(const Samples& s, int num, int den) {
  auto f = [&](int v) { return std::max(1, v * num / den); };
  return {f(s.forms),      f(s.words),      f(s.algebra),    f(s.jets), f(s.homotopy),
          f(s.fedosov),    f(s.resolution), f(s.comparison), f(s.hkr),  f(s.traces)};
}

SuiteReport run_suite(const ChartFile& chart, const std::string& suite, const SuiteConfig& cfg) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw InputError("unknown suite \"" + suite + "\"", "", 0, 0);
  SuiteReport rep;
  rep.engine = engine_version();
  rep.suite = suite;
  rep.chart = chart.name;
  rep.input_digest = chart.digest;
  rep.seed = cfg.seed;

  auto v = validate_chart(chart.chart);
  const std::string issue = v.ok ? "" : "chart fails " + v.failed_check;
  Ctx ctx(chart, cfg);
  for (auto& e : registry())
    if (suite == "all" || e.spec.suite == suite) rep.checks.push_back(run_entry(e, ctx, v.ok, issue));
  if (!v.ok && suite != "all" && suite != "axioms") {
    CheckRecord pre;
    pre.check = suite + ".chart";
    pre.anchor = "algebroid.axioms";
    pre.status = Status::Fail;
    pre.samples = 1;
    pre.detail = issue;
    rep.checks.push_back(pre);
  }
  std::sort(rep.checks.begin(), rep.checks.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.check < b.check; });
  return rep;
}

}  // namespace lafed::cli
