#include "lafed/comparison.hpp"

#include "lafed/errors.hpp"
#include "lafed/fiber_ops.hpp"
#include "lafed/homotopy.hpp"

namespace lafed {

namespace {

Section as_d_function(const Section& s) {
  Section out(Bundle::D, s.cap);
  for (auto& [k, c] : s.terms) out.add(k, c);
  return out;
}

Section identity_operator() {
  Section out(Bundle::D, kExact);
  FKey k;
  k.ops.push_back(YMono{});
  out.add(k, Poly(1));
  return out;
}

}  // namespace

MuMap::MuMap(const FedosovData& fd) : fd_(&fd) {
  for (int i = 0; i < fd.chart.r(); ++i)
    gens_.push_back(as_operator(lift_lambda(fd, Section::d_dy(i))));
}

Section MuMap::function(const Poly& f) const {
  return as_multiplication(lift_lambda(*fd_, Section::function(f)));
}

Section MuMap::mono(const UMono& m, const Poly& f) const {
  auto it = monos_.find(m);
  if (it == monos_.end()) {
    Section acc = identity_operator();
    for (int i : m.word()) acc = fw_compose(acc, gens_[i]);
    it = monos_.emplace(m, std::move(acc)).first;
  }
  const Section& acc = it->second;
  if (f == Poly(1)) return acc;
  return fw_mul(lift_lambda(*fd_, Section::function(f)), acc);
}

Section MuMap::word(const std::vector<Letter>& w) const {
  Section acc = identity_operator();
  for (auto& l : w) acc = fw_compose(acc, l.gen >= 0 ? gens_[l.gen] : function(l.f));
  return acc;
}

Section MuMap::prime(const EPolyOp& p) const {
  Section out;
  bool first = true;
  for (auto& [t, f] : p.terms) {
    Section term;
    if (t.empty()) {
      term = as_d_function(lift_lambda(*fd_, Section::function(f)));
    } else {
      Section acc = mono(t[0]);
      for (std::size_t s = 1; s < t.size(); ++s) acc = fw_cup(acc, mono(t[s]));
      term = f == Poly(1) ? acc : fw_mul(lift_lambda(*fd_, Section::function(f)), acc);
    }
    if (first) {
      out = std::move(term);
      first = false;
    } else {
      out += term;
    }
  }
  if (first) return Section(Bundle::D, kExact);
  return out;
}

EJet gamma_map(const MuMap& mu, const Section& chain, int cap, int degree) {
  if (chain.bundle != Bundle::J) throw Rejected("gamma_map: expects a chain");
  int groups = degree >= 0 ? degree + 1 : -1;
  for (auto& [k, c] : chain.terms) {
    if (k.xi != 0) throw Rejected("gamma_map: expects xi-degree 0 chains");
    if (groups >= 0 && groups != static_cast<int>(k.ops.size()))
      throw Rejected("gamma_map: chain is not homogeneous");
    groups = static_cast<int>(k.ops.size());
  }
  if (groups < 0) groups = 1;
  const int r = mu.data().chart.r();
  EJet out{groups - 1, cap, {}};
  for (auto& t : enumerate_tuples(r, groups, cap)) {
    Section paired = fw_pair(mu.prime(EPolyOp::tuple(t)), chain);
    if (paired.cap < 0) throw BudgetExhausted("gamma_map", tuple_order(t), chain.cap);
    auto it = paired.terms.find(FKey{});
    if (it != paired.terms.end()) out.set(t, it->second);
  }
  return out;
}

Section extract_B(const FedosovData& fd) {
  return fd.gamma - delta_generator(fd.chart.r()) + fd.a;
}

McReport mc_check(const AlgebroidChart& chart, const Section& b) {
  McReport rep;
  Section half = fw_schouten(b, b);
  half *= Q(1, 2);
  rep.residual = e_d(chart, b) + half;
  rep.margin = rep.residual.cap;
  rep.flat = rep.residual.is_zero();

  const Section op = as_operator(b);
  rep.cocycle = fw_cochain_d(op).is_zero();
  Section ghalf = fw_gerstenhaber(op, op);
  ghalf *= Q(1, 2);
  const Section gres = e_d(chart, op) + ghalf;
  rep.operator_flat = gres.is_zero() && gres.cap >= rep.margin;
  return rep;
}

}  // namespace lafed
