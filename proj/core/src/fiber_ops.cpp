#include "lafed/fiber_ops.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "lafed/errors.hpp"

namespace lafed {

namespace {

int sat(long v) { return v > kExact ? kExact : static_cast<int>(v); }

YMono plus(const YMono& a, const YMono& b) {
  YMono r;
  for (int i = 0; i < kMaxRank; ++i) r.e[i] = static_cast<std::uint8_t>(a.e[i] + b.e[i]);
  return r;
}

YMono minus(const YMono& a, const YMono& b) {
  YMono r;
  for (int i = 0; i < kMaxRank; ++i) r.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
  return r;
}

// a!/(a-g)! coordinatewise, the coefficient of d^g y^a; 0 unless g <= a.
Q falling(const YMono& a, const YMono& g) {
  Q r(1);
  for (int i = 0; i < kMaxRank; ++i) {
    if (g.e[i] > a.e[i]) return Q(0);
    for (int t = 0; t < g.e[i]; ++t) r *= a.e[i] - t;
  }
  return r;
}

using SplitList = std::vector<std::pair<Q, std::vector<YMono>>>;

// Ordered decompositions alpha = sum of `parts` multi-indices with multinomial
// weights (Leibniz rule for d^alpha of a product of `parts` factors).
const SplitList& splits(const YMono& alpha, int parts) {
  thread_local std::map<std::pair<YMono, int>, SplitList> cache;
  auto key = std::make_pair(alpha, parts);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  SplitList cur{{Q(1), std::vector<YMono>(static_cast<std::size_t>(parts))}};
  for (int c = 0; c < kMaxRank; ++c) {
    const int n = alpha.e[c];
    if (n == 0) continue;
    SplitList next;
    std::vector<int> comp(static_cast<std::size_t>(parts));
    std::function<void(int, int)> rec = [&](int j, int left) {
      if (j == parts - 1) {
        comp[j] = left;
        Q w = factorial(n);
        for (int v : comp) w /= factorial(v);
        for (auto& [w0, v] : cur) {
          auto nv = v;
          for (int t = 0; t < parts; ++t) nv[t].e[c] = static_cast<std::uint8_t>(comp[t]);
          next.emplace_back(w0 * w, std::move(nv));
        }
        return;
      }
      for (int t = 0; t <= left; ++t) {
        comp[j] = t;
        rec(j + 1, left - t);
      }
    };
    rec(0, n);
    cur = std::move(next);
  }
  return cache.emplace(key, std::move(cur)).first->second;
}

int slots(const FKey& k) { return static_cast<int>(k.ops.size()); }

// Parity used when a payload passes an E-form in products.
int product_parity(Bundle b, const FKey& k) {
  switch (b) {
    case Bundle::A:
    case Bundle::T: return popcount(k.odd);
    case Bundle::D: return slots(k);
    default: return 0;
  }
}

int xi_sign(Mask a, Mask b, int payload_parity) {
  int s = wedge_sign(a, b);
  if (s != 0 && (payload_parity & 1) && (popcount(b) & 1)) s = -s;
  return s;
}

Section as_polyvector(const Section& s) {
  if (s.bundle == Bundle::T) return s;
  if (s.bundle != Bundle::S) throw Rejected("expected a fiber polyvector");
  Section t = s;
  t.bundle = Bundle::T;
  return t;
}

void require(const Section& s, Bundle b, const char* what) {
  if (s.bundle != b && !s.is_zero()) throw Rejected(std::string(what) + ": wrong bundle " + bundle_name(s.bundle));
}

int total_degree(Bundle b, const FKey& k) { return popcount(k.xi) + payload_degree(b, k); }

std::map<int, Section> by_total_degree(const Section& s) {
  std::map<int, Section> out;
  for (auto& [k, c] : s.terms) {
    auto [it, fresh] = out.try_emplace(total_degree(s.bundle, k), s.bundle, s.cap);
    it->second.terms.emplace(k, c);
  }
  return out;
}

// P applied to the fiber monomials y^{b_s}: coefficient and resulting exponent.
bool apply_op(const FKey& p, const std::vector<YMono>& groups, std::size_t first, Q& coef, YMono& y) {
  coef = 1;
  y = p.y;
  for (std::size_t s = 0; s < p.ops.size(); ++s) {
    const YMono& b = groups[(first + s) % groups.size()];
    Q f = falling(b, p.ops[s]);
    if (f == 0) return false;
    coef *= f;
    y = plus(y, minus(b, p.ops[s]));
  }
  return true;
}

}  // namespace

Section fw_mul(const Section& a, const Section& b) {
  Bundle ob;
  if (a.bundle == Bundle::S) ob = b.bundle;
  else if (b.bundle == Bundle::S || a.bundle == b.bundle) ob = a.bundle;
  else throw Rejected("fw_mul: incompatible bundles");
  if (ob == Bundle::J) throw Rejected("fw_mul: chains have no product");
  Section out(ob, sat(std::min(static_cast<long>(a.cap) + b.min_y_degree(),
                               static_cast<long>(b.cap) + a.min_y_degree())));
  for (auto& [ka, ca] : a.terms)
    for (auto& [kb, cb] : b.terms) {
      int s = xi_sign(ka.xi, kb.xi, product_parity(a.bundle, ka));
      if (s == 0) continue;
      FKey k;
      k.xi = ka.xi | kb.xi;
      k.y = plus(ka.y, kb.y);
      if (ob == Bundle::A || ob == Bundle::T) {
        int w = wedge_sign(ka.odd, kb.odd);
        if (w == 0) continue;
        s *= w;
        k.odd = ka.odd | kb.odd;
      } else if (ob == Bundle::D) {
        k.ops = ka.ops;
        k.ops.insert(k.ops.end(), kb.ops.begin(), kb.ops.end());
      }
      Poly c = ca * cb;
      out.add(k, s < 0 ? -c : c);
    }
  return out;
}

Section fw_wedge(const Section& u, const Section& v) {
  if (u.bundle == Bundle::D || v.bundle == Bundle::D || u.bundle == Bundle::J || v.bundle == Bundle::J)
    throw Rejected("fw_wedge: expects polyvectors or forms");
  return fw_mul(u, v);
}

Section fw_cup(const Section& p, const Section& q) {
  require(p, Bundle::D, "fw_cup");
  require(q, Bundle::D, "fw_cup");
  Section a = p, b = q;
  a.bundle = b.bundle = Bundle::D;
  return fw_mul(a, b);
}

Section fw_schouten(const Section& u0, const Section& v0) {
  const Section u = as_polyvector(u0), v = as_polyvector(v0);
  Section out(Bundle::T, sat(std::min(static_cast<long>(u.min_y_degree()) + v.cap,
                                      static_cast<long>(v.min_y_degree()) + u.cap) - 1));
  for (auto& [ku, cu] : u.terms) {
    const int p = popcount(ku.odd) - 1;
    for (auto& [kv, cv] : v.terms) {
      int xs = xi_sign(ku.xi, kv.xi, p);
      if (xs == 0) continue;
      const Poly c = cu * cv;
      FKey k;
      k.xi = ku.xi | kv.xi;
      // (u d<-/dtheta_i)(d/dy^i v)
      for (int i : mask_indices(ku.odd)) {
        if (kv.y.e[i] == 0) continue;
        int s = xs * right_derivative_sign(ku.odd, i);
        Mask rest = ku.odd & ~(Mask{1} << i);
        int w = wedge_sign(rest, kv.odd);
        if (w == 0) continue;
        k.odd = rest | kv.odd;
        k.y = plus(ku.y, kv.y.without(i));
        out.add(k, c * Q(s * w * kv.y.e[i]));
      }
      // -(d/dy^i u)(d->/dtheta_i v)
      for (int i : mask_indices(kv.odd)) {
        if (ku.y.e[i] == 0) continue;
        int s = -xs * left_derivative_sign(kv.odd, i);
        Mask rest = kv.odd & ~(Mask{1} << i);
        int w = wedge_sign(ku.odd, rest);
        if (w == 0) continue;
        k.odd = ku.odd | rest;
        k.y = plus(ku.y.without(i), kv.y);
        out.add(k, c * Q(s * w * ku.y.e[i]));
      }
    }
  }
  return out;
}

Section fw_de_rham(const Section& w) {
  require(w, Bundle::A, "fw_de_rham");
  Section out(Bundle::A, w.cap - 1);
  for (auto& [kw, c] : w.terms)
    for (int i = 0; i < kMaxRank; ++i) {
      if (kw.y.e[i] == 0) continue;
      int s = wedge_sign(Mask{1} << i, kw.odd);
      if (s == 0) continue;
      if (popcount(kw.xi) & 1) s = -s;
      FKey k = kw;
      k.y = kw.y.without(i);
      k.odd = kw.odd | (Mask{1} << i);
      out.add(k, c * Q(s * kw.y.e[i]));
    }
  return out;
}

Section fw_contract(const Section& u0, const Section& w) {
  const Section u = as_polyvector(u0);
  require(w, Bundle::A, "fw_contract");
  Section out(Bundle::A, sat(std::min(static_cast<long>(u.min_y_degree()) + w.cap,
                                      static_cast<long>(w.min_y_degree()) + u.cap)));
  for (auto& [ku, cu] : u.terms) {
    auto idx = mask_indices(ku.odd);
    for (auto& [kw, cw] : w.terms) {
      int s = xi_sign(ku.xi, kw.xi, static_cast<int>(idx.size()));
      if (s == 0) continue;
      Mask m = kw.odd;
      for (auto it = idx.rbegin(); it != idx.rend() && s != 0; ++it) {
        s *= left_derivative_sign(m, *it);
        m &= ~(Mask{1} << *it);
      }
      if (s == 0) continue;
      FKey k;
      k.xi = ku.xi | kw.xi;
      k.y = plus(ku.y, kw.y);
      k.odd = m;
      Poly c = cu * cw;
      out.add(k, s < 0 ? -c : c);
    }
  }
  return out;
}

Section fw_lie(const Section& u0, const Section& w) {
  const Section u = as_polyvector(u0);
  const Section dw = fw_de_rham(w);
  Section out(Bundle::A, kExact);
  for (auto& [ku, cu] : u.terms) {
    Section term(Bundle::T, u.cap);
    term.terms.emplace(ku, cu);
    out += fw_de_rham(fw_contract(term, w));
    Section second = fw_contract(term, dw);
    if ((popcount(ku.odd) - 1) % 2 != 0) second *= Q(-1);
    out += second;
  }
  return out;
}

Section fw_multiplication(int cap) {
  Section m(Bundle::D, cap);
  FKey k;
  k.ops = {YMono{}, YMono{}};
  m.add(k, Poly(1));
  return m;
}

Section fw_bullet(const Section& p, const Section& q) {
  require(p, Bundle::D, "fw_bullet");
  require(q, Bundle::D, "fw_bullet");
  Section out(Bundle::D, sat(std::min(static_cast<long>(p.cap),
                                      static_cast<long>(q.cap) + p.min_y_degree() - p.max_op_order())));
  for (auto& [kp, cp] : p.terms) {
    const int pd = slots(kp) - 1;
    for (auto& [kq, cq] : q.terms) {
      const int qd = slots(kq) - 1;
      const int xs = xi_sign(kp.xi, kq.xi, pd);
      if (xs == 0) continue;
      const Poly c = cp * cq;
      for (int i = 0; i <= pd; ++i) {
        const int s = ((i * qd) & 1) ? -xs : xs;
        for (auto& [w, parts] : splits(kp.ops[i], qd + 2)) {
          Q f = falling(kq.y, parts[0]);
          if (f == 0) continue;
          FKey k;
          k.xi = kp.xi | kq.xi;
          k.y = plus(kp.y, minus(kq.y, parts[0]));
          k.ops.assign(kp.ops.begin(), kp.ops.begin() + i);
          for (int j = 0; j <= qd; ++j) k.ops.push_back(plus(kq.ops[j], parts[j + 1]));
          k.ops.insert(k.ops.end(), kp.ops.begin() + i + 1, kp.ops.end());
          out.add(k, c * (w * f * s));
        }
      }
    }
  }
  return out;
}

Section fw_gerstenhaber(const Section& p, const Section& q) {
  require(p, Bundle::D, "fw_gerstenhaber");
  require(q, Bundle::D, "fw_gerstenhaber");
  Section out(Bundle::D, kExact);
  auto ps = by_total_degree(p), qs = by_total_degree(q);
  for (auto& [dp, a] : ps)
    for (auto& [dq, b] : qs) {
      out += fw_bullet(a, b);
      Section back = fw_bullet(b, a);
      if (!((dp * dq) & 1)) back *= Q(-1);
      out += back;
    }
  int cap = sat(std::min({static_cast<long>(p.cap), static_cast<long>(q.cap),
                          static_cast<long>(q.cap) + p.min_y_degree() - p.max_op_order(),
                          static_cast<long>(p.cap) + q.min_y_degree() - q.max_op_order()}));
  return out.truncated(cap);
}

Section fw_cochain_d(const Section& p) { return fw_gerstenhaber(fw_multiplication(), p); }

Section fw_compose(const Section& p, const Section& q) {
  require(p, Bundle::D, "fw_compose");
  require(q, Bundle::D, "fw_compose");
  Section out(Bundle::D, sat(std::min(static_cast<long>(p.cap),
                                      static_cast<long>(q.cap) + p.min_y_degree() - p.max_op_order())));
  for (auto& [kp, cp] : p.terms) {
    if (slots(kp) != 1) throw Rejected("fw_compose: unary operators only");
    for (auto& [kq, cq] : q.terms) {
      if (slots(kq) != 1) throw Rejected("fw_compose: unary operators only");
      const int xs = wedge_sign(kp.xi, kq.xi);
      if (xs == 0) continue;
      const Poly c = cp * cq;
      for (auto& [w, parts] : splits(kp.ops[0], 2)) {
        Q f = falling(kq.y, parts[0]);
        if (f == 0) continue;
        FKey k;
        k.xi = kp.xi | kq.xi;
        k.y = plus(kp.y, minus(kq.y, parts[0]));
        k.ops = {plus(parts[1], kq.ops[0])};
        out.add(k, c * (w * f * xs));
      }
    }
  }
  return out;
}

Section as_operator(const Section& t0) {
  const Section t = as_polyvector(t0);
  Section out(Bundle::D, t.cap);
  for (auto& [kt, c] : t.terms) {
    FKey k;
    k.xi = kt.xi;
    k.y = kt.y;
    const int n = popcount(kt.odd);
    if (n > 1) throw Rejected("as_operator: polyvector of degree > 0");
    if (n == 1) k.ops = {YMono::gen(mask_indices(kt.odd)[0])};
    out.add(k, c);
  }
  return out;
}

Section as_multiplication(const Section& f) {
  Section out(Bundle::D, f.cap);
  for (auto& [kf, c] : f.terms) {
    if (kf.odd != 0 || !kf.ops.empty()) throw Rejected("as_multiplication: expects a fiber function");
    FKey k;
    k.xi = kf.xi;
    k.y = kf.y;
    k.ops = {YMono{}};
    out.add(k, c);
  }
  return out;
}

Section fw_chain_action(const Section& p, const Section& c) {
  require(p, Bundle::D, "fw_chain_action");
  require(c, Bundle::J, "fw_chain_action");
  Section out(Bundle::J, sat(std::min(static_cast<long>(p.cap),
                                      static_cast<long>(c.cap) - p.max_op_order())));
  for (auto& [kp, cp] : p.terms) {
    const int k = slots(kp) - 1;
    for (auto& [kc, cc] : c.terms) {
      const int l = slots(kc) - 1;
      const int xs = xi_sign(kp.xi, kc.xi, k);
      if (xs == 0) continue;
      const Poly coef = cp * cc;
      FKey nk;
      nk.xi = kp.xi | kc.xi;
      if (k < 0) {
        for (int i = 0; i <= l + 1; ++i) {
          nk.ops = kc.ops;
          nk.ops.insert(nk.ops.begin() + i, kp.y);
          out.add(nk, coef * Q((i & 1) ? -xs : xs));
        }
        continue;
      }
      if (k > l) continue;
      Q f;
      YMono merged;
      for (int i = 0; i <= l - k; ++i) {
        if (!apply_op(kp, kc.ops, static_cast<std::size_t>(i), f, merged)) continue;
        nk.ops.assign(kc.ops.begin(), kc.ops.begin() + i);
        nk.ops.push_back(merged);
        nk.ops.insert(nk.ops.end(), kc.ops.begin() + i + k + 1, kc.ops.end());
        out.add(nk, coef * (f * (((i * k) & 1) ? -xs : xs)));
      }
      for (int j = 1; j <= k; ++j) {
        if (!apply_op(kp, kc.ops, static_cast<std::size_t>(l + 1 - j), f, merged)) continue;
        nk.ops = {merged};
        nk.ops.insert(nk.ops.end(), kc.ops.begin() + (k - j + 1), kc.ops.begin() + (l - j + 1));
        out.add(nk, coef * (f * (((l * j) & 1) ? -xs : xs)));
      }
    }
  }
  return out;
}

Section fw_chain_b(const Section& c) { return fw_chain_action(fw_multiplication(), c); }

Section fw_pair(const Section& p, const Section& c) {
  require(p, Bundle::D, "fw_pair");
  require(c, Bundle::J, "fw_pair");
  Section out(Bundle::S, sat(std::min(static_cast<long>(p.cap),
                                      static_cast<long>(c.cap) - p.max_op_order())));
  for (auto& [kp, cp] : p.terms)
    for (auto& [kc, cc] : c.terms) {
      if (kp.ops.size() != kc.ops.size()) continue;
      const int xs = xi_sign(kp.xi, kc.xi, slots(kp) - 1);
      if (xs == 0) continue;
      Q f;
      FKey k;
      if (!apply_op(kp, kc.ops, 0, f, k.y)) continue;
      k.xi = kp.xi | kc.xi;
      out.add(k, cp * cc * (f * xs));
    }
  return out;
}

Section fw_chain(const std::vector<Section>& groups, int cap) {
  Section acc(Bundle::J, cap);
  FKey unit;
  acc.terms.emplace(unit, Poly(1));
  for (auto& g : groups) {
    require(g, Bundle::S, "fw_chain");
    Section next(Bundle::J, std::min(acc.cap, g.cap));
    for (auto& [ka, ca] : acc.terms)
      for (auto& [kg, cg] : g.terms) {
        int s = wedge_sign(ka.xi, kg.xi);
        if (s == 0) continue;
        FKey k;
        k.xi = ka.xi | kg.xi;
        k.ops = ka.ops;
        k.ops.push_back(kg.y);
        Poly c = ca * cg;
        next.add(k, s < 0 ? -c : c);
      }
    acc = std::move(next);
  }
  return acc;
}

Section vf_act(const Section& v0, const Section& s) {
  const Section v = as_polyvector(v0);
  for (auto& [kv, c] : v.terms)
    if (popcount(kv.odd) != 1) throw Rejected("vf_act: expects fiber vector fields");
  if (s.bundle == Bundle::T) return fw_schouten(v, s);
  if (s.bundle == Bundle::D) return fw_gerstenhaber(as_operator(v), s);

  const long dv = v.min_y_degree(), ds = s.min_y_degree();
  long cap = s.cap + dv - 1;
  cap = std::min(cap, s.bundle == Bundle::A ? v.cap + ds - 1 : static_cast<long>(v.cap));
  Section out(s.bundle, sat(cap));
  for (auto& [kv, cv] : v.terms) {
    const int kk = mask_indices(kv.odd)[0];
    for (auto& [ks, cs] : s.terms) {
      const int xs = wedge_sign(kv.xi, ks.xi);
      if (xs == 0) continue;
      const Poly c = cv * cs;
      FKey k = ks;
      k.xi = kv.xi | ks.xi;
      if (s.bundle == Bundle::J) {
        for (std::size_t m = 0; m < ks.ops.size(); ++m) {
          if (ks.ops[m].e[kk] == 0) continue;
          k.ops = ks.ops;
          k.ops[m] = plus(ks.ops[m].without(kk), kv.y);
          out.add(k, c * Q(xs * ks.ops[m].e[kk]));
        }
        continue;
      }
      if (ks.y.e[kk] > 0) {
        k.y = plus(ks.y.without(kk), kv.y);
        k.odd = ks.odd;
        out.add(k, c * Q(xs * ks.y.e[kk]));
      }
      if (s.bundle != Bundle::A || !(ks.odd >> kk & 1u)) continue;
      // L_X dy^kk = d(X^kk)
      for (int p = 0; p < kMaxRank; ++p) {
        if (kv.y.e[p] == 0) continue;
        Mask rest = ks.odd & ~(Mask{1} << kk);
        if (rest >> p & 1u) continue;
        Mask m = rest | (Mask{1} << p);
        int sg = xs * left_derivative_sign(ks.odd, kk) * left_derivative_sign(m, p);
        k.odd = m;
        k.y = plus(kv.y.without(p), ks.y);
        out.add(k, c * Q(sg * kv.y.e[p]));
      }
    }
  }
  return out;
}

}  // namespace lafed
