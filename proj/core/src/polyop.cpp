#include "lafed/polyop.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "lafed/errors.hpp"

namespace lafed {

EPolyOp EPolyOp::function(const Poly& f) {
  EPolyOp p;
  p.add({}, f);
  return p;
}

EPolyOp EPolyOp::unit(int slots) { return tuple(Tuple(slots), Poly(1)); }

EPolyOp EPolyOp::tuple(const Tuple& t, const Poly& f) {
  EPolyOp p;
  p.add(t, f);
  return p;
}

EPolyOp EPolyOp::from_pbw(const PbwElement& e) {
  EPolyOp p;
  for (auto& [m, f] : e.terms) p.add({m}, f);
  return p;
}

namespace {

// Adds coef * (s_0 (x) ... (x) s_k) to out, moving every coefficient to the front.
void tensor_into(EPolyOp& out, const Poly& coef, const std::vector<const PbwElement*>& slots) {
  Tuple t(slots.size());
  std::function<void(std::size_t, const Poly&)> rec = [&](std::size_t s, const Poly& c) {
    if (s == slots.size()) {
      out.add(t, c);
      return;
    }
    for (auto& [m, f] : slots[s]->terms) {
      t[s] = m;
      rec(s + 1, c * f);
    }
  };
  rec(0, coef);
}

}  // namespace

EPolyOp EPolyOp::tensor(const std::vector<PbwElement>& slots) {
  EPolyOp out;
  std::vector<const PbwElement*> ptrs;
  for (auto& s : slots) ptrs.push_back(&s);
  tensor_into(out, Poly(1), ptrs);
  return out;
}

void EPolyOp::add(const Tuple& t, const Poly& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = terms.try_emplace(t, f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) terms.erase(it);
  }
}

EPolyOp& EPolyOp::operator+=(const EPolyOp& o) {
  for (auto& [t, f] : o.terms) add(t, f);
  return *this;
}

EPolyOp& EPolyOp::operator-=(const EPolyOp& o) {
  for (auto& [t, f] : o.terms) add(t, -f);
  return *this;
}

EPolyOp& EPolyOp::operator*=(const Q& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [t, f] : terms) f *= c;
  return *this;
}

int EPolyOp::degree() const {
  if (terms.empty()) throw std::logic_error("degree of zero operator");
  int d = static_cast<int>(terms.begin()->first.size()) - 1;
  for (auto& [t, f] : terms)
    if (static_cast<int>(t.size()) - 1 != d) throw std::logic_error("inhomogeneous operator");
  return d;
}

int EPolyOp::order() const {
  int d = -1;
  for (auto& [t, f] : terms) d = std::max(d, tuple_order(t));
  return d;
}

EPolyOp EPolyOp::times(const Poly& g) const {
  EPolyOp out;
  for (auto& [t, f] : terms) out.add(t, g * f);
  return out;
}

std::string EPolyOp::str(int n) const {
  if (terms.empty()) return "0";
  std::string out;
  for (auto& [t, f] : terms) {
    if (!out.empty()) out += " + ";
    out += "(" + f.str(n) + ")";
    for (std::size_t s = 0; s < t.size(); ++s) out += (s ? "(x)" : "") + to_string(t[s]);
  }
  return out;
}

EPolyOp slot_product(const Enveloping& U, const EPolyOp& x, const EPolyOp& y) {
  EPolyOp out;
  for (auto& [tx, fx] : x.terms)
    for (auto& [ty, fy] : y.terms) {
      if (tx.size() != ty.size()) throw Rejected("slot_product: slot count mismatch");
      if (tx.empty()) {
        out.add({}, fx * fy);
        continue;
      }
      std::vector<PbwElement> prods;
      prods.reserve(tx.size());
      prods.push_back(U.mono_times(tx[0], PbwElement::mono(ty[0], fy)));
      for (std::size_t s = 1; s < tx.size(); ++s) prods.push_back(U.mono_mono(tx[s], ty[s]));
      std::vector<const PbwElement*> ptrs;
      for (auto& p : prods) ptrs.push_back(&p);
      tensor_into(out, fx, ptrs);
    }
  return out;
}

EPolyOp insert_product(const Enveloping& U, const EPolyOp& x, const EPolyOp& p, int at) {
  EPolyOp out;
  for (auto& [tx, fx] : x.terms)
    for (auto& [tp, fp] : p.terms) {
      if (tp.empty()) {
        out.add(tx, fx * fp);
        continue;
      }
      if (at < 0 || at + tp.size() > tx.size()) throw Rejected("insert_product: block out of range");
      std::vector<PbwElement> prods;
      prods.reserve(tx.size());
      for (std::size_t s = 0; s < tx.size(); ++s) {
        if (static_cast<int>(s) == at) prods.push_back(U.mono_times(tx[s], PbwElement::mono(tp[0], fp)));
        else if (static_cast<int>(s) > at && s < at + tp.size()) prods.push_back(U.mono_mono(tx[s], tp[s - at]));
        else prods.push_back(PbwElement::mono(tx[s]));
      }
      std::vector<const PbwElement*> ptrs;
      for (auto& e : prods) ptrs.push_back(&e);
      tensor_into(out, fx, ptrs);
    }
  return out;
}

EPolyOp delta_at(const Enveloping& U, const EPolyOp& p, int slot, int k) {
  EPolyOp out;
  for (auto& [t, f] : p.terms) {
    if (slot < 0 || slot >= static_cast<int>(t.size())) throw Rejected("delta_at: slot out of range");
    for (auto& [w, split] : U.delta(t[slot], k)) {
      Tuple nt(t.begin(), t.begin() + slot);
      nt.insert(nt.end(), split.begin(), split.end());
      nt.insert(nt.end(), t.begin() + slot + 1, t.end());
      out.add(nt, f * w);
    }
  }
  return out;
}

EPolyOp coproduct(const Enveloping& U, const PbwElement& p) { return delta_at(U, EPolyOp::from_pbw(p), 0, 1); }

namespace {

std::map<int, EPolyOp> components(const EPolyOp& p) {
  std::map<int, EPolyOp> out;
  for (auto& [t, f] : p.terms) out[static_cast<int>(t.size()) - 1].add(t, f);
  return out;
}

// Single term f*tp bullet homogeneous q, accumulated into out.
void bullet_term(const Enveloping& U, const Tuple& tp, const Poly& fp, const EPolyOp& q, int qdeg, EPolyOp& out) {
  const int p = static_cast<int>(tp.size()) - 1;
  if (p < 0) return;
  if (qdeg < 0) {
    for (auto& [tq, g] : q.terms)
      for (int i = 0; i <= p; ++i) {
        Poly h = U.anchor_apply(tp[i], g);
        if (h.is_zero()) continue;
        Tuple nt(tp.begin(), tp.begin() + i);
        nt.insert(nt.end(), tp.begin() + i + 1, tp.end());
        out.add(nt, (i % 2 ? -fp : fp) * h);
      }
    return;
  }
  for (int i = 0; i <= p; ++i) {
    const bool neg = (i * qdeg) % 2 != 0;
    for (auto& [w, split] : U.delta(tp[i], qdeg))
      for (auto& [tq, g] : q.terms) {
        std::vector<PbwElement> slots;
        slots.reserve(p + qdeg + 1);
        for (int s = 0; s < i; ++s) slots.push_back(PbwElement::mono(tp[s]));
        slots.push_back(U.mono_times(split[0], PbwElement::mono(tq[0], g)));
        for (int s = 1; s <= qdeg; ++s) slots.push_back(U.mono_mono(split[s], tq[s]));
        for (int s = i + 1; s <= p; ++s) slots.push_back(PbwElement::mono(tp[s]));
        std::vector<const PbwElement*> ptrs;
        for (auto& e : slots) ptrs.push_back(&e);
        Poly c = fp * w;
        tensor_into(out, neg ? -c : c, ptrs);
      }
  }
}

}  // namespace

EPolyOp bullet(const Enveloping& U, const EPolyOp& p, const EPolyOp& q) {
  EPolyOp out;
  auto qc = components(q);
  for (auto& [tp, fp] : p.terms)
    for (auto& [qd, qq] : qc) bullet_term(U, tp, fp, qq, qd, out);
  return out;
}

EPolyOp gerstenhaber(const Enveloping& U, const EPolyOp& p, const EPolyOp& q) {
  EPolyOp out;
  auto pc = components(p), qc = components(q);
  for (auto& [pd, pp] : pc)
    for (auto& [qd, qq] : qc) {
      out += bullet(U, pp, qq);
      EPolyOp back = bullet(U, qq, pp);
      if ((pd * qd) % 2 == 0) out -= back;
      else out += back;
    }
  return out;
}

EPolyOp cochain_d(const Enveloping& U, const EPolyOp& p) { return gerstenhaber(U, EPolyOp::unit(2), p); }

EPolyOp cup(const EPolyOp& p, const EPolyOp& q) {
  EPolyOp out;
  for (auto& [tp, fp] : p.terms)
    for (auto& [tq, fq] : q.terms) {
      Tuple t = tp;
      t.insert(t.end(), tq.begin(), tq.end());
      out.add(t, fp * fq);
    }
  return out;
}

EPolyOp transpose(const EPolyOp& p) {
  EPolyOp out;
  for (auto& [t, f] : p.terms) {
    if (t.empty()) {
      out.add(t, f);
      continue;
    }
    Tuple nt;
    nt.push_back(t.back());
    nt.insert(nt.end(), t.begin(), t.end() - 1);
    out.add(nt, f);
  }
  return out;
}

Poly evaluate(const Enveloping& U, const EPolyOp& p, const std::vector<Poly>& args) {
  Poly out;
  for (auto& [t, f] : p.terms) {
    if (t.size() != args.size()) throw Rejected("evaluate: arity mismatch");
    Poly v = f;
    for (std::size_t s = 0; s < t.size() && !v.is_zero(); ++s) v = v * U.anchor_apply(t[s], args[s]);
    out += v;
  }
  return out;
}

std::vector<UMono> enumerate_monos(int r, int cap) {
  std::vector<UMono> out;
  UMono m;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == r) {
      out.push_back(m);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m.e[i] = static_cast<std::uint8_t>(e);
      rec(i + 1, left - e);
    }
    m.e[i] = 0;
  };
  if (cap >= 0) rec(0, cap);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Tuple> enumerate_tuples(int r, int slots, int cap) {
  std::vector<Tuple> out;
  auto monos = enumerate_monos(r, cap);
  Tuple t(slots);
  std::function<void(int, int)> rec = [&](int s, int left) {
    if (s == slots) {
      out.push_back(t);
      return;
    }
    for (auto& m : monos) {
      int o = m.order();
      if (o > left) continue;
      t[s] = m;
      rec(s + 1, left - o);
    }
  };
  if (cap >= 0) rec(0, cap);
  return out;
}

}  // namespace lafed
