#include "lafed/pbw.hpp"

#include <deque>

namespace lafed {

std::vector<int> UMono::word() const {
  std::vector<int> w;
  for (int i = 0; i < kMaxRank; ++i)
    for (int k = 0; k < e[i]; ++k) w.push_back(i);
  return w;
}

std::string to_string(const UMono& m) {
  std::string s;
  for (int i = 0; i < kMaxRank; ++i) {
    if (!m.e[i]) continue;
    s += "e" + std::to_string(i + 1);
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

PbwElement PbwElement::function(const Poly& f) {
  PbwElement p;
  p.add(UMono{}, f);
  return p;
}

PbwElement PbwElement::gen(int i) { return mono(UMono::gen(i)); }

PbwElement PbwElement::mono(const UMono& m, const Poly& f) {
  PbwElement p;
  p.add(m, f);
  return p;
}

int PbwElement::order() const {
  int d = -1;
  for (auto& [m, f] : terms) d = std::max(d, m.order());
  return d;
}

void PbwElement::add(const UMono& m, const Poly& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = terms.try_emplace(m, f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) terms.erase(it);
  }
}

PbwElement& PbwElement::operator+=(const PbwElement& o) {
  for (auto& [m, f] : o.terms) add(m, f);
  return *this;
}

PbwElement& PbwElement::operator-=(const PbwElement& o) {
  for (auto& [m, f] : o.terms) add(m, -f);
  return *this;
}

PbwElement& PbwElement::operator*=(const Q& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [m, f] : terms) f *= c;
  return *this;
}

std::string PbwElement::str(int n) const {
  if (terms.empty()) return "0";
  std::string out;
  for (auto& [m, f] : terms) {
    if (!out.empty()) out += " + ";
    out += "(" + f.str(n) + ")" + to_string(m);
  }
  return out;
}

const PbwElement& Enveloping::gen_mono(int i, const UMono& m) const {
  auto key = std::make_pair(i, m);
  if (auto it = gen_cache_.find(key); it != gen_cache_.end()) return it->second;
  PbwElement out;
  int j = m.first();
  if (j < 0 || i <= j) {
    out.add(m.with(i), Poly(1));
  } else {
    // e_i e_j e^m' = e_j (e_i e^m') + c_ij^k e_k e^m'
    UMono rest = m.without(j);
    out = gen_times(j, gen_mono(i, rest));
    for (int k = 0; k < r(); ++k) {
      const Poly& c = chart_.c(i, j, k);
      if (c.is_zero()) continue;
      for (auto& [mm, f] : gen_mono(k, rest).terms) out.add(mm, c * f);
    }
  }
  return gen_cache_.emplace(key, std::move(out)).first->second;
}

PbwElement Enveloping::gen_times(int i, const PbwElement& p) const {
  PbwElement out;
  for (auto& [m, f] : p.terms) {
    for (auto& [mm, g] : gen_mono(i, m).terms) out.add(mm, f * g);
    out.add(m, chart_.rho(i, f));
  }
  return out;
}

PbwElement Enveloping::mono_times(const UMono& m, const PbwElement& p) const {
  PbwElement out = p;
  auto w = m.word();
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = gen_times(*it, out);
  return out;
}

const PbwElement& Enveloping::mono_mono(const UMono& a, const UMono& b) const {
  auto key = std::make_pair(a, b);
  if (auto it = mono_cache_.find(key); it != mono_cache_.end()) return it->second;
  return mono_cache_.emplace(key, mono_times(a, PbwElement::mono(b))).first->second;
}

PbwElement Enveloping::mul(const PbwElement& a, const PbwElement& b) const {
  PbwElement out;
  for (auto& [ma, fa] : a.terms) {
    PbwElement t = mono_times(ma, b);
    for (auto& [m, g] : t.terms) out.add(m, fa * g);
  }
  return out;
}

Poly Enveloping::anchor_apply(const UMono& m, const Poly& f) const {
  Poly out = f;
  auto w = m.word();
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = chart_.rho(*it, out);
  return out;
}

Poly Enveloping::anchor_apply(const PbwElement& p, const Poly& f) const {
  Poly out;
  for (auto& [m, g] : p.terms) out += g * anchor_apply(m, f);
  return out;
}

const std::vector<Split>& Enveloping::delta(const UMono& m, int k) const {
  auto key = std::make_pair(m, k);
  if (auto it = delta_cache_.find(key); it != delta_cache_.end()) return it->second;
  std::vector<Split> out;
  if (k == 0) {
    out.push_back({Q(1), {m}});
  } else {
    // Delta^(k) = (Delta (x) 1^(k-1)) Delta^(k-1): split slot 0 of each term.
    for (auto& [w, slots] : delta(m, k - 1)) {
      const UMono& head = slots[0];
      UMono a;
      std::vector<int> sizes(head.e.begin(), head.e.end());
      // enumerate sub-multisets a <= head with weight prod binom(head_i, a_i)
      std::vector<int> cur(kMaxRank, 0);
      while (true) {
        Q weight = w;
        UMono lo, hi;
        for (int i = 0; i < kMaxRank; ++i) {
          lo.e[i] = static_cast<std::uint8_t>(cur[i]);
          hi.e[i] = static_cast<std::uint8_t>(sizes[i] - cur[i]);
          Z b;
          mpz_bin_uiui(b.get_mpz_t(), sizes[i], cur[i]);
          weight *= b;
        }
        std::vector<UMono> ns;
        ns.reserve(slots.size() + 1);
        ns.push_back(lo);
        ns.push_back(hi);
        for (std::size_t s = 1; s < slots.size(); ++s) ns.push_back(slots[s]);
        out.push_back({weight, std::move(ns)});
        int i = 0;
        while (i < kMaxRank && cur[i] == sizes[i]) cur[i++] = 0;
        if (i == kMaxRank) break;
        ++cur[i];
      }
    }
  }
  return delta_cache_.emplace(key, std::move(out)).first->second;
}

namespace {

struct WordTerm {
  Poly coef;
  std::vector<Letter> w;
};

bool is_normal_pair(const Letter& a, const Letter& b) {
  if (a.gen < 0 && b.gen >= 0) return true;
  if (a.gen >= 0 && b.gen >= 0) return a.gen <= b.gen;
  return false;  // (gen, fn) and (fn, fn)
}

}  // namespace

PbwElement pbw_normalize(const AlgebroidChart& ch, const std::vector<Letter>& word, RewriteOrder order) {
  PbwElement out;
  std::deque<WordTerm> work;
  work.push_back({Poly(1), word});
  while (!work.empty()) {
    WordTerm t = std::move(work.front());
    work.pop_front();
    while (!t.w.empty() && t.w.front().gen < 0) {
      t.coef = t.coef * t.w.front().f;
      t.w.erase(t.w.begin());
    }
    if (t.coef.is_zero()) continue;
    int n = static_cast<int>(t.w.size());
    int p = -1;
    if (order == RewriteOrder::Leftmost) {
      for (int q = 0; q + 1 < n && p < 0; ++q)
        if (!is_normal_pair(t.w[q], t.w[q + 1])) p = q;
    } else {
      for (int q = n - 2; q >= 0 && p < 0; --q)
        if (!is_normal_pair(t.w[q], t.w[q + 1])) p = q;
    }
    if (p < 0) {
      UMono m;
      for (auto& l : t.w) ++m.e[l.gen];
      out.add(m, t.coef);
      continue;
    }
    const Letter a = t.w[p], b = t.w[p + 1];
    auto splice = [&](std::vector<Letter> mid) {
      WordTerm nt{t.coef, {}};
      nt.w.insert(nt.w.end(), t.w.begin(), t.w.begin() + p);
      nt.w.insert(nt.w.end(), mid.begin(), mid.end());
      nt.w.insert(nt.w.end(), t.w.begin() + p + 2, t.w.end());
      work.push_back(std::move(nt));
    };
    if (a.gen < 0 && b.gen < 0) {
      splice({Letter::fn(a.f * b.f)});
    } else if (a.gen >= 0 && b.gen < 0) {
      splice({b, a});
      Poly d = ch.rho(a.gen, b.f);
      if (!d.is_zero()) splice({Letter::fn(d)});
    } else {
      splice({b, a});
      for (int k = 0; k < ch.r(); ++k) {
        const Poly& c = ch.c(a.gen, b.gen, k);
        if (!c.is_zero()) splice({Letter::fn(c), Letter::g(k)});
      }
    }
  }
  return out;
}

}  // namespace lafed
