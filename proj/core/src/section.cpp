#include "lafed/section.hpp"

#include <algorithm>

#include "lafed/errors.hpp"

namespace lafed {

const char* bundle_name(Bundle b) {
  switch (b) {
    case Bundle::S: return "S";
    case Bundle::A: return "A";
    case Bundle::T: return "T";
    case Bundle::D: return "D";
    case Bundle::J: return "J";
  }
  return "?";
}

int y_degree(Bundle b, const FKey& k) {
  if (b != Bundle::J) return k.y.order();
  int d = 0;
  for (auto& g : k.ops) d = std::max(d, g.order());
  return d;
}

int payload_degree(Bundle b, const FKey& k) {
  switch (b) {
    case Bundle::S: return -1;
    case Bundle::A: return popcount(k.odd);
    case Bundle::T: return popcount(k.odd) - 1;
    case Bundle::D:
    case Bundle::J: return static_cast<int>(k.ops.size()) - 1;
  }
  return 0;
}

int combine_caps(int a, int b) { return std::min({a, b, kExact}); }

Section Section::function(const Poly& f, int cap) {
  Section s(Bundle::S, cap);
  s.add(FKey{}, f);
  return s;
}

Section Section::y_mono(const YMono& a, const Poly& f, int cap) {
  Section s(Bundle::S, cap);
  FKey k;
  k.y = a;
  s.add(k, f);
  return s;
}

Section Section::d_dy(int i, int cap) {
  Section s(Bundle::T, cap);
  FKey k;
  k.odd = Mask{1} << i;
  s.add(k, Poly(1));
  return s;
}

void Section::add(const FKey& k, const Poly& c) {
  if (c.is_zero()) return;
  if (y_degree(bundle, k) > cap) return;
  auto it = terms.find(k);
  if (it == terms.end()) {
    terms.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

namespace {

void check_bundle(const Section& a, const Section& b) {
  if (a.bundle != b.bundle) throw Rejected("section bundle mismatch");
}

void lower_cap(Section& s, int cap) {
  if (cap >= s.cap) return;
  s.cap = cap;
  for (auto it = s.terms.begin(); it != s.terms.end();) {
    if (y_degree(s.bundle, it->first) > cap) it = s.terms.erase(it);
    else ++it;
  }
}

}  // namespace

Section& Section::operator+=(const Section& o) {
  if (o.terms.empty() && terms.empty()) {
    bundle = o.bundle;
  } else if (!o.terms.empty() && !terms.empty()) {
    check_bundle(*this, o);
  } else if (terms.empty()) {
    bundle = o.bundle;
  }
  lower_cap(*this, o.cap);
  for (auto& [k, c] : o.terms) add(k, c);
  return *this;
}

Section& Section::operator-=(const Section& o) {
  Section neg = o;
  neg *= Q(-1);
  return *this += neg;
}

Section& Section::operator*=(const Q& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [k, v] : terms) v *= c;
  return *this;
}

Section Section::times(const Poly& f) const {
  Section out(bundle, cap);
  for (auto& [k, c] : terms) out.add(k, c * f);
  return out;
}

Section Section::truncated(int m) const {
  Section out = *this;
  lower_cap(out, m);
  return out;
}

int Section::min_y_degree() const {
  int d = kExact;
  for (auto& [k, c] : terms) d = std::min(d, y_degree(bundle, k));
  return d;
}

int Section::max_op_order() const {
  if (bundle != Bundle::D) return 0;
  int d = 0;
  for (auto& [k, c] : terms)
    for (auto& a : k.ops) d = std::max(d, a.order());
  return d;
}

Section Section::xi_part(int degree) const {
  Section out(bundle, cap);
  for (auto& [k, c] : terms)
    if (popcount(k.xi) == degree) out.terms.emplace(k, c);
  return out;
}

Section Section::payload_part(int degree) const {
  Section out(bundle, cap);
  for (auto& [k, c] : terms)
    if (payload_degree(bundle, k) == degree) out.terms.emplace(k, c);
  return out;
}

namespace {

std::string ymono_str(const YMono& a, const char* var) {
  std::string s;
  for (int i = 0; i < kMaxRank; ++i)
    if (a.e[i]) {
      s += var + std::to_string(i + 1);
      if (a.e[i] > 1) s += "^" + std::to_string(a.e[i]);
    }
  return s;
}

}  // namespace

std::string Section::str(int n) const {
  if (terms.empty()) return "0";
  std::string out;
  for (auto& [k, c] : terms) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str(n) + ")";
    for (int i : mask_indices(k.xi)) out += "xi" + std::to_string(i + 1);
    if (bundle == Bundle::J) {
      out += "[";
      for (std::size_t g = 0; g < k.ops.size(); ++g) {
        if (g) out += "|";
        out += ymono_str(k.ops[g], "y");
      }
      out += "]";
      continue;
    }
    out += ymono_str(k.y, "y");
    if (bundle == Bundle::A)
      for (int i : mask_indices(k.odd)) out += "dy" + std::to_string(i + 1);
    if (bundle == Bundle::T)
      for (int i : mask_indices(k.odd)) out += "D" + std::to_string(i + 1);
    if (bundle == Bundle::D) {
      out += "<";
      for (std::size_t g = 0; g < k.ops.size(); ++g) {
        if (g) out += ",";
        out += ymono_str(k.ops[g], "D");
      }
      out += ">";
    }
  }
  return out;
}

bool agree_to(const Section& a, const Section& b, int m) {
  if (a.bundle != b.bundle && !(a.is_zero() || b.is_zero())) return false;
  Section x = a, y = b;
  x.cap = y.cap = kExact;
  if (x.is_zero()) x.bundle = y.bundle;
  Section d = x - y;
  for (auto& [k, c] : d.terms)
    if (y_degree(d.bundle, k) <= m) return false;
  return true;
}

}  // namespace lafed
