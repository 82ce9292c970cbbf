#include "lafed/poly.hpp"

#include <stdexcept>

namespace lafed {

Q parse_rational(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument(why + " at offset " + std::to_string(i));
  };
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  auto digits = [&](Z& out) {
    std::size_t start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == start) fail("expected digit");
    out = Z(std::string(text.substr(start, i - start)));
  };
  Z num, den = 1;
  digits(num);
  if (i < text.size() && text[i] == '/') {
    ++i;
    std::size_t at = i;
    digits(den);
    if (den == 0) {
      i = at;
      fail("zero denominator");
    }
  }
  if (i != text.size()) fail("unexpected character");
  Q q(num, den);
  q.canonicalize();
  return neg ? Q(-q) : q;
}

Poly Poly::var(int a) {
  XMono m;
  m.e[a] = 1;
  return monomial(m, 1);
}

Poly Poly::monomial(const XMono& m, const Q& c) {
  Poly p;
  p.add_term(m, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (auto& [m, c] : t_) d = std::max(d, m.degree());
  return d;
}

Q Poly::constant_term() const {
  auto it = t_.find(XMono{});
  return it == t_.end() ? Q(0) : it->second;
}

void Poly::add_term(const XMono& m, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Q& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [m, v] : t_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, v] : r.t_) v = -v;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (auto& [ma, ca] : a.t_)
    for (auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::derivative(int a) const {
  Poly r;
  for (auto& [m, c] : t_) {
    if (m.e[a] == 0) continue;
    XMono d = m;
    d.e[a] -= 1;
    r.add_term(d, c * m.e[a]);
  }
  return r;
}

Poly Poly::truncated(int cap) const {
  Poly r;
  for (auto& [m, c] : t_)
    if (m.degree() <= cap) r.t_.emplace(m, c);
  return r;
}

std::string Poly::str(int n) const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [m, c] = *it;
    Q a = abs(c);
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    first = false;
    bool unit = a == 1 && m.degree() > 0;
    if (!unit) out += a.get_str();
    for (int i = 0; i < n; ++i) {
      if (m.e[i] == 0) continue;
      if (!out.empty() && out.back() != ' ' && out.back() != '-') out += "*";
      out += "x" + std::to_string(i + 1);
      if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
    }
  }
  return out;
}

}  // namespace lafed
