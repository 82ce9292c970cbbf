#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "lafed/rational.hpp"

namespace lafed {

inline constexpr int kMaxBase = 6;

struct XMono {
  std::array<std::uint8_t, kMaxBase> e{};

  int degree() const {
    int d = 0;
    for (auto v : e) d += v;
    return d;
  }
  XMono operator*(const XMono& o) const {
    XMono r;
    for (int i = 0; i < kMaxBase; ++i) r.e[i] = static_cast<std::uint8_t>(e[i] + o.e[i]);
    return r;
  }
  auto operator<=>(const XMono&) const = default;
};

// Polynomial in the base coordinates x^1..x^n with exact rational coefficients.
class Poly {
 public:
  using Map = std::map<XMono, Q>;

  Poly() = default;
  Poly(int c) { if (c != 0) t_[XMono{}] = c; }  // NOLINT(google-explicit-constructor)
  Poly(const Q& c) { if (c != 0) t_[XMono{}] = c; }  // NOLINT(google-explicit-constructor)

  static Poly var(int a);
  static Poly monomial(const XMono& m, const Q& c);

  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  int degree() const;
  Q constant_term() const;
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == XMono{}); }

  void add_term(const XMono& m, const Q& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Q& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Q& c) { return a *= c; }
  friend Poly operator*(const Q& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly& o) const { return t_ == o.t_; }

  Poly derivative(int a) const;
  // Keep only monomials of total degree <= cap.
  Poly truncated(int cap) const;
  // Evaluate at x = 0.
  Q at_origin() const { return constant_term(); }

  std::string str(int n) const;

 private:
  Map t_;
};

}  // namespace lafed
