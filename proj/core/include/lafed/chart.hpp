#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lafed/poly.hpp"

namespace lafed {

inline constexpr int kMaxRank = 8;

// Lie algebroid on one polynomial chart: frame e_1..e_r, coordinates x^1..x^n,
// anchor rho(e_i) = rho_i^a d/dx^a, bracket [e_i, e_j] = c_ij^k e_k.
// Indices are 0-based in code.
class AlgebroidChart {
 public:
  AlgebroidChart() = default;
  AlgebroidChart(int n, int r);

  int n() const { return n_; }
  int r() const { return r_; }

  const Poly& anchor(int i, int a) const { return anchor_[i * n_ + a]; }
  void set_anchor(int i, int a, Poly p) { anchor_[i * n_ + a] = std::move(p); }

  const Poly& c(int i, int j, int k) const { return c_[(i * r_ + j) * r_ + k]; }
  // Sets c_ij^k and c_ji^k = -c_ij^k.
  void set_c(int i, int j, int k, const Poly& p);

  // rho(e_i) f
  Poly rho(int i, const Poly& f) const;
  bool abelian() const;
  bool structure_constant() const;  // all c_ij^k are constants

  std::string name;

 private:
  int n_ = 0, r_ = 0;
  std::vector<Poly> anchor_;
  std::vector<Poly> c_;
};

struct ChartValidation {
  bool ok = true;
  std::string failed_check;  // "anchor-morphism" or "jacobi"
  std::array<int, 3> triple{-1, -1, -1};
  std::string detail;
};

// Checks rho([e_i,e_j]) = [rho e_i, rho e_j] and the anchored Jacobi identity.
ChartValidation validate_chart(const AlgebroidChart& chart);

}  // namespace lafed
