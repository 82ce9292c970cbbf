#pragma once

#include <string>
#include <vector>

#include "lafed/chart.hpp"

namespace lafed {

// nabla(b_j) = xi^i Gamma_ij^k b_k on E itself.
class Connection {
 public:
  Connection() = default;
  explicit Connection(int r) : r_(r), g_(static_cast<std::size_t>(r) * r * r) {}
  int r() const { return r_; }
  const Poly& operator()(int i, int j, int k) const { return g_[(i * r_ + j) * r_ + k]; }
  Poly& at(int i, int j, int k) { return g_[(i * r_ + j) * r_ + k]; }
  bool zero() const;
  bool operator==(const Connection& o) const { return r_ == o.r_ && g_ == o.g_; }

 private:
  int r_ = 0;
  std::vector<Poly> g_;
};

// T_ij^k, stored [(i*r+j)*r+k].
struct Torsion {
  int r = 0;
  std::vector<Poly> t;
  const Poly& operator()(int i, int j, int k) const { return t[(i * r + j) * r + k]; }
  bool zero() const;
};

// (R_ij)_k^l, stored [((i*r+j)*r+k)*r+l].
struct Curvature {
  int r = 0;
  std::vector<Poly> R;
  const Poly& operator()(int i, int j, int k, int l) const { return R[((i * r + j) * r + k) * r + l]; }
  bool zero() const;
};

Torsion torsion(const AlgebroidChart& chart, const Connection& g);
Curvature curvature(const AlgebroidChart& chart, const Connection& g);
// Gamma_ij^k = c_ij^k / 2
Connection torsion_free(const AlgebroidChart& chart);

struct BianchiResidual {
  bool ok = true;
  std::string which;  // "B1" or "B2"
  std::vector<int> where;
};

// Both Bianchi identities on all generator triples.
BianchiResidual bianchi(const AlgebroidChart& chart, const Connection& g);

}  // namespace lafed
