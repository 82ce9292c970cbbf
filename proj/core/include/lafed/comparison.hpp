#pragma once

#include <map>
#include <vector>

#include "lafed/fedosov.hpp"
#include "lafed/jets.hpp"
#include "lafed/polyop.hpp"

namespace lafed {

// Flat lifts of the generators and of functions, as unary fiber operators.
class MuMap {
 public:
  explicit MuMap(const FedosovData& fd);
  const FedosovData& data() const { return *fd_; }

  // mu(e_i) = lambda_T(e_i) as an operator.
  const Section& generator(int i) const { return gens_[i]; }
  // mu(f) = multiplication by lambda(f).
  Section function(const Poly& f) const;
  // mu(f e^m): lifts composed left to right in PBW order.
  Section mono(const UMono& m, const Poly& f = Poly(1)) const;
  // Composition of the lifts of the letters of a word.
  Section word(const std::vector<Letter>& w) const;
  // mu': slotwise extension to polydifferential operators.
  Section prime(const EPolyOp& p) const;

 private:
  const FedosovData* fd_;
  std::vector<Section> gens_;
  mutable std::map<UMono, Section> monos_;
};

// gamma(j)(P) = (mu'(P) applied to j) at y = 0, on all tuples of total order <= cap.
// The jet degree is read off the chain unless given.
EJet gamma_map(const MuMap& mu, const Section& chain, int cap, int degree = -1);

// B = Gamma - sum_i xi^i d/dy^i + A, so that D = E-d + B.
Section extract_B(const FedosovData& fd);

struct McReport {
  Section residual;     // E-d B + 1/2 [B, B]
  int margin = -1;      // y-degree up to which the residual is known
  bool flat = false;    // residual vanishes up to the margin
  bool cocycle = false; // B is a Hochschild cocycle as a fiber operator
  bool operator_flat = false;  // same identity with the Gerstenhaber bracket
};

McReport mc_check(const AlgebroidChart& chart, const Section& b);

}  // namespace lafed
