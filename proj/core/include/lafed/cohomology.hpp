#pragma once

#include <map>
#include <string>
#include <vector>

#include "lafed/linalg.hpp"
#include "lafed/polyop.hpp"
#include "lafed/section.hpp"

namespace lafed {

// Finite piece of a cochain complex: basis labels per degree and the matrices
// of d: C^k -> C^{k+1} (rows indexed by C^{k+1}).
struct ComplexSlice {
  std::string label;
  std::map<int, std::vector<std::string>> basis;
  std::map<int, Matrix> diff;
  // Terms of d leaving the slice were dropped (associated graded differential).
  bool projected = false;
  // The lowest listed degree is the start of the complex (nothing maps into it).
  bool starts_at_bottom = true;

  int dim(int k) const {
    auto it = basis.find(k);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
  }
};

struct HomologyRow {
  int degree = 0;
  int dim = 0;
  int rank_in = 0;   // rank of d arriving in this degree
  int rank_out = 0;  // rank of d leaving this degree
  int homology = 0;
  // False when the slice lacks the differential on either side; homology is then an upper bound.
  bool complete = true;
};

// dim ker - dim im per degree. Rejects slices whose differential does not
// square to zero.
std::vector<HomologyRow> truncated_cohomology(const ComplexSlice& s);

// Hochschild complex of fiber polydifferential operators in r variables:
// degrees -1..top+1, y-degree <= ydeg, total derivative order <= order. d
// preserves both gradings, so nothing escapes. Degree top+1 has no outgoing d.
struct FiberCochainSlice {
  ComplexSlice slice;
  std::map<int, std::map<FKey, int>> index;
  Vec coords(int degree, const Section& s) const;
};
FiberCochainSlice fiber_cochain_slice(int r, int top, int ydeg, int order);

// Hochschild chains of the fiber with 1..groups groups and total y-degree
// <= ydeg; the chain with g groups sits in degree 1 - g.
struct FiberChainSlice {
  ComplexSlice slice;
  std::map<int, std::map<FKey, int>> index;
  Vec coords(int degree, const Section& s) const;
};
FiberChainSlice fiber_chain_slice(int r, int groups, int ydeg);

// Constant-coefficient E-polydifferential operators of degrees -1..top+1 and
// total PBW order <= order under the Hochschild differential.
struct OperatorSlice {
  ComplexSlice slice;
  std::map<int, std::map<Tuple, int>> index;
  Vec coords(int degree, const EPolyOp& p) const;
};
OperatorSlice operator_slice(const Enveloping& U, int top, int order);

}  // namespace lafed
