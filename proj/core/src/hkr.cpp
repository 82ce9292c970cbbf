#include "lafed/hkr.hpp"

#include "lafed/errors.hpp"

namespace lafed {

EPolyOp hkr_V(const EPolyvector& u) {
  EPolyOp out;
  for (auto& [m, f] : u.terms) {
    if (m == 0) {
      out += EPolyOp::function(f);
      continue;
    }
    std::vector<int> idx = mask_indices(m);
    const Q w = Q(1) / factorial(static_cast<int>(idx.size()));
    std::vector<int> perm(idx.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    do {
      int inversions = 0;
      for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b) inversions += perm[a] > perm[b];
      Tuple t;
      for (int p : perm) t.push_back(UMono::gen(idx[p]));
      out.add(t, f * (inversions % 2 ? -w : w));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

EForm connes_C(const EChain& c, int r) {
  if (c.degree == 0) return EForm::function(c.f);
  const int m = -c.degree;
  if (c.jet.cap < m) throw BudgetExhausted("connes_C", m, c.jet.cap);
  EForm out;
  for (Mask mask = 1; mask < (Mask{1} << r); ++mask) {
    if (popcount(mask) != m) continue;
    out.add(mask, c.jet.eval(hkr_V(EPolyvector::wedge_of(mask_indices(mask)))));
  }
  return out;
}

}  // namespace lafed
