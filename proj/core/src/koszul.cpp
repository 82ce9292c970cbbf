#include "lafed/koszul.hpp"

namespace lafed {

int koszul_sign(const std::vector<int>& source, const std::vector<int>& target) {
  return koszul_sign<int>(source, target);
}

std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

Mask mask_of(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask{1} << i;
  return m;
}

}  // namespace lafed
