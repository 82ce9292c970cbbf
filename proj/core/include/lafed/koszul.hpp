#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace lafed {

// Sign of the permutation carrying `source` to `target`, (-1)^(inversions).
// Throws std::invalid_argument when target is not a permutation of source or
// ids repeat.
template <class Id>
int koszul_sign(const std::vector<Id>& source, const std::vector<Id>& target) {
  if (source.size() != target.size()) throw std::invalid_argument("koszul_sign: length mismatch");
  std::map<Id, int> pos;
  for (int i = 0; i < static_cast<int>(source.size()); ++i)
    if (!pos.emplace(source[i], i).second) throw std::invalid_argument("koszul_sign: repeated id");
  std::vector<int> perm;
  perm.reserve(target.size());
  std::vector<bool> seen(source.size(), false);
  for (auto& id : target) {
    auto it = pos.find(id);
    if (it == pos.end() || seen[it->second]) throw std::invalid_argument("koszul_sign: not a permutation");
    seen[it->second] = true;
    perm.push_back(it->second);
  }
  int inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return (inv & 1) ? -1 : 1;
}

int koszul_sign(const std::vector<int>& source, const std::vector<int>& target);

// Odd generators are stored as bit masks, factors in ascending index order.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }

// Sign of the product (ascending A)(ascending B) rewritten in ascending order;
// 0 when A and B share a generator.
inline int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

// Sign picked up by a left derivative d/d(gen i) acting on ascending mask m
// (number of generators of m strictly before i), 0 if i not in m.
inline int left_derivative_sign(Mask m, int i) {
  if (!(m >> i & 1u)) return 0;
  return (std::popcount(m & ((Mask{1} << i) - 1)) & 1) ? -1 : 1;
}

// Sign for a right derivative: number of generators strictly after i.
inline int right_derivative_sign(Mask m, int i) {
  if (!(m >> i & 1u)) return 0;
  return (std::popcount(m >> (i + 1)) & 1) ? -1 : 1;
}

std::vector<int> mask_indices(Mask m);
Mask mask_of(const std::vector<int>& idx);

}  // namespace lafed
