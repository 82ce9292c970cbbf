#include "lafed/cohomology.hpp"

#include <type_traits>

#include "lafed/errors.hpp"
#include "lafed/fiber_ops.hpp"

namespace lafed {

namespace {

Matrix multiply(const Matrix& a, const Matrix& b, std::size_t inner, std::size_t cols) {
  Matrix out(a.size(), Vec(cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

bool all_zero(const Matrix& m) {
  for (auto& row : m)
    for (auto& v : row)
      if (v != 0) return false;
  return true;
}

std::string key_label(const FKey& k) {
  std::string s = "y" + to_string(k.y);
  for (auto& o : k.ops) s += "|" + to_string(o);
  return s;
}

std::string tuple_label(const Tuple& t) {
  std::string s;
  for (auto& m : t) s += (s.empty() ? "" : "|") + to_string(m);
  return s.empty() ? "1" : s;
}

template <class Key, class Coeff>
Vec coords_of(const std::map<int, std::map<Key, int>>& index, int degree, const std::map<Key, Coeff>& terms,
              bool& escaped, bool allow_escape) {
  static const std::map<Key, int> kNone;
  auto it = index.find(degree);
  const auto& idx = it == index.end() ? kNone : it->second;
  Vec v(idx.size());
  for (auto& [k, c] : terms) {
    auto pos = idx.find(k);
    if (pos == idx.end()) {
      escaped = true;
      if (!allow_escape) throw Rejected("differential escapes the slice");
      continue;
    }
    if constexpr (std::is_same_v<Coeff, Poly>) {
      if (!c.is_constant()) throw Rejected("slice expects constant coefficients");
      v[pos->second] += c.constant_term();
    } else {
      v[pos->second] += c;
    }
  }
  return v;
}

template <class Key, class Image>
void fill_diff(ComplexSlice& s, const std::map<int, std::map<Key, int>>& index, int from, Image image) {
  auto src = index.find(from);
  if (src == index.end() || index.find(from + 1) == index.end()) return;
  const std::size_t rows = index.at(from + 1).size();
  Matrix m(rows, Vec(src->second.size()));
  bool escaped = false;
  for (auto& [k, col] : src->second) {
    Vec v = coords_of(index, from + 1, image(k), escaped, s.projected);
    for (std::size_t r = 0; r < rows; ++r) m[r][col] = v[r];
  }
  s.diff[from] = std::move(m);
}

}  // namespace

std::vector<HomologyRow> truncated_cohomology(const ComplexSlice& s) {
  std::map<int, int> ranks;
  for (auto& [k, m] : s.diff) {
    if (static_cast<int>(m.size()) != s.dim(k + 1)) throw Rejected("slice differential has wrong shape");
    for (auto& row : m)
      if (static_cast<int>(row.size()) != s.dim(k)) throw Rejected("slice differential has wrong shape");
    ranks[k] = rank(m);
    auto next = s.diff.find(k + 1);
    if (next != s.diff.end() && !all_zero(multiply(next->second, m, s.dim(k + 1), s.dim(k))))
      throw Rejected("slice differential does not square to zero");
  }
  std::vector<HomologyRow> out;
  for (auto& [k, labels] : s.basis) {
    HomologyRow row;
    row.degree = k;
    row.dim = static_cast<int>(labels.size());
    if (auto it = ranks.find(k - 1); it != ranks.end()) row.rank_in = it->second;
    if (auto it = ranks.find(k); it != ranks.end()) row.rank_out = it->second;
    const bool bottom = k == s.basis.begin()->first && s.starts_at_bottom;
    row.complete = row.dim == 0 || (s.diff.count(k) > 0 && (bottom || s.diff.count(k - 1) > 0));
    row.homology = row.dim - row.rank_in - row.rank_out;
    out.push_back(row);
  }
  return out;
}

Vec FiberCochainSlice::coords(int degree, const Section& s) const {
  bool escaped = false;
  return coords_of(index, degree, s.terms, escaped, false);
}

FiberCochainSlice fiber_cochain_slice(int r, int top, int ydeg, int order) {
  FiberCochainSlice out;
  out.slice.label = "fiber cochains r=" + std::to_string(r);
  const auto ys = enumerate_monos(r, ydeg);
  for (int k = -1; k <= top + 1; ++k) {
    auto& idx = out.index[k];
    auto& labels = out.slice.basis[k];
    for (auto& t : enumerate_tuples(r, k + 1, order))
      for (auto& y : ys) {
        FKey key;
        key.y = y;
        key.ops = t;
        if (k == -1) key.ops.clear();
        if (idx.count(key)) continue;
        idx.emplace(key, static_cast<int>(labels.size()));
        labels.push_back(key_label(key));
      }
  }
  for (int k = -1; k <= top; ++k)
    fill_diff(out.slice, out.index, k, [](const FKey& key) {
      Section s(Bundle::D, kExact);
      s.add(key, Poly(1));
      Section d = fw_cochain_d(s);
      for (auto& [k2, c] : d.terms)
        if (!c.is_constant()) throw Rejected("unexpected base dependence");
      return d.terms;
    });
  return out;
}

Vec FiberChainSlice::coords(int degree, const Section& s) const {
  bool escaped = false;
  return coords_of(index, degree, s.terms, escaped, false);
}

FiberChainSlice fiber_chain_slice(int r, int groups, int ydeg) {
  FiberChainSlice out;
  out.slice.label = "fiber chains r=" + std::to_string(r);
  const auto ys = enumerate_monos(r, ydeg);
  for (int g = 1; g <= groups; ++g) {
    const int k = 1 - g;
    auto& idx = out.index[k];
    auto& labels = out.slice.basis[k];
    std::vector<std::vector<YMono>> acc{{}};
    for (int s = 0; s < g; ++s) {
      std::vector<std::vector<YMono>> next;
      for (auto& a : acc)
        for (auto& y : ys) {
          int d = y.order();
          for (auto& b : a) d += b.order();
          if (d > ydeg) continue;
          auto n = a;
          n.push_back(y);
          next.push_back(std::move(n));
        }
      acc = std::move(next);
    }
    for (auto& ops : acc) {
      FKey key;
      key.ops = ops;
      idx.emplace(key, static_cast<int>(labels.size()));
      labels.push_back(key_label(key));
    }
  }
  for (int g = 2; g <= groups; ++g)
    fill_diff(out.slice, out.index, 1 - g, [](const FKey& key) {
      Section s(Bundle::J, kExact);
      s.add(key, Poly(1));
      return fw_chain_b(s).terms;
    });
  // b vanishes on single groups.
  out.slice.diff[0] = Matrix{};
  out.slice.starts_at_bottom = false;
  return out;
}

Vec OperatorSlice::coords(int degree, const EPolyOp& p) const {
  bool escaped = false;
  return coords_of(index, degree, p.terms, escaped, false);
}

OperatorSlice operator_slice(const Enveloping& U, int top, int order) {
  OperatorSlice out;
  out.slice.label = "E-polydifferential operators, " + U.chart().name;
  for (int k = -1; k <= top + 1; ++k) {
    auto& idx = out.index[k];
    auto& labels = out.slice.basis[k];
    if (k == -1) {
      idx.emplace(Tuple{}, 0);
      labels.push_back("1");
      continue;
    }
    for (auto& t : enumerate_tuples(U.r(), k + 1, order)) {
      idx.emplace(t, static_cast<int>(labels.size()));
      labels.push_back(tuple_label(t));
    }
  }
  for (int k = -1; k <= top; ++k)
    fill_diff(out.slice, out.index, k, [&](const Tuple& t) {
      return cochain_d(U, t.empty() ? EPolyOp::function(Poly(1)) : EPolyOp::tuple(t)).terms;
    });
  return out;
}

}  // namespace lafed
