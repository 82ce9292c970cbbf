#include "lafed/linalg.hpp"

#include <stdexcept>

namespace lafed {

namespace {

std::vector<Z> integer_row(const Vec& row) {
  Z l = 1;
  for (auto& q : row)
    if (q != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Z> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] == 0) continue;
    out[j] = row[j].get_num() * (l / row[j].get_den());
  }
  return out;
}

}  // namespace

Echelon echelon(const Matrix& m, std::size_t cols) {
  std::vector<std::vector<Z>> a;
  a.reserve(m.size());
  for (auto& row : m) {
    if (row.size() != cols) throw std::invalid_argument("echelon: ragged matrix");
    a.push_back(integer_row(row));
  }
  Echelon e;
  std::size_t r = 0;
  Z prev = 1;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Z v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    e.pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  e.rank = static_cast<int>(r);
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

int rank(const Matrix& m) {
  if (m.empty()) return 0;
  return echelon(m, m.front().size()).rank;
}

std::vector<Vec> kernel_basis(const Matrix& m, std::size_t cols) {
  Echelon e = echelon(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols);
    v[f] = 1;
    for (int k = e.rank - 1; k >= 0; --k) {
      int pc = e.pivot_cols[k];
      Q s = 0;
      for (std::size_t j = pc + 1; j < cols; ++j)
        if (e.rows[k][j] != 0 && v[j] != 0) s += Q(e.rows[k][j]) * v[j];
      v[pc] = -s / Q(e.rows[k][pc]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vec> kernel_basis(const Matrix& m) {
  if (m.empty()) return {};
  return kernel_basis(m, m.front().size());
}

}  // namespace lafed
