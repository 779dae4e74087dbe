#include "qastab/exact/linear_algebra.hpp"

#include "qastab/core.hpp"

namespace qastab::exact {

std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  for (const auto& row : m) {
    if (row.size() != cols) throw Error(ErrorCode::DimensionMismatch, "rref: ragged matrix");
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    const Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<Vector> null_space(Matrix m, std::size_t cols) {
  const auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, std::size_t cols, const Vector& rhs) {
  if (rhs.size() != m.size()) throw Error(ErrorCode::DimensionMismatch, "solve: rhs length");
  Matrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    if (aug[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "solve: ragged matrix");
    aug[i].push_back(rhs[i]);
  }
  const auto pivots = rref(aug, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  Vector v(cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = aug[i][cols];
  return v;
}

}  // namespace qastab::exact
