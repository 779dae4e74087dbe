#pragma once

#include <optional>
#include <vector>

#include "qastab/exact/rational.hpp"

namespace qastab::exact {

using Vector = std::vector<Rational>;
/// Row-major; all rows the same length.
using Matrix = std::vector<Vector>;

/// Reduces m in place to reduced row echelon form; returns the pivot
/// columns in increasing order.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols);

/// Basis of {v : m v = 0}, one vector per free column with that entry 1.
std::vector<Vector> null_space(Matrix m, std::size_t cols);

/// Some solution of m v = rhs (free variables set to 0), or nullopt.
std::optional<Vector> solve(const Matrix& m, std::size_t cols, const Vector& rhs);

}  // namespace qastab::exact
