#include "qastab/exact/solution_space.hpp"

#include <map>

#include "qastab/core.hpp"
#include "qastab/exact/linear_algebra.hpp"

namespace qastab::exact {

std::vector<RationalPoly> solve_polynomial_basis(int max_degree) {
  if (max_degree < 0) throw Error(ErrorCode::InvalidArgument, "max_degree must be >= 0");
  const auto cols = static_cast<std::size_t>(max_degree) + 1;
  std::map<BivariatePoly::Monomial, Vector> rows;
  for (std::size_t k = 0; k < cols; ++k) {
    const auto d = symbolic_mixed_defect(RationalPoly::monomial(static_cast<int>(k)));
    for (const auto& [mono, c] : d.terms()) {
      auto [it, inserted] = rows.try_emplace(mono, Vector(cols, 0));
      it->second[k] = c;
    }
  }
  Matrix m;
  for (auto& [mono, row] : rows) m.push_back(std::move(row));

  std::vector<RationalPoly> basis;
  for (auto& v : null_space(std::move(m), cols)) basis.emplace_back(std::move(v));
  return basis;
}

}  // namespace qastab::exact
