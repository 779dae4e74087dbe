#pragma once

#include <vector>

#include "qastab/exact/polynomial.hpp"

namespace qastab::exact {

/// Basis of the polynomials of degree <= max_degree that satisfy the mixed
/// equation exactly: the null space of p -> symbolic_mixed_defect(p) on the
/// monomial basis, in reduced echelon form (each basis element has a
/// leading free monomial with coefficient 1).
std::vector<RationalPoly> solve_polynomial_basis(int max_degree);

}  // namespace qastab::exact
