#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qastab/defect.hpp"
#include "qastab/function.hpp"

namespace qastab::kernels {

enum class Exec { parallel, serial };

/// Runs body(i) for i in [0, n). The parallel path uses an OpenMP static
/// schedule; if any index throws, the exception of the lowest failing index
/// is rethrown after the loop, so both paths report the same error.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    Exec exec = Exec::parallel);

/// ||D(x_i, y_i)|| for every pair, in index order.
std::vector<double> defect_norms(const EvaluableFn& f, Equation eq, std::span<const Point> xs,
                                 std::span<const Point> ys, Exec exec = Exec::parallel);

/// max_i ||f(p_i) - g(p_i)||.
double sup_distance(const EvaluableFn& f, const EvaluableFn& g, std::span<const Point> points,
                    Exec exec = Exec::parallel);

int max_threads();

}  // namespace qastab::kernels
