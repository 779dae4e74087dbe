#include "qastab/kernels.hpp"

#include <algorithm>
#include <exception>
#include <limits>

#include <omp.h>

namespace qastab::kernels {

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec) {
  if (exec == Exec::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::size_t first_bad = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(qastab_kernel_error)
      {
        if (static_cast<std::size_t>(i) < first_bad) {
          first_bad = static_cast<std::size_t>(i);
          error = std::current_exception();
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

std::vector<double> defect_norms(const EvaluableFn& f, Equation eq, std::span<const Point> xs,
                                 std::span<const Point> ys, Exec exec) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::DimensionMismatch, "defect_norms: x and y lists differ in length");
  }
  std::vector<double> out(xs.size());
  for_each_index(
      xs.size(), [&](std::size_t i) { out[i] = defect(f, eq, xs[i], ys[i]).norm(); }, exec);
  return out;
}

double sup_distance(const EvaluableFn& f, const EvaluableFn& g, std::span<const Point> points,
                    Exec exec) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "sup_distance over an empty grid");
  if (f.dim() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "sup_distance");
  std::vector<double> d(points.size());
  for_each_index(
      points.size(), [&](std::size_t i) { d[i] = distance(f(points[i]), g(points[i])); }, exec);
  return *std::max_element(d.begin(), d.end());
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace qastab::kernels
