#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qastab/function.hpp"

namespace qastab {

enum class Equation { mixed, quartic, cauchy, jensen };

const char* to_string(Equation eq) noexcept;
Equation parse_equation(std::string_view s);

/// D_f(x,y) = 7[f(2x+y)+f(2x-y)] - 28[f(x+y)+f(x-y)] + 3[f(2y)-2f(y)]
///            - 14[f(2x)-4f(x)]
Point mixed_defect(const EvaluableFn& f, const Point& x, const Point& y);
/// f(2x+y)+f(2x-y) - 4[f(x+y)+f(x-y)] - 24f(x) + 6f(y)
Point quartic_defect(const EvaluableFn& f, const Point& x, const Point& y);
/// f(x+y) - f(x) - f(y)
Point cauchy_defect(const EvaluableFn& f, const Point& x, const Point& y);
/// f(x+y) + f(x-y) - 2f(x)
Point jensen_defect(const EvaluableFn& f, const Point& x, const Point& y);

Point defect(const EvaluableFn& f, Equation eq, const Point& x, const Point& y);

/// Pairs (xs[i], ys[i]).
struct PairSet {
  std::vector<Point> xs;
  std::vector<Point> ys;
  std::size_t size() const noexcept { return xs.size(); }
};

/// Every (x, y) with x from gx and y from gy, x-major.
PairSet product_pairs(const Grid& gx, const Grid& gy);
/// `count` independent uniform pairs from range^d x range^d.
PairSet random_pairs(std::size_t count, Interval range, std::uint64_t seed, std::size_t dim = 1);

struct PairValue {
  Point x;
  Point y;
  double value;
};

struct DefectReport {
  Equation equation = Equation::mixed;
  std::size_t pair_count = 0;
  double sup_defect = 0.0;
  Point argmax_x = Point::zero(1);
  Point argmax_y = Point::zero(1);
  std::optional<std::vector<PairValue>> per_pair;
};

/// Ties in the sup resolve to the lowest pair index.
DefectReport defect_sup(const EvaluableFn& f, Equation eq, const PairSet& pairs,
                        bool keep_pairs = false);

}  // namespace qastab
