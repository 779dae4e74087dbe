#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qastab/control.hpp"
#include "qastab/direct.hpp"

namespace qastab {

enum class BoundKind { quartic_fwd, quartic_bwd, additive_fwd, additive_bwd, combined_fwd, combined_bwd };

const char* to_string(BoundKind k) noexcept;

enum class Direction { forward, backward };

const char* to_string(Direction d) noexcept;
Direction parse_direction(std::string_view s);

/// Number of series terms; nullopt selects automatic truncation (stop once
/// the geometric tail is below 1e-12 of the partial sum, at most 200 terms).
using Terms = std::optional<int>;

struct BoundResult {
  BoundKind kind = BoundKind::quartic_fwd;
  /// Partial sum over the first terms_used terms, ascending index order.
  double value = 0.0;
  int terms_used = 0;
  /// Certified bound on the dropped tail (geometric bound plus a rounding
  /// allowance); nullopt for tabulated controls, where no tail is known.
  std::optional<double> tail_estimate;
  double total_upper = 0.0;
  /// Convergence was judged by the empirical ratio test.
  bool heuristic = false;
};

/// Term i of each series, for psi(0, .) along the orbit of x:
///   quartic_fwd   psi(0, 2^i x) / (48 16^i)
///   quartic_bwd   16^i psi(0, 2^-(i+1) x) / 3
///   additive_fwd  psi(0, 2^i x) / (2 2^i)
///   additive_bwd  2^i psi(0, 2^-(i+1) x)
/// A Custom control supplies psi along the orbit directly and requires an
/// explicit term count no larger than its table.
BoundResult quartic_bound_forward(const ControlFn& psi, const Point& x, Terms terms = std::nullopt);
BoundResult quartic_bound_backward(const ControlFn& psi, const Point& x, Terms terms = std::nullopt);
BoundResult additive_bound_forward(const ControlFn& psi, const Point& x, Terms terms = std::nullopt);
BoundResult additive_bound_backward(const ControlFn& psi, const Point& x, Terms terms = std::nullopt);

BoundResult component_bound(OrbitMode mode, const ControlFn& psi, const Point& x,
                            Terms terms = std::nullopt);

struct CombinedBound {
  /// Sum of the quartic and additive component bounds, each taken with
  /// the symmetrised control (psi(0, y) + psi(0, -y)) / 2.
  BoundResult result;
  BoundResult quartic;
  BoundResult additive;
  /// The combined aggregate in its printed form, summed over the same
  /// number of terms: forward (1/48) sum [s_i / (2 16^i) + 12 s_i / 2^i],
  /// backward sum (16^i / 3 + 2^i) s_i / 2, with s_i = psi(0, y_i) + psi(0, -y_i).
  double printed_aggregate = 0.0;
  /// Closed-form constant stated by the corollaries, evaluated at x, when one
  /// applies (Constant forward; Power forward p < 1; Power backward p > 4).
  std::optional<double> paper_constant;
  std::string paper_constant_source;
  /// Equal to result.value; reported beside paper_constant.
  double derived_constant = 0.0;
};

CombinedBound combined_bound(const ControlFn& psi, const Point& x, Direction direction,
                             Terms terms = std::nullopt);

/// Geometric closed form of a component or combined series for Constant and
/// Power controls. Throws DivergentSeries outside the convergence region.
double closed_form(BoundKind kind, const ControlFn& psi, const Point& x);

struct CorollaryConstants {
  double theta = 0.0;
  double p = 0.0;
  Direction direction = Direction::forward;
  /// Printed closed form at ||x|| = 1.
  double paper_value = 0.0;
  std::string paper_expression;
  /// Term-by-term sum of the component series at ||x|| = 1.
  double derived_value = 0.0;
  /// Geometric closed form of the same component series.
  double derived_closed_form = 0.0;
  /// paper_value / derived_value.
  double ratio = 0.0;
};

/// Forward needs p < 1, backward p > 4 (InvalidArgument otherwise).
CorollaryConstants corollary_constants(double theta, double p, Direction direction);

struct ConvergenceRegion {
  bool quartic_fwd_ok = false;
  bool quartic_bwd_ok = false;
  bool additive_fwd_ok = false;
  bool additive_bwd_ok = false;
  /// In OrbitMode order.
  std::array<std::string, 4> reason;
  bool heuristic = false;

  bool ok(OrbitMode m) const noexcept;
};

/// Analytic for Constant/Power (geometric ratios 2^p/16, 16/2^p, 2^p/2,
/// 2/2^p); for Custom a least-squares ratio test over at most 30 nonzero
/// weighted terms with threshold 1 - 1e-6.
ConvergenceRegion convergence_region(const ControlFn& psi);

struct CauchyBound {
  double lhs = 0.0;
  double rhs = 0.0;
  /// eps_i, the measured orbit defect at index i (i < N):
  ///   quartic_fwd  ||3 f(2^(i+1) x) - 48 f(2^i x)||
  ///   quartic_bwd  ||3 f(2y) - 48 f(y)||, y = 2^-(i+1) x
  ///   additive_fwd ||f(2^(i+1) x) - 2 f(2^i x)||
  ///   additive_bwd ||f(2y) - 2 f(y)||,    y = 2^-(i+1) x
  std::vector<double> orbit_psi;
  std::vector<Point> iterates;
};

/// lhs = ||q_N - q_0|| for the mode's iterates q_n; rhs is the telescoped
/// bound, i.e. the mode's weighted sum of orbit_psi. rhs is accumulated as
/// sum ||q_(i+1) - q_i||, the same quantity without the weights' rounding.
CauchyBound empirical_cauchy_bound(const EvaluableFn& f, const Point& x, int n, OrbitMode mode);

/// The weighted sum of orbit_psi as printed in the telescoped inequalities
/// (1/48 sum eps_i/16^i, 1/3 sum 16^i eps_i, 1/2 sum eps_i/2^i, sum 2^i eps_i).
double weighted_orbit_sum(const std::vector<double>& orbit_psi, OrbitMode mode);

}  // namespace qastab
