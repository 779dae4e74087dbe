#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qastab/function.hpp"
#include "qastab/kernels.hpp"

namespace qastab {

/// The four dyadic iterations:
///   quartic_fwd  f(2^n x) / 16^n      quartic_bwd  16^n f(2^-n x)
///   additive_fwd f(2^n x) / 2^n       additive_bwd 2^n f(2^-n x)
enum class OrbitMode { quartic_fwd, quartic_bwd, additive_fwd, additive_bwd };

const char* to_string(OrbitMode m) noexcept;
OrbitMode parse_orbit_mode(std::string_view s);
bool is_quartic(OrbitMode m) noexcept;
bool is_forward(OrbitMode m) noexcept;

enum class Strategy { forward, backward, auto_, auto_extended };

const char* to_string(Strategy s) noexcept;
Strategy parse_strategy(std::string_view s);

enum class Components { both, even, odd };

Components parse_components(std::string_view s);

struct ExtractionOptions {
  /// Relative to the running iterate scale.
  double tol = 1e-10;
  int n_max = 24;
  Components components = Components::both;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// Iterates q_0 = f(x), ..., q_N. `scale` is max_k ||q_k|| and
/// final_delta = deltas.back() / scale (0 when the scale is 0), so that
/// converged implies final_delta <= tol.
struct ResidualTrace {
  Point point = Point::zero(1);
  OrbitMode mode = OrbitMode::quartic_fwd;
  std::vector<Point> iterates;
  std::vector<double> deltas;
  int n_used = 0;
  bool converged = false;
  double final_delta = 0.0;
  double scale = 0.0;
};

struct ComponentEstimate {
  Point value = Point::zero(1);
  ResidualTrace trace;
};

EvaluableFn even_part(const EvaluableFn& f);
EvaluableFn odd_part(const EvaluableFn& f);

/// Each checks f(0) = 0 within tol (Precondition) and the parity of f at
/// +-x (NotEven / NotOdd), then iterates until the relative delta drops to
/// tol. Throws Divergence after three consecutive increasing deltas with the
/// last above 1e3 times the first, and Overflow when ||2^n x|| leaves
/// [1e-300, 1e300]. Hitting n_max without either returns converged = false.
ComponentEstimate extract_quartic_forward(const EvaluableFn& f_even, const Point& x,
                                          double tol = 1e-10, int n_max = 24);
ComponentEstimate extract_quartic_backward(const EvaluableFn& f_even, const Point& x,
                                           double tol = 1e-10, int n_max = 24);
ComponentEstimate extract_additive_forward(const EvaluableFn& f_odd, const Point& x,
                                           double tol = 1e-10, int n_max = 24);
ComponentEstimate extract_additive_backward(const EvaluableFn& f_odd, const Point& x,
                                            double tol = 1e-10, int n_max = 24);

ComponentEstimate extract(const EvaluableFn& f, const Point& x, OrbitMode mode, double tol = 1e-10,
                          int n_max = 24);

/// Orbit point for index i: 2^i x forward, 2^-(i+1) x backward.
Point orbit_point(const Point& x, OrbitMode mode, int i);

/// ||D_f(0, y)|| evaluated as ||D_{f_e}(0, y) + D_{f_o}(0, y)|| on the
/// structural parts, which avoids cancelling the quartic term against the
/// additive one at large |y|.
double orbit_defect(const EvaluableFn& f_even, const EvaluableFn& f_odd, const Point& y);

struct PointExtraction {
  Point point = Point::zero(1);
  std::optional<ComponentEstimate> quartic;
  std::optional<ComponentEstimate> additive;
  /// ||D_f(0, +-y_i)|| along each component's orbit, i < n_used.
  std::vector<double> quartic_psi_plus, quartic_psi_minus;
  std::vector<double> additive_psi_plus, additive_psi_minus;
  /// Least-squares exponents of the even/odd orbit defects (auto-extended).
  std::optional<double> fitted_p_even, fitted_p_odd;
};

struct ExtractionResult {
  Strategy strategy = Strategy::forward;
  ExtractionOptions options;
  std::vector<PointExtraction> points;

  bool all_converged() const;
  /// max over both components and all orbit pairs of ||D_f(0, +-y_i)||.
  double sup_orbit_defect() const;
};

/// forward/auto: quartic_fwd + additive_fwd. backward: quartic_bwd +
/// additive_bwd. auto-extended: per point, fits the exponent p of
/// ||D(0, 2^k x)|| for k in [-8, 8] separately on f_e and f_o; the quartic
/// part runs forward when p < 4, the additive part backward when p > 1.
/// Points run in parallel. After extraction, every requested pair (x, 2x)
/// with both components converged must satisfy Q(2x) = 16 Q(x) and
/// A(2x) = 2 A(x) within 10 tol scale, else HomogeneityViolation.
ExtractionResult extract_mixed(const EvaluableFn& f, const std::vector<Point>& points,
                               Strategy strategy, const ExtractionOptions& options = {});

/// B(x1..x4) = (1/24) sum over nonempty S of (-1)^(4-|S|) Q(sum_{i in S} x_i).
Point polarize_quartic(const EvaluableFn& q, const Point& x1, const Point& x2, const Point& x3,
                       const Point& x4);

struct MultiadditiveReport {
  std::size_t tuples = 0;
  double max_additivity_error = 0.0;
  double max_symmetry_error = 0.0;
  double max_diagonal_error = 0.0;
  bool additive = true;
  bool symmetric = true;
  /// B(x,x,x,x) = Q(x); a polarization is only meaningful if it recovers Q.
  bool diagonal = true;
  bool passed() const noexcept { return additive && symmetric && diagonal; }
};

/// Samples `tuples` 5-tuples from the grid (seeded) and checks slot-1
/// additivity, all 24 argument permutations and the diagonal, each against
/// tol * max(1, |values involved|).
MultiadditiveReport check_multiadditive(const EvaluableFn& q, const Grid& grid, double tol = 1e-9,
                                        std::size_t tuples = 64, std::uint64_t seed = 0);

}  // namespace qastab
