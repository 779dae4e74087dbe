#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qastab/core.hpp"

namespace qastab {

enum class Parity { none, even, odd };

const char* to_string(Parity p) noexcept;
Parity parse_parity(std::string_view s);

namespace detail {
struct FnNode;
}

/// Immutable, pure map R^d -> R^d. Every built-in node acts componentwise.
///
/// Noise is deterministic: amplitude * (2u - 1) with u in [0, 1) hashed from
/// the bit pattern of the point (with -0 folded onto +0), the seed and the
/// output component. The raw noise is anchored to 0 at the origin so that a
/// perturbed exact solution keeps f(0) = 0. Even and odd noise are the exact
/// symmetrizations (h(x) + h(-x)) / 2 and (h(x) - h(-x)) / 2.
class EvaluableFn {
 public:
  /// Ascending coefficients: {0, 1, 0, 0, 1} is t + t^4.
  static EvaluableFn poly(std::vector<double> coeffs, std::size_t dim = 1);
  /// amplitude * sin(frequency * t).
  static EvaluableFn sine(double amplitude, double frequency, std::size_t dim = 1);
  static EvaluableFn noise(double amplitude, Parity parity, std::uint64_t seed,
                           std::size_t dim = 1);
  static EvaluableFn zero(std::size_t dim = 1);
  static EvaluableFn custom(std::string name, std::size_t dim,
                            std::function<Point(const Point&)> fn);
  /// Componentwise product f * g.
  static EvaluableFn product(const EvaluableFn& f, const EvaluableFn& g);

  friend EvaluableFn operator+(const EvaluableFn& f, const EvaluableFn& g);
  friend EvaluableFn operator-(const EvaluableFn& f, const EvaluableFn& g);
  friend EvaluableFn operator*(double s, const EvaluableFn& f);

  /// Evaluates with dimension and finiteness checks.
  Point operator()(const Point& x) const;

  std::size_t dim() const noexcept;

  /// Mini-language form when the tree is expressible in it, otherwise a
  /// readable description.
  std::string describe() const;

  /// Even or odd part. Built-in nodes are split structurally (polynomial
  /// coefficients by degree, noise by its symmetrization, sine is odd, sums
  /// and products distribute); opaque nodes fall back to
  /// (f(x) +/- f(-x)) / 2. Parity::none returns *this.
  EvaluableFn part(Parity parity) const;

  /// True when the structure guarantees the parity exactly.
  bool has_structural_parity(Parity parity) const;

 private:
  explicit EvaluableFn(std::shared_ptr<const detail::FnNode> node);
  std::shared_ptr<const detail::FnNode> node_;
};

/// eval_fn: f(x) with dimension and finiteness checks.
Point eval_fn(const EvaluableFn& f, const Point& x);

/// Parses the function mini-language:
///   poly:c0,c1,...,ck   sin:amp,freq   noise:amp,parity,seed
/// joined with '+', e.g. "poly:0,1,0,0,1+noise:0.001,even,42".
EvaluableFn parse_function(std::string_view spec, std::size_t dim = 1);

/// max over the grid of ||f(x) - g(x)||.
double sup_distance(const EvaluableFn& f, const EvaluableFn& g, const Grid& grid);

}  // namespace qastab
