#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qastab/core.hpp"

namespace qastab {

/// Perturbation control psi(x, y) >= 0 bounding the defect.
///
/// Power(theta, p) is theta * (||x||^p + ||y||^p) where a zero-norm argument
/// contributes nothing, so psi(0, y) = theta * ||y||^p for every p. With
/// p < 0 the second argument must be nonzero.
///
/// Custom holds values tabulated along one orbit: entry i is the control
/// value at orbit index i (psi(0, 2^i x) forward, psi(0, 2^-(i+1) x)
/// backward). It cannot be evaluated at arbitrary points.
class ControlFn {
 public:
  struct Constant {
    double epsilon;
  };
  struct Power {
    double theta;
    double p;
  };
  struct Custom {
    std::vector<double> orbit_values;
  };

  static ControlFn constant(double epsilon);
  static ControlFn power(double theta, double p);
  static ControlFn custom(std::vector<double> orbit_values);

  /// Accepts `const:EPS`, `power:THETA,P`, or `custom:FILE` (one
  /// nonnegative decimal per line).
  static ControlFn parse(std::string_view spec);

  double operator()(const Point& x, const Point& y) const;
  /// psi(0, y).
  double at_origin_slice(const Point& y) const;

  bool is_custom() const noexcept { return std::holds_alternative<Custom>(v_); }
  bool is_constant() const noexcept { return std::holds_alternative<Constant>(v_); }
  bool is_power() const noexcept { return std::holds_alternative<Power>(v_); }
  const Constant& as_constant() const { return std::get<Constant>(v_); }
  const Power& as_power() const { return std::get<Power>(v_); }
  const Custom& as_custom() const { return std::get<Custom>(v_); }

  /// Effective exponent of psi(0, .): 0 for Constant, p for Power.
  double growth_exponent() const;

  std::string describe() const;

 private:
  using Variant = std::variant<Constant, Power, Custom>;
  explicit ControlFn(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

}  // namespace qastab
