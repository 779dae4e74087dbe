#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qastab {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NonFinite,
  Parse,
  Io,
  Divergence,
  Overflow,
  NotEven,
  NotOdd,
  Precondition,
  HomogeneityViolation,
  DivergentSeries,
  ParityMismatch,
};

const char* to_string(ErrorCode code) noexcept;

/// True for errors that signal a violated stability hypothesis (divergent
/// iteration, divergent series, overflow along an orbit, f(0) != 0, ...)
/// as opposed to malformed input.
bool is_hypothesis_violation(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A point of R^d with finite coordinates. Used for both domain and
/// codomain values; every arithmetic result is re-validated.
class Point {
 public:
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zero(std::size_t dim);

  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  double norm() const noexcept;
  bool is_zero() const noexcept;

  /// 2^k * x, exact in binary floating point unless it over/underflows.
  Point dyadic(int k) const;

  Point operator-() const;
  Point& operator+=(const Point& rhs);
  Point& operator-=(const Point& rhs);
  Point& operator*=(double s);

  friend Point operator+(Point lhs, const Point& rhs) { return lhs += rhs; }
  friend Point operator-(Point lhs, const Point& rhs) { return lhs -= rhs; }
  friend Point operator*(double s, Point p) { return p *= s; }
  friend Point operator*(Point p, double s) { return p *= s; }
  friend bool operator==(const Point& a, const Point& b) = default;

  std::string to_string() const;

 private:
  std::vector<double> coords_;
};

void require_same_dim(const Point& a, const Point& b, const char* context);

/// Euclidean distance ||a - b||.
double distance(const Point& a, const Point& b);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

enum class GridScheme { uniform, random };

struct Grid {
  std::vector<Point> points;
  std::vector<Interval> range;
  GridScheme scheme = GridScheme::uniform;
  std::uint64_t seed = 0;
  std::size_t count = 0;
};

/// Uniform grids place `count` points per axis (endpoints included, the
/// midpoint when count == 1) and take the tensor product for d > 1.
/// Random grids draw `count` distinct points from the box.
Grid make_grid(std::vector<Interval> range, std::size_t count, GridScheme scheme,
               std::uint64_t seed = 0);

/// Seeded generator with a portable mapping to doubles; std::mt19937_64
/// output is fully specified, the standard distributions are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

/// Shortest "%.{15,16,17}g" rendering that round-trips.
std::string format_double(double v);

/// SplitMix64 finalizer; the mixing step of every deterministic hash here.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace qastab
