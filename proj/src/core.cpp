#include "qastab/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace qastab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Divergence: return "Divergence";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotEven: return "NotEven";
    case ErrorCode::NotOdd: return "NotOdd";
    case ErrorCode::Precondition: return "PreconditionViolation";
    case ErrorCode::HomogeneityViolation: return "HomogeneityViolation";
    case ErrorCode::DivergentSeries: return "DivergentSeries";
    case ErrorCode::ParityMismatch: return "ParityMismatch";
  }
  return "Unknown";
}

bool is_hypothesis_violation(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Divergence:
    case ErrorCode::Overflow:
    case ErrorCode::NotEven:
    case ErrorCode::NotOdd:
    case ErrorCode::Precondition:
    case ErrorCode::HomogeneityViolation:
    case ErrorCode::DivergentSeries:
    case ErrorCode::NonFinite:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

namespace {

void check_finite(const std::vector<double>& c) {
  for (double v : c) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite coordinate");
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorCode::InvalidArgument, "point dimension must be >= 1");
  check_finite(coords_);
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

double Point::norm() const noexcept {
  if (coords_.size() == 1) return std::fabs(coords_[0]);
  double s = 0.0;
  for (double v : coords_) s += v * v;
  return std::sqrt(s);
}

bool Point::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](double v) { return v == 0.0; });
}

Point Point::dyadic(int k) const {
  std::vector<double> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::ldexp(coords_[i], k);
  return Point(std::move(c));
}

Point Point::operator-() const {
  std::vector<double> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return Point(std::move(c));
}

void require_same_dim(const Point& a, const Point& b, const char* context) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(context) + ": dimensions " +
                                                  std::to_string(a.dim()) + " and " +
                                                  std::to_string(b.dim()));
  }
}

Point& Point::operator+=(const Point& rhs) {
  require_same_dim(*this, rhs, "point addition");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  check_finite(coords_);
  return *this;
}

Point& Point::operator-=(const Point& rhs) {
  require_same_dim(*this, rhs, "point subtraction");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  check_finite(coords_);
  return *this;
}

Point& Point::operator*=(double s) {
  for (double& v : coords_) v *= s;
  check_finite(coords_);
  return *this;
}

std::string Point::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ';';
    out += format_double(coords_[i]);
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  for (int prec : {15, 16, 17}) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (prec == 17 || std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

double distance(const Point& a, const Point& b) {
  require_same_dim(a, b, "distance");
  if (a.dim() == 1) return std::fabs(a[0] - b[0]);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Grid make_grid(std::vector<Interval> range, std::size_t count, GridScheme scheme,
               std::uint64_t seed) {
  if (range.empty()) throw Error(ErrorCode::InvalidArgument, "grid range is empty");
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "grid count must be >= 1");
  for (const auto& iv : range) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
      throw Error(ErrorCode::InvalidArgument, "grid range requires finite lo < hi");
    }
  }

  Grid grid;
  grid.range = range;
  grid.scheme = scheme;
  grid.seed = seed;
  grid.count = count;
  const std::size_t dim = range.size();

  if (scheme == GridScheme::uniform) {
    std::vector<std::vector<double>> axes(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      const auto [lo, hi] = range[d];
      if (count == 1) {
        axes[d].push_back(0.5 * (lo + hi));
        continue;
      }
      for (std::size_t i = 0; i < count; ++i) {
        // Endpoints are hit exactly.
        axes[d].push_back(i + 1 == count ? hi
                                         : lo + (hi - lo) * static_cast<double>(i) /
                                                    static_cast<double>(count - 1));
      }
    }
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
      std::vector<double> c(dim);
      for (std::size_t d = 0; d < dim; ++d) c[d] = axes[d][idx[d]];
      grid.points.emplace_back(std::move(c));
      std::size_t d = dim;
      while (d > 0) {
        --d;
        if (++idx[d] < count) break;
        idx[d] = 0;
        if (d == 0) return grid;
      }
    }
  }

  Rng rng(seed);
  std::set<std::vector<double>> seen;
  while (grid.points.size() < count) {
    std::vector<double> c(dim);
    for (std::size_t d = 0; d < dim; ++d) c[d] = rng.uniform(range[d].lo, range[d].hi);
    if (seen.insert(c).second) grid.points.emplace_back(std::move(c));
  }
  return grid;
}

}  // namespace qastab
