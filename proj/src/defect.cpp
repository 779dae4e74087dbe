#include "qastab/defect.hpp"

#include <cmath>

#include "qastab/kernels.hpp"

namespace qastab {

const char* to_string(Equation eq) noexcept {
  switch (eq) {
    case Equation::mixed: return "mixed";
    case Equation::quartic: return "quartic";
    case Equation::cauchy: return "cauchy";
    case Equation::jensen: return "jensen";
  }
  return "mixed";
}

Equation parse_equation(std::string_view s) {
  if (s == "mixed") return Equation::mixed;
  if (s == "quartic") return Equation::quartic;
  if (s == "cauchy") return Equation::cauchy;
  if (s == "jensen") return Equation::jensen;
  throw Error(ErrorCode::Parse, "equation must be mixed|quartic|cauchy|jensen, got '" + std::string(s) + "'");
}

namespace {

template <class Combine>
Point combine(std::size_t dim, Combine&& c) {
  std::vector<double> out(dim);
  for (std::size_t j = 0; j < dim; ++j) out[j] = c(j);
  return Point(std::move(out));
}

}  // namespace

Point mixed_defect(const EvaluableFn& f, const Point& x, const Point& y) {
  require_same_dim(x, y, "mixed_defect");
  const Point x2 = x.dyadic(1);
  const Point a = f(x2 + y), b = f(x2 - y);
  const Point c = f(x + y), d = f(x - y);
  const Point e = f(y.dyadic(1)), g = f(y);
  const Point h = f(x2), k = f(x);
  return combine(f.dim(), [&](std::size_t j) {
    return 7.0 * (a[j] + b[j]) - 28.0 * (c[j] + d[j]) + 3.0 * (e[j] - 2.0 * g[j]) -
           14.0 * (h[j] - 4.0 * k[j]);
  });
}

Point quartic_defect(const EvaluableFn& f, const Point& x, const Point& y) {
  require_same_dim(x, y, "quartic_defect");
  const Point x2 = x.dyadic(1);
  const Point a = f(x2 + y), b = f(x2 - y);
  const Point c = f(x + y), d = f(x - y);
  const Point k = f(x), g = f(y);
  return combine(f.dim(), [&](std::size_t j) {
    return a[j] + b[j] - 4.0 * (c[j] + d[j]) - 24.0 * k[j] + 6.0 * g[j];
  });
}

Point cauchy_defect(const EvaluableFn& f, const Point& x, const Point& y) {
  require_same_dim(x, y, "cauchy_defect");
  const Point s = f(x + y), a = f(x), b = f(y);
  return combine(f.dim(), [&](std::size_t j) { return s[j] - a[j] - b[j]; });
}

Point jensen_defect(const EvaluableFn& f, const Point& x, const Point& y) {
  require_same_dim(x, y, "jensen_defect");
  const Point s = f(x + y), d = f(x - y), a = f(x);
  return combine(f.dim(), [&](std::size_t j) { return s[j] + d[j] - 2.0 * a[j]; });
}

Point defect(const EvaluableFn& f, Equation eq, const Point& x, const Point& y) {
  switch (eq) {
    case Equation::quartic: return quartic_defect(f, x, y);
    case Equation::cauchy: return cauchy_defect(f, x, y);
    case Equation::jensen: return jensen_defect(f, x, y);
    case Equation::mixed: break;
  }
  return mixed_defect(f, x, y);
}

PairSet product_pairs(const Grid& gx, const Grid& gy) {
  PairSet out;
  for (const auto& x : gx.points) {
    for (const auto& y : gy.points) {
      require_same_dim(x, y, "product_pairs");
      out.xs.push_back(x);
      out.ys.push_back(y);
    }
  }
  return out;
}

PairSet random_pairs(std::size_t count, Interval range, std::uint64_t seed, std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "pair dimension must be >= 1");
  if (!std::isfinite(range.lo) || !std::isfinite(range.hi) || !(range.lo < range.hi)) {
    throw Error(ErrorCode::InvalidArgument, "pair range requires finite lo < hi");
  }
  Rng rng(seed);
  PairSet out;
  out.xs.reserve(count);
  out.ys.reserve(count);
  std::vector<double> c(dim);
  for (std::size_t i = 0; i < count; ++i) {
    for (auto& v : c) v = rng.uniform(range.lo, range.hi);
    out.xs.emplace_back(c);
    for (auto& v : c) v = rng.uniform(range.lo, range.hi);
    out.ys.emplace_back(c);
  }
  return out;
}

DefectReport defect_sup(const EvaluableFn& f, Equation eq, const PairSet& pairs, bool keep_pairs) {
  if (pairs.size() == 0) throw Error(ErrorCode::InvalidArgument, "defect_sup needs at least one pair");
  const auto norms = kernels::defect_norms(f, eq, pairs.xs, pairs.ys);
  std::size_t best = 0;
  for (std::size_t i = 1; i < norms.size(); ++i) {
    if (norms[i] > norms[best]) best = i;
  }
  DefectReport r;
  r.equation = eq;
  r.pair_count = pairs.size();
  r.sup_defect = norms[best];
  r.argmax_x = pairs.xs[best];
  r.argmax_y = pairs.ys[best];
  if (keep_pairs) {
    std::vector<PairValue> pv;
    pv.reserve(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) pv.push_back({pairs.xs[i], pairs.ys[i], norms[i]});
    r.per_pair = std::move(pv);
  }
  return r;
}

}  // namespace qastab
