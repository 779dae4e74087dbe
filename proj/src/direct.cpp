#include "qastab/direct.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qastab/defect.hpp"

namespace qastab {

const char* to_string(OrbitMode m) noexcept {
  switch (m) {
    case OrbitMode::quartic_fwd: return "quartic_fwd";
    case OrbitMode::quartic_bwd: return "quartic_bwd";
    case OrbitMode::additive_fwd: return "additive_fwd";
    case OrbitMode::additive_bwd: return "additive_bwd";
  }
  return "quartic_fwd";
}

OrbitMode parse_orbit_mode(std::string_view s) {
  if (s == "quartic_fwd") return OrbitMode::quartic_fwd;
  if (s == "quartic_bwd") return OrbitMode::quartic_bwd;
  if (s == "additive_fwd") return OrbitMode::additive_fwd;
  if (s == "additive_bwd") return OrbitMode::additive_bwd;
  throw Error(ErrorCode::Parse, "unknown orbit mode '" + std::string(s) + "'");
}

bool is_quartic(OrbitMode m) noexcept {
  return m == OrbitMode::quartic_fwd || m == OrbitMode::quartic_bwd;
}

bool is_forward(OrbitMode m) noexcept {
  return m == OrbitMode::quartic_fwd || m == OrbitMode::additive_fwd;
}

const char* to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::forward: return "forward";
    case Strategy::backward: return "backward";
    case Strategy::auto_: return "auto";
    case Strategy::auto_extended: return "auto-extended";
  }
  return "forward";
}

Strategy parse_strategy(std::string_view s) {
  if (s == "forward") return Strategy::forward;
  if (s == "backward") return Strategy::backward;
  if (s == "auto") return Strategy::auto_;
  if (s == "auto-extended") return Strategy::auto_extended;
  throw Error(ErrorCode::Parse, "strategy must be forward|backward|auto|auto-extended, got '" +
                                    std::string(s) + "'");
}

Components parse_components(std::string_view s) {
  if (s == "both") return Components::both;
  if (s == "even") return Components::even;
  if (s == "odd") return Components::odd;
  throw Error(ErrorCode::Parse, "component must be both|even|odd, got '" + std::string(s) + "'");
}

EvaluableFn even_part(const EvaluableFn& f) { return f.part(Parity::even); }
EvaluableFn odd_part(const EvaluableFn& f) { return f.part(Parity::odd); }

namespace {

constexpr double kArgumentCap = 1e300;
constexpr double kArgumentFloor = 1e-300;
constexpr double kDivergenceRatio = 1e3;

int log2_weight(OrbitMode m) { return is_quartic(m) ? 4 : 1; }

void check_options(double tol, int n_max) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
}

void check_origin(const EvaluableFn& f, double tol) {
  const double v = f(Point::zero(f.dim())).norm();
  if (v > tol) {
    throw Error(ErrorCode::Precondition, "f(0) = 0 required, |f(0)| = " + format_double(v));
  }
}

void check_parity(const EvaluableFn& f, const Point& x, Parity parity, double tol) {
  const Point a = f(x);
  const Point b = f(-x);
  const double err = parity == Parity::even ? distance(a, b) : (a + b).norm();
  const double scale = std::max({1.0, a.norm(), b.norm()});
  if (err > tol * scale) {
    throw Error(parity == Parity::even ? ErrorCode::NotEven : ErrorCode::NotOdd,
                std::string("f is not ") + to_string(parity) + " at x = " + x.to_string() +
                    " (mismatch " + format_double(err) + ")");
  }
}

ComponentEstimate run_iteration(const EvaluableFn& f, const Point& x, OrbitMode mode, double tol,
                                int n_max) {
  ComponentEstimate out;
  out.trace.point = x;
  out.trace.mode = mode;
  out.value = Point::zero(f.dim());
  if (x.is_zero()) {
    out.trace.iterates.push_back(out.value);
    out.trace.converged = true;
    return out;
  }
  const int dir = is_forward(mode) ? 1 : -1;
  const int w = log2_weight(mode);
  const double xnorm = x.norm();
  auto& tr = out.trace;

  tr.iterates.push_back(f(x));
  tr.scale = tr.iterates.back().norm();
  for (int n = 1; n <= n_max; ++n) {
    const double arg_norm = std::ldexp(xnorm, dir * n);
    if (arg_norm > kArgumentCap || arg_norm < kArgumentFloor) {
      throw Error(ErrorCode::Overflow, std::string(to_string(mode)) + ": ||2^" +
                                           std::to_string(dir * n) + " x|| left [1e-300, 1e300] at x = " +
                                           x.to_string());
    }
    Point q = f(x.dyadic(dir * n)).dyadic(-dir * w * n);
    const double delta = distance(q, tr.iterates.back());
    tr.scale = std::max(tr.scale, q.norm());
    tr.iterates.push_back(std::move(q));
    tr.deltas.push_back(delta);
    tr.n_used = n;
    tr.final_delta = tr.scale > 0.0 ? delta / tr.scale : 0.0;
    if (delta <= tol * tr.scale) {
      tr.converged = true;
      break;
    }
    const auto& d = tr.deltas;
    const std::size_t k = d.size();
    if (k >= 3 && d[k - 3] < d[k - 2] && d[k - 2] < d[k - 1] && d[k - 1] > kDivergenceRatio * d[0]) {
      throw Error(ErrorCode::Divergence, std::string(to_string(mode)) + " diverges at x = " +
                                             x.to_string() + " (delta " + format_double(d[k - 1]) +
                                             " after " + std::to_string(n) + " steps)");
    }
  }
  out.value = tr.iterates.back();
  return out;
}

ComponentEstimate checked(const EvaluableFn& f, const Point& x, OrbitMode mode, double tol, int n_max) {
  check_options(tol, n_max);
  if (x.dim() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "extraction point dimension");
  check_origin(f, tol);
  check_parity(f, x, is_quartic(mode) ? Parity::even : Parity::odd, tol);
  return run_iteration(f, x, mode, tol, n_max);
}

}  // namespace

ComponentEstimate extract_quartic_forward(const EvaluableFn& f_even, const Point& x, double tol, int n_max) {
  return checked(f_even, x, OrbitMode::quartic_fwd, tol, n_max);
}

ComponentEstimate extract_quartic_backward(const EvaluableFn& f_even, const Point& x, double tol, int n_max) {
  return checked(f_even, x, OrbitMode::quartic_bwd, tol, n_max);
}

ComponentEstimate extract_additive_forward(const EvaluableFn& f_odd, const Point& x, double tol, int n_max) {
  return checked(f_odd, x, OrbitMode::additive_fwd, tol, n_max);
}

ComponentEstimate extract_additive_backward(const EvaluableFn& f_odd, const Point& x, double tol, int n_max) {
  return checked(f_odd, x, OrbitMode::additive_bwd, tol, n_max);
}

ComponentEstimate extract(const EvaluableFn& f, const Point& x, OrbitMode mode, double tol, int n_max) {
  return checked(f, x, mode, tol, n_max);
}

Point orbit_point(const Point& x, OrbitMode mode, int i) {
  return is_forward(mode) ? x.dyadic(i) : x.dyadic(-i - 1);
}

double orbit_defect(const EvaluableFn& f_even, const EvaluableFn& f_odd, const Point& y) {
  const Point zero = Point::zero(y.dim());
  return (mixed_defect(f_even, zero, y) + mixed_defect(f_odd, zero, y)).norm();
}

bool ExtractionResult::all_converged() const {
  for (const auto& p : points) {
    if (p.quartic && !p.quartic->trace.converged) return false;
    if (p.additive && !p.additive->trace.converged) return false;
  }
  return true;
}

double ExtractionResult::sup_orbit_defect() const {
  double s = 0.0;
  for (const auto& p : points) {
    for (const auto* v : {&p.quartic_psi_plus, &p.quartic_psi_minus, &p.additive_psi_plus,
                          &p.additive_psi_minus}) {
      for (double d : *v) s = std::max(s, d);
    }
  }
  return s;
}

namespace {

// Slope of log ||D_g(0, 2^k x)|| against log ||2^k x||; nullopt when fewer
// than two samples are nonzero.
std::optional<double> fit_exponent(const EvaluableFn& g, const Point& x) {
  const Point zero = Point::zero(x.dim());
  std::vector<double> lx, ly;
  for (int k = -8; k <= 8; ++k) {
    const Point y = x.dyadic(k);
    const double d = mixed_defect(g, zero, y).norm();
    if (d > 0.0 && std::isfinite(d)) {
      lx.push_back(std::log(y.norm()));
      ly.push_back(std::log(d));
    }
  }
  if (lx.size() < 2) return std::nullopt;
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

ComponentEstimate tagged(const char* tag, const EvaluableFn& g, const Point& x, OrbitMode mode,
                         const ExtractionOptions& opt) {
  try {
    return run_iteration(g, x, mode, opt.tol, opt.n_max);
  } catch (const Error& e) {
    // Drop the "Code: " prefix the inner error already carries.
    const std::string inner = e.what();
    const auto skip = std::string(to_string(e.code())).size() + 2;
    throw Error(e.code(), std::string(tag) + " component: " + inner.substr(std::min(skip, inner.size())));
  }
}

void record_psi(const EvaluableFn& fe, const EvaluableFn& fo, const ComponentEstimate& est,
                std::vector<double>& plus, std::vector<double>& minus) {
  for (int i = 0; i < est.trace.n_used; ++i) {
    const Point y = orbit_point(est.trace.point, est.trace.mode, i);
    plus.push_back(orbit_defect(fe, fo, y));
    minus.push_back(orbit_defect(fe, fo, -y));
  }
}

void check_homogeneity(const ExtractionResult& r, double tol) {
  for (const auto& a : r.points) {
    const Point x2 = a.point.dyadic(1);
    for (const auto& b : r.points) {
      if (!(b.point == x2) || a.point.is_zero()) continue;
      auto check = [&](const std::optional<ComponentEstimate>& lo,
                       const std::optional<ComponentEstimate>& hi, double factor, const char* what) {
        if (!lo || !hi || !lo->trace.converged || !hi->trace.converged) return;
        const double err = distance(hi->value, factor * lo->value);
        const double scale = std::max(hi->trace.scale, factor * lo->trace.scale);
        if (err > 10.0 * tol * scale) {
          throw Error(ErrorCode::HomogeneityViolation,
                      std::string(what) + " at x = " + a.point.to_string() + ": mismatch " +
                          format_double(err) + " exceeds 10 tol scale = " +
                          format_double(10.0 * tol * scale));
        }
      };
      check(a.quartic, b.quartic, 16.0, "Q(2x) != 16 Q(x)");
      check(a.additive, b.additive, 2.0, "A(2x) != 2 A(x)");
    }
  }
}

}  // namespace

ExtractionResult extract_mixed(const EvaluableFn& f, const std::vector<Point>& points,
                               Strategy strategy, const ExtractionOptions& options) {
  check_options(options.tol, options.n_max);
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "extract_mixed needs at least one point");
  for (const auto& p : points) {
    if (p.dim() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "extraction point dimension");
  }
  check_origin(f, options.tol);

  const EvaluableFn fe = even_part(f);
  const EvaluableFn fo = odd_part(f);
  const bool want_q = options.components != Components::odd;
  const bool want_a = options.components != Components::even;

  ExtractionResult r;
  r.strategy = strategy;
  r.options = options;
  r.points.resize(points.size());

  kernels::for_each_index(
      points.size(),
      [&](std::size_t i) {
        PointExtraction& pe = r.points[i];
        pe.point = points[i];
        OrbitMode qm = strategy == Strategy::backward ? OrbitMode::quartic_bwd : OrbitMode::quartic_fwd;
        OrbitMode am = strategy == Strategy::backward ? OrbitMode::additive_bwd : OrbitMode::additive_fwd;
        if (strategy == Strategy::auto_extended && !points[i].is_zero()) {
          pe.fitted_p_even = fit_exponent(fe, points[i]);
          pe.fitted_p_odd = fit_exponent(fo, points[i]);
          if (pe.fitted_p_even && *pe.fitted_p_even >= 4.0) qm = OrbitMode::quartic_bwd;
          if (pe.fitted_p_odd && *pe.fitted_p_odd > 1.0) am = OrbitMode::additive_bwd;
        }
        if (want_q) {
          pe.quartic = tagged("quartic", fe, points[i], qm, options);
          record_psi(fe, fo, *pe.quartic, pe.quartic_psi_plus, pe.quartic_psi_minus);
        }
        if (want_a) {
          pe.additive = tagged("additive", fo, points[i], am, options);
          record_psi(fe, fo, *pe.additive, pe.additive_psi_plus, pe.additive_psi_minus);
        }
      },
      options.exec);

  check_homogeneity(r, options.tol);
  return r;
}

Point polarize_quartic(const EvaluableFn& q, const Point& x1, const Point& x2, const Point& x3,
                       const Point& x4) {
  const std::array<const Point*, 4> xs = {&x1, &x2, &x3, &x4};
  for (const auto* x : xs) require_same_dim(x1, *x, "polarize_quartic");
  std::vector<double> acc(q.dim(), 0.0);
  for (unsigned mask = 1; mask < 16; ++mask) {
    Point s = Point::zero(x1.dim());
    int size = 0;
    for (unsigned i = 0; i < 4; ++i) {
      if (mask & (1u << i)) {
        s += *xs[i];
        ++size;
      }
    }
    const double sign = (4 - size) % 2 == 0 ? 1.0 : -1.0;
    const Point v = q(s);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += sign * v[j];
  }
  for (double& a : acc) a /= 24.0;
  return Point(std::move(acc));
}

MultiadditiveReport check_multiadditive(const EvaluableFn& q, const Grid& grid, double tol,
                                        std::size_t tuples, std::uint64_t seed) {
  if (grid.points.empty()) throw Error(ErrorCode::InvalidArgument, "check_multiadditive on an empty grid");
  MultiadditiveReport rep;
  Rng rng(seed);
  const auto n = static_cast<std::int64_t>(grid.points.size());
  auto pick = [&]() -> const Point& { return grid.points[static_cast<std::size_t>(rng.integer(0, n - 1))]; };
  auto bound = [tol](std::initializer_list<double> mags) {
    double m = 1.0;
    for (double v : mags) m = std::max(m, v);
    return tol * m;
  };

  for (std::size_t t = 0; t < tuples; ++t) {
    std::array<Point, 5> p = {pick(), pick(), pick(), pick(), pick()};
    const Point b = polarize_quartic(q, p[0], p[1], p[2], p[3]);
    const Point bp = polarize_quartic(q, p[4], p[1], p[2], p[3]);
    const Point bs = polarize_quartic(q, p[0] + p[4], p[1], p[2], p[3]);
    const double add_err = distance(bs, b + bp);
    rep.max_additivity_error = std::max(rep.max_additivity_error, add_err);
    if (add_err > bound({bs.norm(), b.norm(), bp.norm()})) rep.additive = false;

    std::array<int, 4> perm = {0, 1, 2, 3};
    while (std::next_permutation(perm.begin(), perm.end())) {
      const Point bq = polarize_quartic(q, p[perm[0]], p[perm[1]], p[perm[2]], p[perm[3]]);
      const double sym_err = distance(bq, b);
      rep.max_symmetry_error = std::max(rep.max_symmetry_error, sym_err);
      if (sym_err > bound({bq.norm(), b.norm()})) rep.symmetric = false;
    }

    const Point diag = polarize_quartic(q, p[0], p[0], p[0], p[0]);
    const Point qx = q(p[0]);
    const double diag_err = distance(diag, qx);
    rep.max_diagonal_error = std::max(rep.max_diagonal_error, diag_err);
    if (diag_err > bound({diag.norm(), qx.norm()})) rep.diagonal = false;
    ++rep.tuples;
  }
  return rep;
}

}  // namespace qastab
