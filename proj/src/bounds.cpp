#include "qastab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qastab {

const char* to_string(BoundKind k) noexcept {
  switch (k) {
    case BoundKind::quartic_fwd: return "quartic_fwd";
    case BoundKind::quartic_bwd: return "quartic_bwd";
    case BoundKind::additive_fwd: return "additive_fwd";
    case BoundKind::additive_bwd: return "additive_bwd";
    case BoundKind::combined_fwd: return "combined_fwd";
    case BoundKind::combined_bwd: return "combined_bwd";
  }
  return "quartic_fwd";
}

const char* to_string(Direction d) noexcept { return d == Direction::forward ? "forward" : "backward"; }

Direction parse_direction(std::string_view s) {
  if (s == "forward") return Direction::forward;
  if (s == "backward") return Direction::backward;
  throw Error(ErrorCode::Parse, "direction must be forward|backward, got '" + std::string(s) + "'");
}

namespace {

constexpr int kMaxTerms = 200;
constexpr double kRelativeTail = 1e-12;
constexpr double kRoundingAllowance = 256.0 * std::numeric_limits<double>::epsilon();
constexpr int kRatioSamples = 30;
constexpr double kRatioThreshold = 1.0 - 1e-6;

BoundKind kind_of(OrbitMode m) {
  switch (m) {
    case OrbitMode::quartic_fwd: return BoundKind::quartic_fwd;
    case OrbitMode::quartic_bwd: return BoundKind::quartic_bwd;
    case OrbitMode::additive_fwd: return BoundKind::additive_fwd;
    case OrbitMode::additive_bwd: return BoundKind::additive_bwd;
  }
  return BoundKind::quartic_fwd;
}

// Weight applied to psi at orbit index i.
double weighted(OrbitMode m, double psi, int i) {
  switch (m) {
    case OrbitMode::quartic_fwd: return std::ldexp(psi, -4 * i) / 48.0;
    case OrbitMode::quartic_bwd: return std::ldexp(psi, 4 * i) / 3.0;
    case OrbitMode::additive_fwd: return std::ldexp(psi, -i) / 2.0;
    case OrbitMode::additive_bwd: return std::ldexp(psi, i);
  }
  return 0.0;
}

// Growth exponent of psi(0, 2^i x) in i for an analytic control.
double log2_ratio(OrbitMode m, double p) {
  switch (m) {
    case OrbitMode::quartic_fwd: return p - 4.0;
    case OrbitMode::quartic_bwd: return 4.0 - p;
    case OrbitMode::additive_fwd: return p - 1.0;
    case OrbitMode::additive_bwd: return 1.0 - p;
  }
  return 0.0;
}

const char* region_condition(OrbitMode m) {
  switch (m) {
    case OrbitMode::quartic_fwd: return "p < 4";
    case OrbitMode::quartic_bwd: return "p > 4";
    case OrbitMode::additive_fwd: return "p < 1";
    case OrbitMode::additive_bwd: return "p > 1";
  }
  return "";
}

// Least-squares ratio estimate over the first nonzero terms; nullopt when
// fewer than two are nonzero.
std::optional<double> empirical_ratio(const std::vector<double>& terms) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < terms.size() && xs.size() < kRatioSamples; ++i) {
    if (terms[i] > 0.0) {
      xs.push_back(static_cast<double>(i));
      ys.push_back(std::log(terms[i]));
    }
  }
  if (xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return std::exp(sxy / sxx);
}

// psi at orbit index i, symmetrised over +-y when requested.
double orbit_psi(const ControlFn& psi, const Point& x, OrbitMode m, int i, bool symmetric) {
  const Point y = orbit_point(x, m, i);
  if (!symmetric) return psi.at_origin_slice(y);
  return 0.5 * (psi.at_origin_slice(y) + psi.at_origin_slice(-y));
}

BoundResult series(OrbitMode m, const ControlFn& psi, const Point& x, Terms terms, bool symmetric) {
  if (terms && *terms < 0) throw Error(ErrorCode::InvalidArgument, "term count must be >= 0");
  BoundResult r;
  r.kind = kind_of(m);

  if (psi.is_custom()) {
    const auto& table = psi.as_custom().orbit_values;
    if (!terms) {
      throw Error(ErrorCode::InvalidArgument, "a tabulated control needs an explicit term count");
    }
    if (static_cast<std::size_t>(*terms) > table.size()) {
      throw Error(ErrorCode::InvalidArgument, "term count " + std::to_string(*terms) +
                                                  " exceeds the " + std::to_string(table.size()) +
                                                  " tabulated control values");
    }
    std::vector<double> w(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) w[i] = weighted(m, table[i], static_cast<int>(i));
    if (const auto ratio = empirical_ratio(w); ratio && *ratio >= kRatioThreshold) {
      throw Error(ErrorCode::DivergentSeries, std::string(to_string(m)) +
                                                  " series fails the ratio test (estimated ratio " +
                                                  format_double(*ratio) + ")");
    }
    for (int i = 0; i < *terms; ++i) r.value += w[static_cast<std::size_t>(i)];
    r.terms_used = *terms;
    r.total_upper = r.value;
    r.heuristic = true;
    return r;
  }

  const double l2r = log2_ratio(m, psi.growth_exponent());
  if (l2r >= 0.0) {
    throw Error(ErrorCode::DivergentSeries, std::string(to_string(m)) + " series diverges for " +
                                                psi.describe() + " (needs " + region_condition(m) + ")");
  }
  const double ratio = std::exp2(l2r);
  const double tail_factor = ratio / (1.0 - ratio);
  const int limit = terms ? *terms : kMaxTerms;
  double last = 0.0;
  for (int i = 0; i < limit; ++i) {
    last = weighted(m, orbit_psi(psi, x, m, i, symmetric), i);
    r.value += last;
    r.terms_used = i + 1;
    if (!terms && last * tail_factor < kRelativeTail * r.value) break;
    if (!terms && r.value == 0.0) break;
  }
  if (r.terms_used == 0) last = weighted(m, orbit_psi(psi, x, m, 0, symmetric), 0) / ratio;
  r.tail_estimate = last * tail_factor + kRoundingAllowance * r.value;
  r.total_upper = r.value + *r.tail_estimate;
  return r;
}

}  // namespace

BoundResult component_bound(OrbitMode mode, const ControlFn& psi, const Point& x, Terms terms) {
  return series(mode, psi, x, terms, false);
}

BoundResult quartic_bound_forward(const ControlFn& psi, const Point& x, Terms terms) {
  return component_bound(OrbitMode::quartic_fwd, psi, x, terms);
}

BoundResult quartic_bound_backward(const ControlFn& psi, const Point& x, Terms terms) {
  return component_bound(OrbitMode::quartic_bwd, psi, x, terms);
}

BoundResult additive_bound_forward(const ControlFn& psi, const Point& x, Terms terms) {
  return component_bound(OrbitMode::additive_fwd, psi, x, terms);
}

BoundResult additive_bound_backward(const ControlFn& psi, const Point& x, Terms terms) {
  return component_bound(OrbitMode::additive_bwd, psi, x, terms);
}

namespace {

double analytic_base(const ControlFn& psi, const Point& x) {
  if (psi.is_constant()) return psi.as_constant().epsilon;
  if (psi.is_power()) return psi.at_origin_slice(x);
  throw Error(ErrorCode::InvalidArgument, "closed forms need a Constant or Power control");
}

double component_closed_form(OrbitMode m, const ControlFn& psi, const Point& x) {
  const double p = psi.growth_exponent();
  if (log2_ratio(m, p) >= 0.0) {
    throw Error(ErrorCode::DivergentSeries, std::string(to_string(m)) + " series diverges (needs " +
                                                region_condition(m) + ")");
  }
  const double b = analytic_base(psi, x);
  switch (m) {
    case OrbitMode::quartic_fwd: return b / 48.0 * 16.0 / (16.0 - std::exp2(p));
    case OrbitMode::quartic_bwd: return b / 3.0 * std::exp2(-p) / (1.0 - std::exp2(4.0 - p));
    case OrbitMode::additive_fwd: return b / 2.0 / (1.0 - std::exp2(p - 1.0));
    case OrbitMode::additive_bwd: return b * std::exp2(-p) / (1.0 - std::exp2(1.0 - p));
  }
  return 0.0;
}

}  // namespace

double closed_form(BoundKind kind, const ControlFn& psi, const Point& x) {
  switch (kind) {
    case BoundKind::quartic_fwd: return component_closed_form(OrbitMode::quartic_fwd, psi, x);
    case BoundKind::quartic_bwd: return component_closed_form(OrbitMode::quartic_bwd, psi, x);
    case BoundKind::additive_fwd: return component_closed_form(OrbitMode::additive_fwd, psi, x);
    case BoundKind::additive_bwd: return component_closed_form(OrbitMode::additive_bwd, psi, x);
    case BoundKind::combined_fwd:
      return component_closed_form(OrbitMode::quartic_fwd, psi, x) +
             component_closed_form(OrbitMode::additive_fwd, psi, x);
    case BoundKind::combined_bwd:
      return component_closed_form(OrbitMode::quartic_bwd, psi, x) +
             component_closed_form(OrbitMode::additive_bwd, psi, x);
  }
  return 0.0;
}

CombinedBound combined_bound(const ControlFn& psi, const Point& x, Direction direction, Terms terms) {
  const bool fwd = direction == Direction::forward;
  const OrbitMode qm = fwd ? OrbitMode::quartic_fwd : OrbitMode::quartic_bwd;
  const OrbitMode am = fwd ? OrbitMode::additive_fwd : OrbitMode::additive_bwd;

  CombinedBound c;
  c.quartic = series(qm, psi, x, terms, true);
  c.additive = series(am, psi, x, terms, true);
  c.result.kind = fwd ? BoundKind::combined_fwd : BoundKind::combined_bwd;
  c.result.value = c.quartic.value + c.additive.value;
  c.result.terms_used = std::max(c.quartic.terms_used, c.additive.terms_used);
  c.result.heuristic = c.quartic.heuristic || c.additive.heuristic;
  if (c.quartic.tail_estimate && c.additive.tail_estimate) {
    c.result.tail_estimate = *c.quartic.tail_estimate + *c.additive.tail_estimate;
  }
  c.result.total_upper = c.result.value + c.result.tail_estimate.value_or(0.0);
  c.derived_constant = c.result.value;

  for (int i = 0; i < c.result.terms_used; ++i) {
    double s = 0.0;
    if (psi.is_custom()) {
      s = 2.0 * psi.as_custom().orbit_values[static_cast<std::size_t>(i)];
    } else {
      const Point y = orbit_point(x, qm, i);
      s = psi.at_origin_slice(y) + psi.at_origin_slice(-y);
    }
    if (fwd) {
      c.printed_aggregate += (std::ldexp(s, -4 * i) / 2.0 + 12.0 * std::ldexp(s, -i)) / 48.0;
    } else {
      c.printed_aggregate += (std::ldexp(1.0, 4 * i) / 3.0 + std::ldexp(1.0, i)) * (s / 2.0);
    }
  }

  if (psi.is_constant() && fwd) {
    c.paper_constant = 362.0 / 45.0 * psi.as_constant().epsilon;
    c.paper_constant_source = "362/45 eps";
  } else if (psi.is_power()) {
    const auto [theta, p] = psi.as_power();
    const double xp = x.is_zero() ? 0.0 : std::pow(x.norm(), p);
    if (fwd && p < 1.0) {
      c.paper_constant = theta / 48.0 * xp * (16.0 / (16.0 - std::exp2(p)) + 96.0 / (1.0 - std::exp2(p - 1.0)));
      c.paper_constant_source = "theta/48 |x|^p (16/(16-2^p) + 96/(1-2^(p-1)))";
    } else if (!fwd && p > 4.0) {
      c.paper_constant = theta / (3.0 * std::exp2(p)) * xp *
                         (1.0 / (1.0 - std::exp2(4.0 - p)) + 1.0 / (1.0 - std::exp2(1.0 - p)));
      c.paper_constant_source = "theta/(3 2^p) |x|^p (1/(1-2^(4-p)) + 1/(1-2^(1-p)))";
    }
  }
  return c;
}

CorollaryConstants corollary_constants(double theta, double p, Direction direction) {
  const bool fwd = direction == Direction::forward;
  if (fwd && !(p < 1.0)) throw Error(ErrorCode::InvalidArgument, "forward constants need p < 1");
  if (!fwd && !(p > 4.0)) throw Error(ErrorCode::InvalidArgument, "backward constants need p > 4");
  const ControlFn psi = ControlFn::power(theta, p);
  const Point one{1.0};
  const auto c = combined_bound(psi, one, direction);
  CorollaryConstants out;
  out.theta = theta;
  out.p = p;
  out.direction = direction;
  out.paper_value = *c.paper_constant;
  out.paper_expression = c.paper_constant_source;
  out.derived_value = c.result.value;
  out.derived_closed_form = closed_form(c.result.kind, psi, one);
  out.ratio = out.paper_value / out.derived_value;
  return out;
}

bool ConvergenceRegion::ok(OrbitMode m) const noexcept {
  switch (m) {
    case OrbitMode::quartic_fwd: return quartic_fwd_ok;
    case OrbitMode::quartic_bwd: return quartic_bwd_ok;
    case OrbitMode::additive_fwd: return additive_fwd_ok;
    case OrbitMode::additive_bwd: return additive_bwd_ok;
  }
  return false;
}

ConvergenceRegion convergence_region(const ControlFn& psi) {
  ConvergenceRegion r;
  constexpr std::array<OrbitMode, 4> modes = {OrbitMode::quartic_fwd, OrbitMode::quartic_bwd,
                                              OrbitMode::additive_fwd, OrbitMode::additive_bwd};
  std::array<bool, 4> ok{};
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const OrbitMode m = modes[k];
    if (psi.is_custom()) {
      r.heuristic = true;
      const auto& table = psi.as_custom().orbit_values;
      std::vector<double> w(table.size());
      for (std::size_t i = 0; i < table.size(); ++i) w[i] = weighted(m, table[i], static_cast<int>(i));
      const auto ratio = empirical_ratio(w);
      ok[k] = !ratio || *ratio < kRatioThreshold;
      r.reason[k] = ratio ? "ratio test: estimated ratio " + format_double(*ratio)
                          : std::string("ratio test: fewer than two nonzero terms");
    } else {
      const double p = psi.growth_exponent();
      ok[k] = log2_ratio(m, p) < 0.0;
      r.reason[k] = std::string(region_condition(m)) + " with p = " + format_double(p);
    }
  }
  r.quartic_fwd_ok = ok[0];
  r.quartic_bwd_ok = ok[1];
  r.additive_fwd_ok = ok[2];
  r.additive_bwd_ok = ok[3];
  return r;
}

double weighted_orbit_sum(const std::vector<double>& orbit_psi, OrbitMode mode) {
  double s = 0.0;
  for (std::size_t i = 0; i < orbit_psi.size(); ++i) s += weighted(mode, orbit_psi[i], static_cast<int>(i));
  return s;
}

CauchyBound empirical_cauchy_bound(const EvaluableFn& f, const Point& x, int n, OrbitMode mode) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 0");
  if (x.dim() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "empirical_cauchy_bound");
  const int dir = is_forward(mode) ? 1 : -1;
  const int w = is_quartic(mode) ? 4 : 1;
  CauchyBound out;
  out.iterates.push_back(f(x));
  const double xnorm = x.norm();
  for (int k = 1; k <= n; ++k) {
    const double a = std::ldexp(xnorm, dir * k);
    if (xnorm != 0.0 && (a > 1e300 || a < 1e-300)) {
      throw Error(ErrorCode::Overflow, std::string(to_string(mode)) + " orbit leaves [1e-300, 1e300]");
    }
    out.iterates.push_back(f(x.dyadic(dir * k)).dyadic(-dir * w * k));
  }
  for (int i = 0; i < n; ++i) {
    const double d = distance(out.iterates[static_cast<std::size_t>(i) + 1], out.iterates[static_cast<std::size_t>(i)]);
    out.rhs += d;
    // d = weight_i * eps_i; undo the weight (powers of two are exact).
    double eps = 0.0;
    switch (mode) {
      case OrbitMode::quartic_fwd: eps = 48.0 * std::ldexp(d, 4 * i); break;
      case OrbitMode::quartic_bwd: eps = 3.0 * std::ldexp(d, -4 * i); break;
      case OrbitMode::additive_fwd: eps = std::ldexp(d, i + 1); break;
      case OrbitMode::additive_bwd: eps = std::ldexp(d, -i); break;
    }
    out.orbit_psi.push_back(eps);
  }
  out.lhs = distance(out.iterates.back(), out.iterates.front());
  return out;
}

}  // namespace qastab
