#include <gtest/gtest.h>

#include <cmath>

#include "qastab/bounds.hpp"

using namespace qastab;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

void expect_rel(double a, double b, double rel) { EXPECT_LE(std::fabs(a - b), rel * std::fabs(b)) << a << " vs " << b; }

}  // namespace

TEST(Bounds, ConstantComponents) {
  const auto eps = ControlFn::constant(1.0);
  const Point x{1.0};
  expect_rel(quartic_bound_forward(eps, x).value, 1.0 / 45.0, 1e-11);
  expect_rel(additive_bound_forward(eps, x).value, 1.0, 1e-11);
  const auto c = combined_bound(eps, x, Direction::forward);
  expect_rel(c.result.value, 46.0 / 45.0, 1e-11);
  expect_rel(c.printed_aggregate, 46.0 / 45.0, 1e-11);
  ASSERT_TRUE(c.paper_constant);
  EXPECT_DOUBLE_EQ(*c.paper_constant, 362.0 / 45.0);
  EXPECT_EQ(c.derived_constant, c.result.value);
}

TEST(Bounds, TailIsCertified) {
  const auto r = additive_bound_forward(ControlFn::constant(1.0), Point{1.0});
  ASSERT_TRUE(r.tail_estimate);
  EXPECT_GE(r.total_upper, 1.0);
  EXPECT_LE(*r.tail_estimate, 1e-11);
  EXPECT_LE(r.terms_used, 200);
  EXPECT_FALSE(r.heuristic);
}

TEST(Bounds, ExplicitTerms) {
  const auto r = additive_bound_forward(ControlFn::constant(1.0), Point{1.0}, 3);
  EXPECT_EQ(r.terms_used, 3);
  EXPECT_DOUBLE_EQ(r.value, 0.5 + 0.25 + 0.125);
  EXPECT_THROW(additive_bound_forward(ControlFn::constant(1.0), Point{1.0}, -1), Error);
}

TEST(Bounds, ClosedFormsMatchSeries) {
  const Point x{1.7};
  for (double p : {-1.0, 0.0, 0.5}) {
    const auto psi = ControlFn::power(2.0, p);
    for (auto [mode, kind] : {std::pair{OrbitMode::quartic_fwd, BoundKind::quartic_fwd},
                              std::pair{OrbitMode::additive_fwd, BoundKind::additive_fwd}}) {
      expect_rel(component_bound(mode, psi, x).value, closed_form(kind, psi, x), 1e-10);
    }
  }
  for (double p : {4.5, 5.0, 8.0}) {
    const auto psi = ControlFn::power(2.0, p);
    for (auto [mode, kind] : {std::pair{OrbitMode::quartic_bwd, BoundKind::quartic_bwd},
                              std::pair{OrbitMode::additive_bwd, BoundKind::additive_bwd}}) {
      expect_rel(component_bound(mode, psi, x).value, closed_form(kind, psi, x), 1e-10);
    }
  }
}

TEST(Bounds, CapLeavesCertifiedTail) {
  // Ratio 2^-0.1: the 1e-12 target needs about 400 terms, the cap is 200.
  const auto psi = ControlFn::power(1.0, 0.9);
  const auto r = additive_bound_forward(psi, Point{1.0});
  const double exact = closed_form(BoundKind::additive_fwd, psi, Point{1.0});
  EXPECT_EQ(r.terms_used, 200);
  ASSERT_TRUE(r.tail_estimate);
  EXPECT_LT(r.value, exact);
  EXPECT_GE(r.total_upper, exact);
  EXPECT_GT((exact - r.value) / exact, 1e-10);
  expect_rel(quartic_bound_forward(psi, Point{1.0}).value, closed_form(BoundKind::quartic_fwd, psi, Point{1.0}), 1e-10);
}

TEST(Bounds, QuarticForwardScaling) {
  // sum_i theta (2^i)^p / (48 16^i) = theta / 48 * 16 / (16 - 2^p)
  const double p = 0.5;
  expect_rel(quartic_bound_forward(ControlFn::power(1.0, p), Point{1.0}).value,
             1.0 / 48.0 * 16.0 / (16.0 - std::pow(2.0, p)), 1e-10);
}

TEST(Bounds, DivergentSeries) {
  EXPECT_EQ(code_of([] { quartic_bound_forward(ControlFn::power(1.0, 4.0), Point{1.0}); }),
            ErrorCode::DivergentSeries);
  EXPECT_EQ(code_of([] { additive_bound_backward(ControlFn::constant(1.0), Point{1.0}); }),
            ErrorCode::DivergentSeries);
  EXPECT_EQ(code_of([] { closed_form(BoundKind::additive_fwd, ControlFn::power(1.0, 1.0), Point{1.0}); }),
            ErrorCode::DivergentSeries);
}

TEST(Bounds, CustomControl) {
  const auto psi = ControlFn::custom({1.0, 1.0, 1.0, 1.0});
  const auto r = additive_bound_forward(psi, Point{1.0}, 4);
  EXPECT_DOUBLE_EQ(r.value, 0.5 + 0.25 + 0.125 + 0.0625);
  EXPECT_FALSE(r.tail_estimate);
  EXPECT_TRUE(r.heuristic);
  EXPECT_THROW(additive_bound_forward(psi, Point{1.0}), Error);
  EXPECT_THROW(additive_bound_forward(psi, Point{1.0}, 5), Error);
}

TEST(Bounds, ConvergenceRegion) {
  const auto c = convergence_region(ControlFn::constant(1.0));
  EXPECT_TRUE(c.quartic_fwd_ok);
  EXPECT_TRUE(c.additive_fwd_ok);
  EXPECT_FALSE(c.quartic_bwd_ok);
  EXPECT_FALSE(c.additive_bwd_ok);
  EXPECT_FALSE(c.reason[2].empty());
  const auto p = convergence_region(ControlFn::power(1.0, 2.0));
  EXPECT_TRUE(p.ok(OrbitMode::quartic_fwd));
  EXPECT_FALSE(p.ok(OrbitMode::additive_fwd));
  EXPECT_TRUE(p.ok(OrbitMode::additive_bwd));
  EXPECT_FALSE(p.ok(OrbitMode::quartic_bwd));
  const auto h = convergence_region(ControlFn::custom({1, 0.5, 0.25, 0.125, 0.0625}));
  EXPECT_TRUE(h.heuristic);
  EXPECT_TRUE(h.ok(OrbitMode::additive_fwd));
  EXPECT_FALSE(h.ok(OrbitMode::additive_bwd));
}

TEST(Corollary, ForwardAtZero) {
  const auto c = corollary_constants(1.0, 0.0, Direction::forward);
  expect_rel(c.paper_value, 181.0 / 45.0, 1e-14);
  expect_rel(c.derived_value, 46.0 / 45.0, 1e-10);
  expect_rel(c.derived_closed_form, 46.0 / 45.0, 1e-14);
  EXPECT_NE(c.ratio, 1.0);
  EXPECT_FALSE(c.paper_expression.empty());
  EXPECT_THROW(corollary_constants(1.0, 1.0, Direction::forward), Error);
  EXPECT_THROW(corollary_constants(1.0, 4.0, Direction::backward), Error);
}

TEST(Corollary, BackwardHasBothValues) {
  const auto c = corollary_constants(1.0, 5.0, Direction::backward);
  EXPECT_GT(c.paper_value, 0.0);
  expect_rel(c.derived_value, c.derived_closed_form, 1e-10);
}

TEST(Cauchy, TelescopingHolds) {
  const auto f = parse_function("poly:0,1,0,0,1+noise:0.01,none,3");
  for (auto mode : {OrbitMode::quartic_fwd, OrbitMode::additive_fwd}) {
    const auto fpart = is_quartic(mode) ? f.part(Parity::even) : f.part(Parity::odd);
    const auto b = empirical_cauchy_bound(fpart, Point{1.3}, 12, mode);
    EXPECT_LE(b.lhs, b.rhs * (1 + 1e-10));
    EXPECT_EQ(b.orbit_psi.size(), 12u);
    EXPECT_EQ(b.iterates.size(), 13u);
    expect_rel(weighted_orbit_sum(b.orbit_psi, mode), b.rhs, 1e-9);
  }
}

TEST(Cauchy, ExactSolutionHasZeroBound) {
  const auto b = empirical_cauchy_bound(parse_function("poly:0,0,0,0,1"), Point{2.0}, 10, OrbitMode::quartic_bwd);
  EXPECT_EQ(b.lhs, 0.0);
  EXPECT_EQ(b.rhs, 0.0);
}
