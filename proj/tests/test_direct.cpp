#include <gtest/gtest.h>

#include <cmath>

#include "qastab/direct.hpp"

using namespace qastab;

namespace {

const EvaluableFn& log_growth() {
  // t log(1 + |t|): odd; forward iterates grow by about x log 2 per step,
  // so they neither converge nor trip the divergence test.
  static const auto f = EvaluableFn::custom(
      "t*log(1+|t|)", 1, [](const Point& x) { return Point{x[0] * std::log1p(std::fabs(x[0]))}; });
  return f;
}

const EvaluableFn& root_power() {
  // t |t|^(1/2): odd, and 2^-n f(2^n x) grows like 2^(n/2).
  static const auto f =
      EvaluableFn::custom("t|t|^0.5", 1, [](const Point& x) { return Point{x[0] * std::sqrt(std::fabs(x[0]))}; });
  return f;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Direct, ExactSolutionsAreFixedPoints) {
  const auto quartic = parse_function("poly:0,0,0,0,3");
  const auto additive = parse_function("poly:0,-2");
  for (double x : {0.3, 1.0, 7.5}) {
    const Point p{x};
    for (auto mode : {OrbitMode::quartic_fwd, OrbitMode::quartic_bwd}) {
      const auto e = extract(quartic, p, mode);
      EXPECT_TRUE(e.trace.converged);
      EXPECT_EQ(e.value, quartic(p));
      EXPECT_EQ(e.trace.final_delta, 0.0);
    }
    for (auto mode : {OrbitMode::additive_fwd, OrbitMode::additive_bwd}) {
      const auto e = extract(additive, p, mode);
      EXPECT_TRUE(e.trace.converged);
      EXPECT_EQ(e.value, additive(p));
    }
  }
}

TEST(Direct, ZeroPointShortCircuits) {
  const auto e = extract_additive_forward(parse_function("poly:0,1"), Point{0.0});
  EXPECT_TRUE(e.trace.converged);
  EXPECT_EQ(e.value, Point{0.0});
}

TEST(Direct, BackwardRemovesHigherOrderOddTerm) {
  // 2^n (2^-n x + sin(2^-n x)) -> 2x.
  const auto f = parse_function("poly:0,1+sin:1,1");
  const auto r = extract_mixed(f, {Point{0.5}, Point{1.0}, Point{2.0}}, Strategy::backward);
  ASSERT_TRUE(r.all_converged());
  for (const auto& p : r.points) {
    EXPECT_NEAR(p.additive->value[0], 2 * p.point[0], 1e-9 * std::fabs(p.point[0]));
    EXPECT_EQ(p.quartic->value[0], 0.0);
  }
}

TEST(Direct, ForwardRecoversPerturbedSolution) {
  const auto f = parse_function("poly:0,1,0,0,1+noise:0.001,none,9");
  const auto r = extract_mixed(f, {Point{1.0}, Point{2.0}, Point{3.0}}, Strategy::forward);
  ASSERT_TRUE(r.all_converged());
  for (const auto& p : r.points) {
    const double x = p.point[0];
    EXPECT_NEAR(p.quartic->value[0], std::pow(x, 4), 1e-3);
    EXPECT_NEAR(p.additive->value[0], x, 1e-3);
    EXPECT_LE(p.quartic->trace.final_delta, 1e-10);
    EXPECT_EQ(p.quartic_psi_plus.size(), static_cast<std::size_t>(p.quartic->trace.n_used));
  }
  EXPECT_GT(r.sup_orbit_defect(), 0.0);
  EXPECT_LE(r.sup_orbit_defect(), 149 * 0.001);
}

TEST(Direct, CubeDivergesForward) {
  const auto f = parse_function("poly:0,0,0,1");
  EXPECT_EQ(code_of([&] { extract_mixed(f, {Point{1.0}}, Strategy::forward); }), ErrorCode::Divergence);
}

TEST(Direct, OverflowLeavingRange) {
  EXPECT_EQ(code_of([&] { extract_additive_forward(log_growth(), Point{1e290}, 1e-10, 60); }),
            ErrorCode::Overflow);
  EXPECT_EQ(code_of([&] { extract_additive_forward(root_power(), Point{1.0}, 1e-10, 60); }),
            ErrorCode::Divergence);
}

TEST(Direct, NonConvergenceWithinBudget) {
  const auto e = extract_additive_forward(parse_function("poly:0,1+sin:1,1"), Point{1.0}, 1e-10, 5);
  EXPECT_FALSE(e.trace.converged);
  EXPECT_EQ(e.trace.n_used, 5);
  EXPECT_GT(e.trace.final_delta, 1e-10);
}

TEST(Direct, Preconditions) {
  EXPECT_EQ(code_of([] { extract_quartic_forward(parse_function("poly:1,0,1"), Point{1.0}); }),
            ErrorCode::Precondition);
  EXPECT_EQ(code_of([] { extract_quartic_forward(parse_function("poly:0,1"), Point{1.0}); }), ErrorCode::NotEven);
  EXPECT_EQ(code_of([] { extract_additive_forward(parse_function("poly:0,0,1"), Point{1.0}); }), ErrorCode::NotOdd);
  EXPECT_EQ(code_of([] { extract_additive_forward(parse_function("poly:0,1"), Point{1.0}, 0.0); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { extract_additive_forward(parse_function("poly:0,1"), Point{1.0, 2.0}); }),
            ErrorCode::DimensionMismatch);
}

TEST(Direct, ComponentSelection) {
  ExtractionOptions opt;
  opt.components = Components::even;
  const auto r = extract_mixed(parse_function("poly:0,1,0,0,1"), {Point{1.0}}, Strategy::forward, opt);
  EXPECT_TRUE(r.points[0].quartic);
  EXPECT_FALSE(r.points[0].additive);
}

TEST(Direct, AutoExtendedPicksDirectionPerComponent) {
  // Even part t^4 + t^6/1000 needs the backward quartic iteration; odd part t
  // is exact either way.
  const auto f = parse_function("poly:0,1,0,0,1,0,0.001");
  const auto r = extract_mixed(f, {Point{1.0}, Point{2.0}}, Strategy::auto_extended);
  ASSERT_TRUE(r.all_converged());
  for (const auto& p : r.points) {
    EXPECT_EQ(p.quartic->trace.mode, OrbitMode::quartic_bwd);
    ASSERT_TRUE(p.fitted_p_even);
    EXPECT_NEAR(*p.fitted_p_even, 6.0, 0.1);
    EXPECT_NEAR(p.quartic->value[0], std::pow(p.point[0], 4), 1e-9);
  }
  EXPECT_THROW(extract_mixed(f, {Point{1.0}}, Strategy::forward), Error);
}

TEST(Direct, OrbitPoints) {
  EXPECT_EQ(orbit_point(Point{3.0}, OrbitMode::quartic_fwd, 2), Point{12.0});
  EXPECT_EQ(orbit_point(Point{3.0}, OrbitMode::additive_bwd, 0), Point{1.5});
  EXPECT_EQ(parse_orbit_mode("additive_bwd"), OrbitMode::additive_bwd);
  EXPECT_EQ(parse_strategy("auto-extended"), Strategy::auto_extended);
  EXPECT_THROW(parse_strategy("sideways"), Error);
}

TEST(Parts, EvenOddHelpers) {
  const auto f = parse_function("poly:0,1,1");
  EXPECT_EQ(even_part(f)(Point{3.0})[0], 9.0);
  EXPECT_EQ(odd_part(f)(Point{3.0})[0], 3.0);
}

TEST(Polarization, QuarticFormPasses) {
  const auto q = parse_function("poly:0,0,0,0,2");
  EXPECT_NEAR(polarize_quartic(q, Point{1.0}, Point{1.0}, Point{1.0}, Point{1.0})[0], 2.0, 1e-12);
  EXPECT_NEAR(polarize_quartic(q, Point{1.0}, Point{2.0}, Point{3.0}, Point{-1.0})[0], -12.0, 1e-9);
  const auto grid = make_grid({{-2.0, 2.0}}, 9, GridScheme::uniform);
  const auto rep = check_multiadditive(q, grid);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.tuples, 64u);
}

TEST(Polarization, SquareFailsDiagonal) {
  // The alternating sum of t^2 vanishes identically, so B(x,x,x,x) = 0 != x^2.
  const auto grid = make_grid({{-2.0, 2.0}}, 9, GridScheme::uniform);
  const auto rep = check_multiadditive(parse_function("poly:0,0,1"), grid);
  EXPECT_FALSE(rep.diagonal);
  EXPECT_FALSE(rep.passed());
}

TEST(Polarization, PerturbedFormFailsAdditivity) {
  const auto grid = make_grid({{-2.0, 2.0}}, 9, GridScheme::random, 4);
  const auto rep = check_multiadditive(parse_function("poly:0,0,0,0,1+noise:0.01,even,1"), grid);
  EXPECT_FALSE(rep.additive);
}

TEST(Direct, SerialAndParallelAgree) {
  const auto f = parse_function("poly:0,1,0,0,1+noise:0.01,none,5");
  std::vector<Point> pts;
  for (int i = 1; i <= 40; ++i) pts.push_back(Point{0.1 * i});
  ExtractionOptions par, ser;
  ser.exec = kernels::Exec::serial;
  const auto a = extract_mixed(f, pts, Strategy::forward, par);
  const auto b = extract_mixed(f, pts, Strategy::forward, ser);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(a.points[i].quartic->trace.iterates, b.points[i].quartic->trace.iterates);
    EXPECT_EQ(a.points[i].additive->value, b.points[i].additive->value);
  }
}

TEST(Direct, DirectionMattersForQuarticPlusSquare) {
  // (2^4n + 2^2n) / 16^n = 1 + 4^-n forward; 16^n (2^-4n + 2^-2n) = 1 + 4^n backward.
  const auto f = parse_function("poly:0,0,1,0,1");
  const auto fwd = extract_quartic_forward(f, Point{1.0}, 1e-10, 40);
  EXPECT_TRUE(fwd.trace.converged);
  EXPECT_NEAR(fwd.value[0], 1.0, 1e-9);
  EXPECT_EQ(fwd.trace.iterates[2][0], 1.0 + 1.0 / 16.0);
  EXPECT_EQ(code_of([&] { extract_quartic_backward(f, Point{1.0}); }), ErrorCode::Divergence);
}

TEST(Direct, SineDecaysForward) {
  const auto e = extract_additive_forward(parse_function("poly:0,1+sin:1,1"), Point{1.0}, 1e-10, 60);
  EXPECT_TRUE(e.trace.converged);
  EXPECT_NEAR(e.value[0], 1.0, 1e-9);
}
