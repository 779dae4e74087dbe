#include <gtest/gtest.h>

#include <cmath>

#include "qastab/defect.hpp"

using namespace qastab;

TEST(Defect, ExactSolutionsVanish) {
  const auto f = parse_function("poly:0,2.5,0,0,-0.75");
  for (double x : {-3.0, 0.5, 2.0}) {
    for (double y : {-1.0, 0.25, 4.0}) {
      EXPECT_EQ(mixed_defect(f, Point{x}, Point{y})[0], 0.0) << x << "," << y;
    }
  }
  EXPECT_EQ(quartic_defect(parse_function("poly:0,0,0,0,1"), Point{1.5}, Point{-2.0})[0], 0.0);
  EXPECT_EQ(cauchy_defect(parse_function("poly:0,3"), Point{1.5}, Point{-2.0})[0], 0.0);
  EXPECT_EQ(jensen_defect(parse_function("poly:0,3"), Point{1.5}, Point{-2.0})[0], 0.0);
}

TEST(Defect, SquareHasKnownDefect) {
  // 7(8x^2 + 2y^2) - 28(2x^2 + 2y^2) + 3(2y^2) - 14(2x^2) = -36 y^2
  const auto f = parse_function("poly:0,0,1");
  EXPECT_EQ(mixed_defect(f, Point{1.0}, Point{1.0})[0], -36.0);
  EXPECT_EQ(mixed_defect(f, Point{5.0}, Point{2.0})[0], -144.0);
}

TEST(Defect, CubeHasKnownDefect) {
  const auto f = parse_function("poly:0,0,0,1");
  const double x = 1.5, y = -0.5;
  EXPECT_DOUBLE_EQ(mixed_defect(f, Point{x}, Point{y})[0], -84 * x * y * y + 18 * y * y * y);
}

TEST(Defect, OriginSliceOfEvenAndOddParts) {
  const auto fe = parse_function("poly:0,0,1");
  EXPECT_EQ(mixed_defect(fe, Point{0.0}, Point{3.0})[0], 3 * 36.0 - 48 * 9.0);
  const auto fo = parse_function("poly:0,0,0,1");
  EXPECT_EQ(mixed_defect(fo, Point{0.0}, Point{3.0})[0], 3 * (216.0 - 54.0));
}

TEST(Defect, Dispatcher) {
  const auto f = parse_function("poly:0,0,1");
  for (auto eq : {Equation::mixed, Equation::quartic, Equation::cauchy, Equation::jensen}) {
    EXPECT_EQ(parse_equation(to_string(eq)), eq);
  }
  EXPECT_EQ(defect(f, Equation::cauchy, Point{1.0}, Point{2.0})[0], 4.0);
  EXPECT_THROW(parse_equation("pexider"), Error);
  EXPECT_THROW(mixed_defect(f, Point{1.0}, Point{1.0, 2.0}), Error);
}

TEST(Pairs, RandomPairsSeeded) {
  const auto a = random_pairs(50, {-10, 10}, 3);
  const auto b = random_pairs(50, {-10, 10}, 3);
  EXPECT_EQ(a.xs, b.xs);
  EXPECT_EQ(a.ys, b.ys);
  EXPECT_EQ(a.size(), 50u);
  EXPECT_EQ(random_pairs(5, {-1, 1}, 3, 3).xs.front().dim(), 3u);
}

TEST(Pairs, ProductIsXMajor) {
  const auto gx = make_grid({{0, 1}}, 2, GridScheme::uniform);
  const auto gy = make_grid({{5, 6}}, 3, GridScheme::uniform);
  const auto p = product_pairs(gx, gy);
  ASSERT_EQ(p.size(), 6u);
  EXPECT_EQ(p.xs[2], Point{0.0});
  EXPECT_EQ(p.ys[2], Point{6.0});
  EXPECT_EQ(p.xs[3], Point{1.0});
}

TEST(DefectSup, ArgmaxAndTies) {
  const auto f = parse_function("poly:0,0,1");
  PairSet pairs;
  pairs.xs = {Point{0.0}, Point{1.0}, Point{2.0}, Point{3.0}};
  pairs.ys = {Point{1.0}, Point{-2.0}, Point{2.0}, Point{0.5}};
  const auto r = defect_sup(f, Equation::mixed, pairs, true);
  EXPECT_EQ(r.sup_defect, 144.0);
  EXPECT_EQ(r.argmax_x, Point{1.0});  // y = 2 ties with y = -2; lowest index wins
  EXPECT_EQ(r.pair_count, 4u);
  ASSERT_TRUE(r.per_pair);
  EXPECT_EQ(r.per_pair->size(), 4u);
  EXPECT_FALSE(defect_sup(f, Equation::mixed, pairs).per_pair);
  EXPECT_THROW(defect_sup(f, Equation::mixed, PairSet{}), Error);
}

TEST(DefectSup, PerturbationScalesWithAmplitude) {
  const auto pairs = random_pairs(2000, {-10, 10}, 1);
  const double small = defect_sup(parse_function("poly:0,1,0,0,1+noise:0.0001,none,2"), Equation::mixed, pairs).sup_defect;
  const double large = defect_sup(parse_function("poly:0,1,0,0,1+noise:0.01,none,2"), Equation::mixed, pairs).sup_defect;
  EXPECT_GT(small, 0.0);
  EXPECT_LE(small, 149 * 1e-4 * 1.01);
  EXPECT_NEAR(large / small, 100.0, 5.0);
}

TEST(Defect, JensenOfSquare) {
  EXPECT_EQ(jensen_defect(parse_function("poly:0,0,1"), Point{0.0}, Point{1.0})[0], 2.0);
}

TEST(Defect, SupDistanceOnSmallGrid) {
  const auto grid = make_grid({{-2.0, 2.0}}, 5, GridScheme::uniform);
  EXPECT_EQ(sup_distance(parse_function("poly:0,0,1"), parse_function("poly:0"), grid), 4.0);
}
