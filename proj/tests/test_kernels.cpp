#include <gtest/gtest.h>

#include <omp.h>

#include <atomic>

#include "qastab/kernels.hpp"

using namespace qastab;
using kernels::Exec;

TEST(Kernels, UsesSeveralThreads) {
  omp_set_num_threads(4);
  EXPECT_GE(kernels::max_threads(), 1);
  std::atomic<int> count{0};
  kernels::for_each_index(1000, [&](std::size_t) { ++count; });
  EXPECT_EQ(count.load(), 1000);
}

TEST(Kernels, DefectNormsBitwiseEqual) {
  omp_set_num_threads(4);
  const auto f = parse_function("poly:0,1,0,0,1+noise:0.01,none,8+sin:0.3,2");
  const auto pairs = random_pairs(5000, {-10, 10}, 6);
  for (auto eq : {Equation::mixed, Equation::quartic, Equation::cauchy, Equation::jensen}) {
    EXPECT_EQ(kernels::defect_norms(f, eq, pairs.xs, pairs.ys, Exec::parallel),
              kernels::defect_norms(f, eq, pairs.xs, pairs.ys, Exec::serial));
  }
}

TEST(Kernels, SupDistanceBitwiseEqual) {
  omp_set_num_threads(4);
  const auto f = parse_function("poly:0,1,0,0,1+noise:0.01,none,8");
  const auto g = parse_function("poly:0,1,0,0,1");
  const auto grid = make_grid({{-3, 3}, {-1, 1}}, 60, GridScheme::uniform);
  const auto f2 = parse_function("poly:0,1,0,0,1+noise:0.01,none,8", 2);
  const auto g2 = parse_function("poly:0,1,0,0,1", 2);
  EXPECT_EQ(kernels::sup_distance(f2, g2, grid.points, Exec::parallel),
            kernels::sup_distance(f2, g2, grid.points, Exec::serial));
  EXPECT_THROW(kernels::sup_distance(f, g, {}, Exec::serial), Error);
}

TEST(Kernels, LowestFailingIndexIsReported) {
  omp_set_num_threads(4);
  for (auto exec : {Exec::parallel, Exec::serial}) {
    try {
      kernels::for_each_index(
          100,
          [](std::size_t i) {
            if (i == 37 || i == 90) throw Error(ErrorCode::InvalidArgument, "index " + std::to_string(i));
          },
          exec);
      FAIL();
    } catch (const Error& e) {
      EXPECT_NE(std::string(e.what()).find("index 37"), std::string::npos);
    }
  }
}

TEST(Kernels, DimensionMismatchPropagates) {
  const auto f = parse_function("poly:0,1");
  std::vector<Point> xs{Point{1.0}}, ys{Point{1.0, 2.0}};
  EXPECT_THROW(kernels::defect_norms(f, Equation::mixed, xs, ys), Error);
  std::vector<Point> one{Point{1.0}};
  EXPECT_THROW(kernels::defect_norms(f, Equation::mixed, one, std::span<const Point>{}), Error);
}
