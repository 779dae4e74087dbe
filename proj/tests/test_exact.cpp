#include <gtest/gtest.h>

#include "qastab/exact/linear_algebra.hpp"
#include "qastab/exact/polynomial.hpp"
#include "qastab/exact/rational.hpp"
#include "qastab/exact/relation.hpp"
#include "qastab/exact/solution_space.hpp"

using namespace qastab;
using namespace qastab::exact;

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("-7/28"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("12"), Rational(12));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational(""), Error);
  EXPECT_EQ(parse_rational_list("0, 1/2 ,3").size(), 3u);
  EXPECT_EQ(to_string(parse_rational("6/-4")), "-3/2");
}

TEST(Rational, DoubleConversionIsExact) {
  EXPECT_EQ(from_double(0.1), Rational(mpz_class("3602879701896397"), mpz_class("36028797018963968")));
  EXPECT_EQ(to_double(from_double(0.1)), 0.1);
}

TEST(RationalPoly, StripsAndEvaluates) {
  const RationalPoly p({0, 1, 0, 0, 1, 0, 0});
  EXPECT_EQ(p.degree(), 4);
  EXPECT_EQ(p(Rational(1, 2)), Rational(9, 16));
  EXPECT_TRUE(p.has_only_parity(true) == false);
  EXPECT_TRUE(RationalPoly({0, 1, 0, 5}).has_only_parity(true));
  EXPECT_TRUE(RationalPoly().is_zero());
  EXPECT_EQ(RationalPoly({1, 2}) + RationalPoly({-1, -2}), RationalPoly());
}

TEST(Bivariate, SubstituteBinomial) {
  const auto b = substitute(RationalPoly({0, 0, 1}), 2, 1);
  EXPECT_EQ(b.to_string(), "4*x^2 + 4*x*y + y^2");
  EXPECT_EQ(binomial(10, 3), 120);
  const auto c = substitute(RationalPoly({0, 0, 0, 0, 1}), 1, -1);
  EXPECT_EQ(c.coeff(2, 2), 6);
  EXPECT_EQ(c.coeff(1, 3), -4);
}

TEST(SymbolicDefect, Monomials) {
  EXPECT_TRUE(symbolic_mixed_defect(RationalPoly({0, 1})).is_zero());
  EXPECT_TRUE(symbolic_mixed_defect(RationalPoly({0, 0, 0, 0, 1})).is_zero());
  EXPECT_TRUE(symbolic_mixed_defect(RationalPoly({0, Rational(-3, 7), 0, 0, Rational(11, 5)})).is_zero());
  EXPECT_EQ(symbolic_mixed_defect(RationalPoly({0, 0, 1})).to_string(), "-36*y^2");
  const auto cube = symbolic_mixed_defect(RationalPoly({0, 0, 0, 1}));
  EXPECT_EQ(cube.coeff(1, 2), -84);
  EXPECT_EQ(cube.coeff(0, 3), 18);
  EXPECT_EQ(cube.terms().size(), 2u);
  // A nonzero constant breaks the equation too: 7+7-28-28+3-6-14+56 = -3.
  EXPECT_EQ(symbolic_mixed_defect(RationalPoly({1})).coeff(0, 0), -3);
}

TEST(LinearAlgebra, NullSpaceAndSolve) {
  Matrix m{{1, 2, 3}, {2, 4, 6}};
  const auto ns = null_space(m, 3);
  ASSERT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_EQ(v[0] + 2 * v[1] + 3 * v[2], 0);
  const auto x = solve(Matrix{{1, 1}, {1, -1}}, 2, Vector{3, 1});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 2);
  EXPECT_EQ((*x)[1], 1);
  EXPECT_FALSE(solve(Matrix{{1, 1}, {1, 1}}, 2, Vector{1, 2}));
  Matrix r{{0, 2, 4}, {1, 1, 1}};
  EXPECT_EQ(rref(r, 3), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r[0][2], -1);
  EXPECT_EQ(r[1][2], 2);
}

TEST(Relation, EvaluateAndSubstitute) {
  // f(x+y) - f(x) - f(y)
  const Relation cauchy{{1, 1, 1}, {-1, 1, 0}, {-1, 0, 1}};
  EXPECT_TRUE(cauchy.evaluate(RationalPoly({0, 5})).is_zero());
  EXPECT_EQ(cauchy.evaluate(RationalPoly({0, 0, 1})).to_string(), "2*x*y");
  // y -> x gives f(2x) - 2f(x).
  const auto doubled = cauchy.substitute(1, 0, 1, 0);
  EXPECT_EQ(doubled.coeff({2, 0}), 1);
  EXPECT_EQ(doubled.coeff({1, 0}), -2);
}

TEST(Relation, CanonicalUsesParity) {
  const Relation r{{1, -1, 1}, {1, 1, -1}};  // f(-x+y) + f(x-y)
  EXPECT_TRUE(r.canonical(Parity::odd, false).is_zero());
  EXPECT_EQ(r.canonical(Parity::even, false).coeff({1, -1}), 2);
  const Relation h{{1, 2, 0}, {-16, 1, 0}};
  EXPECT_TRUE(h.canonical(Parity::even, true).is_zero());
  EXPECT_FALSE(h.canonical(Parity::even, false).is_zero());
  const Relation constant{{3, 0, 0}};
  EXPECT_TRUE(constant.canonical(Parity::odd, false).is_zero());
}

TEST(SolutionSpace, SpanOfTAndT4) {
  EXPECT_TRUE(solve_polynomial_basis(0).empty());
  const auto one = solve_polynomial_basis(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], RationalPoly::monomial(1));
  for (int d : {6, 12}) {
    const auto b = solve_polynomial_basis(d);
    ASSERT_EQ(b.size(), 2u) << d;
    EXPECT_EQ(b[0], RationalPoly::monomial(1));
    EXPECT_EQ(b[1], RationalPoly::monomial(4));
  }
}
