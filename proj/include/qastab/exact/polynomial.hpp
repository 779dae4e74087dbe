#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qastab/exact/rational.hpp"

namespace qastab::exact {

/// Univariate polynomial in t, ascending coefficients, trailing zeros
/// stripped; the empty list is the zero polynomial.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs);

  static RationalPoly monomial(int degree, Rational c = 1);

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Rational coeff(int k) const;

  /// True when every nonzero coefficient has even degree (odd = false) or
  /// odd degree (odd = true).
  bool has_only_parity(bool odd) const;

  Rational operator()(const Rational& t) const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& s);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator*(const Rational& s, RationalPoly p) { return p *= s; }
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void strip();
  std::vector<Rational> coeffs_;
};

/// Polynomial in x, y; the key (i, j) is the monomial x^i y^j. No zero
/// entries are stored.
class BivariatePoly {
 public:
  using Monomial = std::pair<int, int>;

  BivariatePoly() = default;

  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coeff(int i, int j) const;
  int total_degree() const;

  void add_term(int i, int j, const Rational& c);

  BivariatePoly& operator+=(const BivariatePoly& o);
  BivariatePoly& operator-=(const BivariatePoly& o);
  BivariatePoly& operator*=(const Rational& s);
  friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
  friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly& b) { return a -= b; }
  friend BivariatePoly operator*(const Rational& s, BivariatePoly p) { return p *= s; }
  friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) = default;

  Rational operator()(const Rational& x, const Rational& y) const;

  /// "4*x^2 + 4*x*y + y^2"; "0" for the zero polynomial.
  std::string to_string() const;

 private:
  std::map<Monomial, Rational> terms_;
};

/// p(a x + b y) by binomial expansion.
BivariatePoly substitute(const RationalPoly& p, const Rational& a, const Rational& b);

/// 7[p(2x+y)+p(2x-y)] - 28[p(x+y)+p(x-y)] + 3[p(2y)-2p(y)] - 14[p(2x)-4p(x)]
BivariatePoly symbolic_mixed_defect(const RationalPoly& p);

mpz_class binomial(int n, int k);

}  // namespace qastab::exact
