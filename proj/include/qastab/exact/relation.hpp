#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qastab/exact/polynomial.hpp"
#include "qastab/function.hpp"

namespace qastab::exact {

/// A linear relation sum_k c_k f(a_k x + b_k y) = 0 in an unknown f, keyed by
/// the argument (a, b). Zero coefficients are never stored.
class Relation {
 public:
  using Arg = std::pair<int, int>;

  Relation() = default;
  /// Terms as (coefficient, a, b).
  Relation(std::initializer_list<std::tuple<Rational, int, int>> terms);

  const std::map<Arg, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coeff(const Arg& arg) const;

  void add(int a, int b, const Rational& c);

  /// Replaces x by alpha x + beta y and y by gamma x + delta y.
  Relation substitute(int alpha, int beta, int gamma, int delta) const;

  /// Normal form modulo f(0) = 0, the parity of f, and (when homogeneous)
  /// f(2z) = 2 f(z) for odd f or f(2z) = 16 f(z) for even f. Arguments are
  /// sign-normalised so their first nonzero component is positive.
  Relation canonical(Parity parity, bool homogeneous) const;

  /// sum_k c_k p(a_k x + b_k y).
  BivariatePoly evaluate(const RationalPoly& p) const;

  Relation& operator+=(const Relation& o);
  Relation& operator*=(const Rational& s);
  friend Relation operator+(Relation a, const Relation& b) { return a += b; }
  friend Relation operator*(const Rational& s, Relation r) { return r *= s; }
  friend bool operator==(const Relation& a, const Relation& b) = default;

  /// "f(2x+y) + f(2x-y) - 4f(x+y) - 4f(x-y) + 4f(x) = 0"
  std::string to_string() const;

 private:
  std::map<Arg, Rational> terms_;
};

}  // namespace qastab::exact
