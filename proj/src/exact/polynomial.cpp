#include "qastab/exact/polynomial.hpp"

#include <algorithm>

#include "qastab/core.hpp"

namespace qastab::exact {

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

RationalPoly RationalPoly::monomial(int degree, Rational c) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "monomial degree must be >= 0");
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = std::move(c);
  return RationalPoly(std::move(v));
}

void RationalPoly::strip() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

bool RationalPoly::has_only_parity(bool odd) const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] != 0 && (k % 2 == 1) != odd) return false;
  }
  return true;
}

Rational RationalPoly::operator()(const Rational& t) const {
  Rational v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * t + *it;
  return v;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  strip();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  strip();
  return *this;
}

std::string RationalPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) out += ',';
    out += coeffs_[k].get_str();
  }
  return out;
}

Rational BivariatePoly::coeff(int i, int j) const {
  const auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

int BivariatePoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.first + m.second);
  return d;
}

void BivariatePoly::add_term(int i, int j, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BivariatePoly& BivariatePoly::operator+=(const BivariatePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.first, m.second, c);
  return *this;
}

BivariatePoly& BivariatePoly::operator-=(const BivariatePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.first, m.second, -c);
  return *this;
}

BivariatePoly& BivariatePoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Rational BivariatePoly::operator()(const Rational& x, const Rational& y) const {
  Rational v = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < m.first; ++i) t *= x;
    for (int j = 0; j < m.second; ++j) t *= y;
    v += t;
  }
  return v;
}

std::string BivariatePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Descending total degree, then descending power of x.
  std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    const int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da > db;
    return a.first.first > b.first.first;
  });
  bool first = true;
  for (const auto& [m, c] : ordered) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    auto factor = [&mono](const char* var, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += var;
      if (e > 1) mono += '^' + std::to_string(e);
    };
    factor("x", m.first);
    factor("y", m.second);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + '*' + mono;
    }
  }
  return out;
}

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BivariatePoly substitute(const RationalPoly& p, const Rational& a, const Rational& b) {
  BivariatePoly out;
  const auto& c = p.coeffs();
  for (std::size_t kk = 0; kk < c.size(); ++kk) {
    if (c[kk] == 0) continue;
    const int k = static_cast<int>(kk);
    // (a x + b y)^k = sum_j C(k,j) a^(k-j) b^j x^(k-j) y^j
    for (int j = 0; j <= k; ++j) {
      Rational t = c[kk] * Rational(binomial(k, j));
      for (int e = 0; e < k - j; ++e) t *= a;
      for (int e = 0; e < j; ++e) t *= b;
      out.add_term(k - j, j, t);
    }
  }
  return out;
}

BivariatePoly symbolic_mixed_defect(const RationalPoly& p) {
  BivariatePoly d;
  d += Rational(7) * (substitute(p, 2, 1) + substitute(p, 2, -1));
  d -= Rational(28) * (substitute(p, 1, 1) + substitute(p, 1, -1));
  d += Rational(3) * (substitute(p, 0, 2) - Rational(2) * substitute(p, 0, 1));
  d -= Rational(14) * (substitute(p, 2, 0) - Rational(4) * substitute(p, 1, 0));
  return d;
}

}  // namespace qastab::exact
