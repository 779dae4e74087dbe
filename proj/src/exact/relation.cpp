#include "qastab/exact/relation.hpp"

#include <cstdlib>

namespace qastab::exact {

Relation::Relation(std::initializer_list<std::tuple<Rational, int, int>> terms) {
  for (const auto& [c, a, b] : terms) add(a, b, c);
}

Rational Relation::coeff(const Arg& arg) const {
  const auto it = terms_.find(arg);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Relation::add(int a, int b, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace({a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Relation Relation::substitute(int alpha, int beta, int gamma, int delta) const {
  Relation out;
  for (const auto& [arg, c] : terms_) {
    const auto [a, b] = arg;
    out.add(a * alpha + b * gamma, a * beta + b * delta, c);
  }
  return out;
}

Relation Relation::canonical(Parity parity, bool homogeneous) const {
  Relation out;
  for (const auto& [arg, c0] : terms_) {
    auto [a, b] = arg;
    Rational c = c0;
    if (a == 0 && b == 0) continue;
    if (parity != Parity::none && (a < 0 || (a == 0 && b < 0))) {
      a = -a;
      b = -b;
      if (parity == Parity::odd) c = -c;
    }
    if (homogeneous && parity != Parity::none) {
      while (a % 2 == 0 && b % 2 == 0) {
        a /= 2;
        b /= 2;
        c *= parity == Parity::odd ? 2 : 16;
      }
    }
    out.add(a, b, c);
  }
  return out;
}

BivariatePoly Relation::evaluate(const RationalPoly& p) const {
  BivariatePoly out;
  for (const auto& [arg, c] : terms_) out += c * exact::substitute(p, arg.first, arg.second);
  return out;
}

Relation& Relation::operator+=(const Relation& o) {
  for (const auto& [arg, c] : o.terms_) add(arg.first, arg.second, c);
  return *this;
}

Relation& Relation::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [arg, c] : terms_) c *= s;
  return *this;
}

namespace {

std::string linear_form(int a, int b) {
  std::string out;
  auto piece = [&out](int k, const char* var) {
    if (k == 0) return;
    if (!out.empty()) out += k < 0 ? "-" : "+";
    else if (k < 0) out += "-";
    if (std::abs(k) != 1) out += std::to_string(std::abs(k));
    out += var;
  };
  piece(a, "x");
  piece(b, "y");
  return out.empty() ? "0" : out;
}

}  // namespace

std::string Relation::to_string() const {
  if (terms_.empty()) return "0 = 0";
  std::string out;
  bool first = true;
  for (const auto& [arg, c] : terms_) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (mag != 1) out += mag.get_str();
    out += "f(" + linear_form(arg.first, arg.second) + ")";
  }
  return out + " = 0";
}

}  // namespace qastab::exact
