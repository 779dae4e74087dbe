#include "qastab/exact/rational.hpp"

#include <cctype>
#include <cmath>

#include "qastab/core.hpp"

namespace qastab::exact {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class integer(std::string_view s) {
  if (!is_integer_text(s)) throw Error(ErrorCode::Parse, "not an integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto s = trim(text);
  if (s.empty()) throw Error(ErrorCode::Parse, "empty rational");
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const mpz_class den = integer(trim(s.substr(slash + 1)));
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(s) + "'");
    Rational r(integer(trim(s.substr(0, slash))), den);
    r.canonicalize();
    return r;
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto whole = s.substr(0, dot);
    const auto frac = s.substr(dot + 1);
    const std::string digits = std::string(whole) + std::string(frac);
    if (frac.empty() || !is_integer_text(digits) ||
        !std::isdigit(static_cast<unsigned char>(frac.front()))) {
      throw Error(ErrorCode::Parse, "malformed decimal '" + std::string(s) + "'");
    }
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational r(integer(digits), den);
    r.canonicalize();
    return r;
  }
  return Rational(integer(s));
}

std::vector<Rational> parse_rational_list(std::string_view s) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(parse_rational(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

Rational from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "from_double of a non-finite value");
  return Rational(v);
}

}  // namespace qastab::exact
