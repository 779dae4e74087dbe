#include "qastab/control.hpp"

#include <cmath>
#include <fstream>

namespace qastab {

namespace {

double parse_double(std::string_view s, const char* what) {
  std::string str(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, std::string("cannot parse ") + what + " from '" + str + "'");
  }
  if (used != str.size()) {
    throw Error(ErrorCode::Parse, std::string("trailing characters in ") + what + " '" + str + "'");
  }
  return v;
}

}  // namespace

ControlFn ControlFn::constant(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "constant control requires finite epsilon >= 0");
  }
  return ControlFn(Constant{epsilon});
}

ControlFn ControlFn::power(double theta, double p) {
  if (!(theta >= 0.0) || !std::isfinite(theta) || !std::isfinite(p)) {
    throw Error(ErrorCode::InvalidArgument, "power control requires finite theta >= 0 and finite p");
  }
  return ControlFn(Power{theta, p});
}

ControlFn ControlFn::custom(std::vector<double> orbit_values) {
  if (orbit_values.empty()) throw Error(ErrorCode::InvalidArgument, "custom control table is empty");
  for (double v : orbit_values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "custom control values must be finite and >= 0");
    }
  }
  return ControlFn(Custom{std::move(orbit_values)});
}

ControlFn ControlFn::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::Parse, "control spec needs a 'kind:' prefix: " + std::string(spec));
  }
  const auto kind = spec.substr(0, colon);
  const auto body = spec.substr(colon + 1);
  if (kind == "const") return constant(parse_double(body, "epsilon"));
  if (kind == "power") {
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorCode::Parse, "power control needs THETA,P");
    return power(parse_double(body.substr(0, comma), "theta"),
                 parse_double(body.substr(comma + 1), "p"));
  }
  if (kind == "custom") {
    std::ifstream in{std::string(body)};
    if (!in) throw Error(ErrorCode::Io, "cannot open custom control file '" + std::string(body) + "'");
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto last = line.find_last_not_of(" \t\r");
      values.push_back(parse_double(std::string_view(line).substr(first, last - first + 1),
                                    "custom control value"));
    }
    return custom(std::move(values));
  }
  throw Error(ErrorCode::Parse, "unknown control kind '" + std::string(kind) + "'");
}

namespace {

double power_term(double norm, double p) {
  if (norm == 0.0) return 0.0;
  return std::pow(norm, p);
}

}  // namespace

double ControlFn::operator()(const Point& x, const Point& y) const {
  require_same_dim(x, y, "control evaluation");
  if (const auto* c = std::get_if<Constant>(&v_)) return c->epsilon;
  if (const auto* pw = std::get_if<Power>(&v_)) {
    const double nx = x.norm();
    const double ny = y.norm();
    if (pw->p < 0.0 && nx == 0.0 && ny == 0.0) {
      throw Error(ErrorCode::InvalidArgument, "power control with p < 0 evaluated at (0, 0)");
    }
    return pw->theta * (power_term(nx, pw->p) + power_term(ny, pw->p));
  }
  throw Error(ErrorCode::InvalidArgument, "custom control is tabulated along an orbit only");
}

double ControlFn::at_origin_slice(const Point& y) const {
  if (const auto* pw = std::get_if<Power>(&v_); pw && pw->p < 0.0 && y.is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "power control with p < 0 evaluated at y = 0");
  }
  return (*this)(Point::zero(y.dim()), y);
}

double ControlFn::growth_exponent() const {
  if (is_constant()) return 0.0;
  if (is_power()) return as_power().p;
  throw Error(ErrorCode::InvalidArgument, "custom control has no analytic exponent");
}

std::string ControlFn::describe() const {
  if (const auto* c = std::get_if<Constant>(&v_)) return "const:" + format_double(c->epsilon);
  if (const auto* pw = std::get_if<Power>(&v_)) return "power:" + format_double(pw->theta) + "," + format_double(pw->p);
  return "custom:" + std::to_string(std::get<Custom>(v_).orbit_values.size()) + " values";
}

}  // namespace qastab
