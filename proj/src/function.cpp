#include "qastab/function.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <variant>

#include "qastab/kernels.hpp"

namespace qastab {

const char* to_string(Parity p) noexcept {
  switch (p) {
    case Parity::none: return "none";
    case Parity::even: return "even";
    case Parity::odd: return "odd";
  }
  return "none";
}

Parity parse_parity(std::string_view s) {
  if (s == "none") return Parity::none;
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  throw Error(ErrorCode::Parse, "parity must be none|even|odd, got '" + std::string(s) + "'");
}

namespace detail {

using NodePtr = std::shared_ptr<const FnNode>;

struct PolyNode {
  std::vector<double> coeffs;
};
struct SineNode {
  double amplitude;
  double frequency;
};
struct NoiseNode {
  double amplitude;
  Parity parity;
  std::uint64_t seed;
};
struct ZeroNode {};
struct SumNode {
  std::vector<NodePtr> terms;
};
struct ScaledNode {
  double factor;
  NodePtr child;
};
struct ProductNode {
  NodePtr lhs;
  NodePtr rhs;
};
struct CustomNode {
  std::string name;
  std::function<Point(const Point&)> fn;
};
struct NumericPartNode {
  NodePtr child;
  Parity parity;
};

struct FnNode {
  std::size_t dim;
  std::variant<PolyNode, SineNode, NoiseNode, ZeroNode, SumNode, ScaledNode, ProductNode,
               CustomNode, NumericPartNode>
      v;
};

}  // namespace detail

namespace {

using detail::FnNode;
using detail::NodePtr;

template <class T>
NodePtr make(std::size_t dim, T node) {
  return std::make_shared<const FnNode>(FnNode{dim, std::move(node)});
}

double raw_noise(const detail::NoiseNode& n, const Point& x, std::size_t component) {
  if (x.is_zero()) return 0.0;
  std::uint64_t h = mix64(n.seed ^ 0x243f6a8885a308d3ULL);
  h = mix64(h ^ static_cast<std::uint64_t>(component));
  for (double c : x.coords()) {
    const double folded = c == 0.0 ? 0.0 : c;
    h = mix64(h ^ std::bit_cast<std::uint64_t>(folded));
  }
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return n.amplitude * (2.0 * u - 1.0);
}

std::vector<double> eval_node(const FnNode& node, const Point& x);

struct Evaluator {
  const FnNode& node;
  const Point& x;

  std::vector<double> operator()(const detail::PolyNode& p) const {
    std::vector<double> out(x.dim(), 0.0);
    if (p.coeffs.empty()) return out;
    for (std::size_t j = 0; j < x.dim(); ++j) {
      const double t = x[j];
      double v = p.coeffs.back();
      for (std::size_t k = p.coeffs.size() - 1; k-- > 0;) v = v * t + p.coeffs[k];
      out[j] = v;
    }
    return out;
  }

  std::vector<double> operator()(const detail::SineNode& s) const {
    std::vector<double> out(x.dim());
    for (std::size_t j = 0; j < x.dim(); ++j) out[j] = s.amplitude * std::sin(s.frequency * x[j]);
    return out;
  }

  std::vector<double> operator()(const detail::NoiseNode& n) const {
    std::vector<double> out(x.dim());
    if (n.parity == Parity::none) {
      for (std::size_t j = 0; j < x.dim(); ++j) out[j] = raw_noise(n, x, j);
      return out;
    }
    const Point neg = -x;
    for (std::size_t j = 0; j < x.dim(); ++j) {
      const double a = raw_noise(n, x, j);
      const double b = raw_noise(n, neg, j);
      out[j] = n.parity == Parity::even ? 0.5 * (a + b) : 0.5 * (a - b);
    }
    return out;
  }

  std::vector<double> operator()(const detail::ZeroNode&) const {
    return std::vector<double>(x.dim(), 0.0);
  }

  std::vector<double> operator()(const detail::SumNode& s) const {
    std::vector<double> out(x.dim(), 0.0);
    for (const auto& t : s.terms) {
      const auto v = eval_node(*t, x);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += v[j];
    }
    return out;
  }

  std::vector<double> operator()(const detail::ScaledNode& s) const {
    auto v = eval_node(*s.child, x);
    for (double& c : v) c *= s.factor;
    return v;
  }

  std::vector<double> operator()(const detail::ProductNode& p) const {
    auto a = eval_node(*p.lhs, x);
    const auto b = eval_node(*p.rhs, x);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j];
    return a;
  }

  std::vector<double> operator()(const detail::CustomNode& c) const {
    const Point y = c.fn(x);
    if (y.dim() != node.dim) {
      throw Error(ErrorCode::DimensionMismatch, "custom function '" + c.name + "' returned wrong dimension");
    }
    return {y.coords().begin(), y.coords().end()};
  }

  std::vector<double> operator()(const detail::NumericPartNode& p) const {
    auto a = eval_node(*p.child, x);
    const auto b = eval_node(*p.child, -x);
    for (std::size_t j = 0; j < a.size(); ++j) {
      a[j] = p.parity == Parity::even ? 0.5 * (a[j] + b[j]) : 0.5 * (a[j] - b[j]);
    }
    return a;
  }
};

std::vector<double> eval_node(const FnNode& node, const Point& x) {
  return std::visit(Evaluator{node, x}, node.v);
}

bool is_zero_node(const NodePtr& n) { return std::holds_alternative<detail::ZeroNode>(n->v); }

NodePtr sum_of(std::size_t dim, std::vector<NodePtr> terms) {
  std::vector<NodePtr> kept;
  for (auto& t : terms) {
    if (is_zero_node(t)) continue;
    if (const auto* s = std::get_if<detail::SumNode>(&t->v)) {
      kept.insert(kept.end(), s->terms.begin(), s->terms.end());
    } else {
      kept.push_back(std::move(t));
    }
  }
  if (kept.empty()) return make(dim, detail::ZeroNode{});
  if (kept.size() == 1) return kept.front();
  return make(dim, detail::SumNode{std::move(kept)});
}

NodePtr product_of(std::size_t dim, NodePtr a, NodePtr b) {
  if (is_zero_node(a) || is_zero_node(b)) return make(dim, detail::ZeroNode{});
  return make(dim, detail::ProductNode{std::move(a), std::move(b)});
}

NodePtr part_of(const NodePtr& node, Parity parity);

struct PartBuilder {
  const NodePtr& self;
  Parity parity;

  NodePtr zero() const { return make(self->dim, detail::ZeroNode{}); }

  NodePtr operator()(const detail::PolyNode& p) const {
    std::vector<double> c(p.coeffs.size(), 0.0);
    bool any = false;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if ((k % 2 == 0) == (parity == Parity::even)) {
        c[k] = p.coeffs[k];
        any = any || c[k] != 0.0;
      }
    }
    if (!any) return zero();
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    return make(self->dim, detail::PolyNode{std::move(c)});
  }
  NodePtr operator()(const detail::SineNode&) const {
    return parity == Parity::odd ? self : zero();
  }
  NodePtr operator()(const detail::NoiseNode& n) const {
    if (n.parity == Parity::none) {
      return make(self->dim, detail::NoiseNode{n.amplitude, parity, n.seed});
    }
    return n.parity == parity ? self : zero();
  }
  NodePtr operator()(const detail::ZeroNode&) const { return self; }
  NodePtr operator()(const detail::SumNode& s) const {
    std::vector<NodePtr> parts;
    for (const auto& t : s.terms) parts.push_back(part_of(t, parity));
    return sum_of(self->dim, std::move(parts));
  }
  NodePtr operator()(const detail::ScaledNode& s) const {
    auto c = part_of(s.child, parity);
    if (is_zero_node(c)) return c;
    return make(self->dim, detail::ScaledNode{s.factor, std::move(c)});
  }
  NodePtr operator()(const detail::ProductNode& p) const {
    const auto ae = part_of(p.lhs, Parity::even);
    const auto ao = part_of(p.lhs, Parity::odd);
    const auto be = part_of(p.rhs, Parity::even);
    const auto bo = part_of(p.rhs, Parity::odd);
    if (parity == Parity::even) {
      return sum_of(self->dim, {product_of(self->dim, ae, be), product_of(self->dim, ao, bo)});
    }
    return sum_of(self->dim, {product_of(self->dim, ae, bo), product_of(self->dim, ao, be)});
  }
  NodePtr operator()(const detail::CustomNode&) const {
    return make(self->dim, detail::NumericPartNode{self, parity});
  }
  NodePtr operator()(const detail::NumericPartNode& p) const {
    return p.parity == parity ? self : zero();
  }
};

NodePtr part_of(const NodePtr& node, Parity parity) {
  if (parity == Parity::none) return node;
  return std::visit(PartBuilder{node, parity}, node->v);
}

bool structural_parity(const FnNode& node, Parity parity);

struct ParityProbe {
  Parity parity;

  bool operator()(const detail::PolyNode& p) const {
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
      if (p.coeffs[k] != 0.0 && (k % 2 == 0) != (parity == Parity::even)) return false;
    }
    return true;
  }
  bool operator()(const detail::SineNode& s) const {
    return parity == Parity::odd || s.amplitude == 0.0;
  }
  bool operator()(const detail::NoiseNode& n) const {
    return n.parity == parity || n.amplitude == 0.0;
  }
  bool operator()(const detail::ZeroNode&) const { return true; }
  bool operator()(const detail::SumNode& s) const {
    for (const auto& t : s.terms) {
      if (!structural_parity(*t, parity)) return false;
    }
    return true;
  }
  bool operator()(const detail::ScaledNode& s) const { return structural_parity(*s.child, parity); }
  bool operator()(const detail::ProductNode& p) const {
    const Parity other = parity == Parity::even ? Parity::odd : Parity::even;
    return (structural_parity(*p.lhs, Parity::even) && structural_parity(*p.rhs, parity)) ||
           (structural_parity(*p.lhs, Parity::odd) && structural_parity(*p.rhs, other));
  }
  bool operator()(const detail::CustomNode&) const { return false; }
  bool operator()(const detail::NumericPartNode& p) const { return p.parity == parity; }
};

bool structural_parity(const FnNode& node, Parity parity) {
  if (parity == Parity::none) return true;
  return std::visit(ParityProbe{parity}, node.v);
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

std::string describe_node(const FnNode& node);

struct Describer {
  std::string operator()(const detail::PolyNode& p) const {
    return "poly:" + (p.coeffs.empty() ? std::string("0") : join_doubles(p.coeffs));
  }
  std::string operator()(const detail::SineNode& s) const {
    return "sin:" + format_double(s.amplitude) + "," + format_double(s.frequency);
  }
  std::string operator()(const detail::NoiseNode& n) const {
    return "noise:" + format_double(n.amplitude) + "," + to_string(n.parity) + "," +
           std::to_string(n.seed);
  }
  std::string operator()(const detail::ZeroNode&) const { return "poly:0"; }
  std::string operator()(const detail::SumNode& s) const {
    std::string out;
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
      if (i) out += '+';
      out += describe_node(*s.terms[i]);
    }
    return out;
  }
  std::string operator()(const detail::ScaledNode& s) const {
    return format_double(s.factor) + "*(" + describe_node(*s.child) + ")";
  }
  std::string operator()(const detail::ProductNode& p) const {
    return "(" + describe_node(*p.lhs) + ")*(" + describe_node(*p.rhs) + ")";
  }
  std::string operator()(const detail::CustomNode& c) const { return "custom:" + c.name; }
  std::string operator()(const detail::NumericPartNode& p) const {
    return std::string(to_string(p.parity)) + "_part(" + describe_node(*p.child) + ")";
  }
};

std::string describe_node(const FnNode& node) { return std::visit(Describer{}, node.v); }

void check_dim(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "function dimension must be >= 1");
}

void check_finite_param(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be finite");
}

}  // namespace

EvaluableFn::EvaluableFn(std::shared_ptr<const detail::FnNode> node) : node_(std::move(node)) {}

EvaluableFn EvaluableFn::poly(std::vector<double> coeffs, std::size_t dim) {
  check_dim(dim);
  for (double c : coeffs) check_finite_param(c, "polynomial coefficient");
  return EvaluableFn(make(dim, detail::PolyNode{std::move(coeffs)}));
}

EvaluableFn EvaluableFn::sine(double amplitude, double frequency, std::size_t dim) {
  check_dim(dim);
  check_finite_param(amplitude, "sine amplitude");
  check_finite_param(frequency, "sine frequency");
  return EvaluableFn(make(dim, detail::SineNode{amplitude, frequency}));
}

EvaluableFn EvaluableFn::noise(double amplitude, Parity parity, std::uint64_t seed,
                               std::size_t dim) {
  check_dim(dim);
  check_finite_param(amplitude, "noise amplitude");
  if (amplitude < 0.0) throw Error(ErrorCode::InvalidArgument, "noise amplitude must be >= 0");
  return EvaluableFn(make(dim, detail::NoiseNode{amplitude, parity, seed}));
}

EvaluableFn EvaluableFn::zero(std::size_t dim) {
  check_dim(dim);
  return EvaluableFn(make(dim, detail::ZeroNode{}));
}

EvaluableFn EvaluableFn::custom(std::string name, std::size_t dim,
                                std::function<Point(const Point&)> fn) {
  check_dim(dim);
  if (!fn) throw Error(ErrorCode::InvalidArgument, "custom function is empty");
  return EvaluableFn(make(dim, detail::CustomNode{std::move(name), std::move(fn)}));
}

EvaluableFn EvaluableFn::product(const EvaluableFn& f, const EvaluableFn& g) {
  if (f.dim() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "product of functions");
  return EvaluableFn(product_of(f.dim(), f.node_, g.node_));
}

EvaluableFn operator+(const EvaluableFn& f, const EvaluableFn& g) {
  if (f.dim() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "sum of functions");
  return EvaluableFn(sum_of(f.dim(), {f.node_, g.node_}));
}

EvaluableFn operator-(const EvaluableFn& f, const EvaluableFn& g) { return f + (-1.0) * g; }

EvaluableFn operator*(double s, const EvaluableFn& f) {
  check_finite_param(s, "scale factor");
  if (s == 0.0) return EvaluableFn::zero(f.dim());
  return EvaluableFn(make(f.dim(), detail::ScaledNode{s, f.node_}));
}

Point EvaluableFn::operator()(const Point& x) const {
  if (x.dim() != node_->dim) {
    throw Error(ErrorCode::DimensionMismatch, "function of dimension " + std::to_string(node_->dim) +
                                                  " evaluated at a point of dimension " +
                                                  std::to_string(x.dim()));
  }
  auto v = eval_node(*node_, x);
  for (double c : v) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::NonFinite, "non-finite value of " + describe() + " at " + x.to_string());
    }
  }
  return Point(std::move(v));
}

std::size_t EvaluableFn::dim() const noexcept { return node_->dim; }

std::string EvaluableFn::describe() const { return describe_node(*node_); }

EvaluableFn EvaluableFn::part(Parity parity) const { return EvaluableFn(part_of(node_, parity)); }

bool EvaluableFn::has_structural_parity(Parity parity) const {
  return structural_parity(*node_, parity);
}

Point eval_fn(const EvaluableFn& f, const Point& x) { return f(x); }

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double number(std::string_view s) {
  const std::string str(trim(s));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "expected a number, got '" + str + "'");
  }
  if (used != str.size()) throw Error(ErrorCode::Parse, "expected a number, got '" + str + "'");
  return v;
}

std::uint64_t unsigned_number(std::string_view s) {
  const std::string str(trim(s));
  if (str.empty() || !std::all_of(str.begin(), str.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw Error(ErrorCode::Parse, "expected an unsigned integer, got '" + str + "'");
  }
  try {
    return std::stoull(str);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "integer out of range: '" + str + "'");
  }
}

EvaluableFn parse_term(std::string_view term, std::size_t dim) {
  term = trim(term);
  const auto colon = term.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::Parse, "function term needs 'kind:args', got '" + std::string(term) + "'");
  }
  const auto kind = trim(term.substr(0, colon));
  const auto args = split(term.substr(colon + 1), ',');
  if (kind == "poly") {
    std::vector<double> c;
    for (auto a : args) c.push_back(number(a));
    return EvaluableFn::poly(std::move(c), dim);
  }
  if (kind == "sin") {
    if (args.size() != 2) throw Error(ErrorCode::Parse, "sin needs amp,freq");
    return EvaluableFn::sine(number(args[0]), number(args[1]), dim);
  }
  if (kind == "noise") {
    if (args.size() != 3) throw Error(ErrorCode::Parse, "noise needs amp,parity,seed");
    return EvaluableFn::noise(number(args[0]), parse_parity(trim(args[1])), unsigned_number(args[2]),
                              dim);
  }
  throw Error(ErrorCode::Parse, "unknown function kind '" + std::string(kind) + "'");
}

}  // namespace

EvaluableFn parse_function(std::string_view spec, std::size_t dim) {
  spec = trim(spec);
  if (spec.empty()) throw Error(ErrorCode::Parse, "empty function spec");
  // '+' separates terms only when a term tag follows; "1e+3" stays intact.
  std::vector<std::string_view> terms;
  std::size_t start = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (spec[i] == '+' && i + 1 < spec.size() && std::isalpha(static_cast<unsigned char>(spec[i + 1]))) {
      terms.push_back(spec.substr(start, i - start));
      start = i + 1;
    }
  }
  terms.push_back(spec.substr(start));
  EvaluableFn f = parse_term(terms.front(), dim);
  for (std::size_t i = 1; i < terms.size(); ++i) f = f + parse_term(terms[i], dim);
  return f;
}

double sup_distance(const EvaluableFn& f, const EvaluableFn& g, const Grid& grid) {
  return kernels::sup_distance(f, g, grid.points);
}

}  // namespace qastab
