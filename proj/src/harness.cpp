#include "qastab/harness.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qastab/bounds.hpp"
#include "qastab/control.hpp"

namespace qastab {

using json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view key, std::string_view v) {
  const std::string s(trim(v));
  std::size_t used = 0;
  try {
    const double d = std::stod(s, &used);
    if (used == s.size()) return d;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Parse, std::string(key) + ": expected a number, got '" + s + "'");
}

long long to_integer(std::string_view key, std::string_view v) {
  const std::string s(trim(v));
  std::size_t used = 0;
  try {
    const long long n = std::stoll(s, &used);
    if (used == s.size()) return n;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Parse, std::string(key) + ": expected an integer, got '" + s + "'");
}

Interval parse_range(std::string_view v) {
  const auto comma = v.find(',');
  if (comma == std::string_view::npos) throw Error(ErrorCode::Parse, "range: expected lo,hi");
  return {to_double("range", v.substr(0, comma)), to_double("range", v.substr(comma + 1))};
}

}  // namespace

std::vector<Point> parse_points(std::string_view s) {
  std::vector<Point> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    const auto item = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(Point{to_double("points", item)});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "function_spec") {
    cfg.function_spec = std::string(value);
  } else if (key == "equation") {
    cfg.equation = parse_equation(value);
  } else if (key == "points") {
    cfg.points = parse_points(value);
  } else if (key == "strategy") {
    cfg.strategy = parse_strategy(value);
  } else if (key == "tol") {
    cfg.tol = to_double(key, value);
  } else if (key == "n_max") {
    cfg.n_max = static_cast<int>(to_integer(key, value));
  } else if (key == "control") {
    cfg.control = std::string(value);
  } else if (key == "seed") {
    const auto n = to_integer(key, value);
    if (n < 0) throw Error(ErrorCode::Parse, "seed must be unsigned");
    cfg.seed = static_cast<std::uint64_t>(n);
  } else if (key == "csv_path") {
    cfg.csv_path = std::string(value);
  } else if (key == "json_path") {
    cfg.json_path = std::string(value);
  } else if (key == "pairs") {
    const auto n = to_integer(key, value);
    if (n < 1) throw Error(ErrorCode::Parse, "pairs must be >= 1");
    cfg.pairs = static_cast<std::size_t>(n);
  } else if (key == "range") {
    cfg.range = parse_range(value);
  } else {
    throw Error(ErrorCode::Parse, "unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = line;
    if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    apply_setting(cfg, trim(v.substr(0, eq)), v.substr(eq + 1));
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.function_spec.empty()) throw Error(ErrorCode::InvalidArgument, "function_spec is required");
  if (cfg.points.empty()) throw Error(ErrorCode::InvalidArgument, "points must be nonempty");
  if (!(cfg.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
  if (cfg.n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  if (!(cfg.range.lo < cfg.range.hi)) throw Error(ErrorCode::InvalidArgument, "range needs lo < hi");
  if (cfg.control != "empirical") (void)ControlFn::parse(cfg.control);
}

int ExperimentReport::exit_status() const noexcept {
  return summary.all_converged && summary.all_within_bound ? 0 : 2;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::size_t dim = cfg.points.front().dim();
  const EvaluableFn f = parse_function(cfg.function_spec, dim);
  const EvaluableFn fe = even_part(f);
  const EvaluableFn fo = odd_part(f);
  std::optional<ControlFn> psi;
  if (cfg.control != "empirical") psi = ControlFn::parse(cfg.control);

  ExtractionOptions opt;
  opt.tol = cfg.tol;
  opt.n_max = cfg.n_max;
  const auto ex = extract_mixed(f, cfg.points, cfg.strategy, opt);

  ExperimentReport rep;
  rep.rows.resize(ex.points.size());
  kernels::for_each_index(ex.points.size(), [&](std::size_t i) {
    const auto& pe = ex.points[i];
    const auto& q = *pe.quartic;
    const auto& a = *pe.additive;
    ExperimentRow& row = rep.rows[i];
    row.point = pe.point;
    row.q_estimate = q.value;
    row.a_estimate = a.value;
    row.residual = ((fe(pe.point) - q.value) + (fo(pe.point) - a.value)).norm();
    row.bound_empirical =
        empirical_cauchy_bound(fe, pe.point, q.trace.n_used, q.trace.mode).rhs +
        empirical_cauchy_bound(fo, pe.point, a.trace.n_used, a.trace.mode).rhs;
    if (psi && !psi->is_custom()) {
      try {
        row.bound_theoretical = component_bound(q.trace.mode, *psi, pe.point).total_upper +
                                component_bound(a.trace.mode, *psi, pe.point).total_upper;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DivergentSeries) throw;
      }
    }
    row.within_bound = row.residual <= row.bound_empirical * (1.0 + kWithinBoundSlack);
    row.n_used = std::max(q.trace.n_used, a.trace.n_used);
    row.converged = q.trace.converged && a.trace.converged;
  });

  const auto pairs = random_pairs(cfg.pairs, cfg.range, cfg.seed, dim);
  rep.summary.sup_defect = defect_sup(f, cfg.equation, pairs).sup_defect;
  rep.summary.equation = to_string(cfg.equation);
  rep.summary.strategy = to_string(cfg.strategy);
  rep.summary.seed = cfg.seed;
  rep.summary.tool_version = kToolVersion;
  rep.summary.function_spec = cfg.function_spec;
  rep.summary.control = cfg.control;
  rep.summary.all_converged = true;
  rep.summary.all_within_bound = true;
  for (const auto& r : rep.rows) {
    rep.summary.all_converged = rep.summary.all_converged && r.converged;
    rep.summary.all_within_bound = rep.summary.all_within_bound && r.within_bound;
  }
  return rep;
}

namespace {

json point_json(const Point& p) {
  json a = json::array();
  for (double c : p.coords()) a.push_back(c);
  return a;
}

Point point_from(const json& j) {
  std::vector<double> c;
  for (const auto& v : j) c.push_back(v.get<double>());
  return Point(std::move(c));
}

}  // namespace

std::string report_csv(const ExperimentReport& report) {
  std::string out = "point,q_estimate,a_estimate,residual,bound_empirical,bound_theoretical,within_bound,n_used\n";
  for (const auto& r : report.rows) {
    out += r.point.to_string() + ',' + r.q_estimate.to_string() + ',' + r.a_estimate.to_string() + ',' +
           format_double(r.residual) + ',' + format_double(r.bound_empirical) + ',' +
           (r.bound_theoretical ? format_double(*r.bound_theoretical) : std::string()) + ',' +
           (r.within_bound ? "true" : "false") + ',' + std::to_string(r.n_used) + '\n';
  }
  return out;
}

std::string report_json(const ExperimentReport& report) {
  json j;
  const auto& s = report.summary;
  j["summary"] = {{"sup_defect", s.sup_defect},       {"equation", s.equation},
                  {"strategy", s.strategy},           {"seed", s.seed},
                  {"tool_version", s.tool_version},   {"function_spec", s.function_spec},
                  {"control", s.control},             {"all_converged", s.all_converged},
                  {"all_within_bound", s.all_within_bound}};
  j["rows"] = json::array();
  for (const auto& r : report.rows) {
    json row;
    row["point"] = point_json(r.point);
    row["q_estimate"] = point_json(r.q_estimate);
    row["a_estimate"] = point_json(r.a_estimate);
    row["residual"] = r.residual;
    row["bound_empirical"] = r.bound_empirical;
    row["bound_theoretical"] = r.bound_theoretical ? json(*r.bound_theoretical) : json(nullptr);
    row["within_bound"] = r.within_bound;
    row["n_used"] = r.n_used;
    row["converged"] = r.converged;
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

ExperimentReport parse_report_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("report JSON: ") + e.what());
  }
  ExperimentReport rep;
  try {
    const auto& s = j.at("summary");
    rep.summary.sup_defect = s.at("sup_defect").get<double>();
    rep.summary.equation = s.at("equation").get<std::string>();
    rep.summary.strategy = s.at("strategy").get<std::string>();
    rep.summary.seed = s.at("seed").get<std::uint64_t>();
    rep.summary.tool_version = s.at("tool_version").get<std::string>();
    rep.summary.function_spec = s.at("function_spec").get<std::string>();
    rep.summary.control = s.at("control").get<std::string>();
    rep.summary.all_converged = s.at("all_converged").get<bool>();
    rep.summary.all_within_bound = s.at("all_within_bound").get<bool>();
    for (const auto& r : j.at("rows")) {
      ExperimentRow row;
      row.point = point_from(r.at("point"));
      row.q_estimate = point_from(r.at("q_estimate"));
      row.a_estimate = point_from(r.at("a_estimate"));
      row.residual = r.at("residual").get<double>();
      row.bound_empirical = r.at("bound_empirical").get<double>();
      if (!r.at("bound_theoretical").is_null()) row.bound_theoretical = r.at("bound_theoretical").get<double>();
      row.within_bound = r.at("within_bound").get<bool>();
      row.n_used = r.at("n_used").get<int>();
      row.converged = r.at("converged").get<bool>();
      rep.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("report JSON: ") + e.what());
  }
  return rep;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

}  // namespace

void emit_report(const ExperimentReport& report, const std::string& csv_path, const std::string& json_path) {
  if (!csv_path.empty()) write_file(csv_path, report_csv(report));
  if (!json_path.empty()) write_file(json_path, report_json(report));
}

ExperimentReport read_report_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_report_json(ss.str());
}

}  // namespace qastab
