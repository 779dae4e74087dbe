#include "qastab/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "qastab/bounds.hpp"
#include "qastab/defect.hpp"
#include "qastab/direct.hpp"
#include "qastab/exact/identity_chain.hpp"
#include "qastab/exact/solution_space.hpp"
#include "qastab/harness.hpp"

namespace qastab::cli {

using json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  bool json_out = false;
  bool quiet = false;
  std::string out_path;
};

json scalar_or_array(const Point& p) {
  if (p.dim() == 1) return p[0];
  json a = json::array();
  for (double c : p.coords()) a.push_back(c);
  return a;
}

// Text mode: one "path: value" line per leaf.
void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += (prefix.empty() ? std::string("value") : prefix) + ": " + j.dump() + "\n";
  }
}

void emit(const Globals& g, const json& payload, std::ostream& out) {
  std::string text;
  if (g.json_out) {
    text = payload.dump(2) + "\n";
  } else {
    flatten(payload, "", text);
  }
  if (!g.out_path.empty()) {
    std::ofstream f(g.out_path, std::ios::binary);
    if (!f) throw Error(ErrorCode::Io, "cannot open '" + g.out_path + "' for writing");
    f << text;
    if (!f) throw Error(ErrorCode::Io, "write to '" + g.out_path + "' failed");
  }
  if (!g.quiet) out << text;
}

json bound_json(const BoundResult& b) {
  json j;
  j["kind"] = to_string(b.kind);
  j["value"] = b.value;
  j["terms_used"] = b.terms_used;
  j["tail_estimate"] = b.tail_estimate ? json(*b.tail_estimate) : json("none");
  j["total_upper"] = b.total_upper;
  j["heuristic"] = b.heuristic;
  return j;
}

Terms parse_terms(const std::string& s) {
  if (s == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const int n = std::stoi(s, &used);
    if (used == s.size() && n >= 0) return n;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Parse, "--terms must be auto or a nonnegative integer");
}

Interval parse_interval(const std::string& s) {
  const auto pts = parse_points(s);
  if (pts.size() != 2) throw Error(ErrorCode::Parse, "--range expects lo,hi");
  return {pts[0][0], pts[1][0]};
}

json trace_json(const ResidualTrace& t) {
  json j;
  j["mode"] = to_string(t.mode);
  j["iterates"] = json::array();
  for (const auto& q : t.iterates) j["iterates"].push_back(scalar_or_array(q));
  j["deltas"] = t.deltas;
  j["n_used"] = t.n_used;
  j["converged"] = t.converged;
  j["final_delta"] = t.final_delta;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification lab for the mixed quartic-additive functional equation"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for sampled pairs and experiments");
  app.add_flag("--json", g.json_out, "Print JSON instead of key: value lines");
  app.add_flag("--quiet", g.quiet, "Suppress standard output");
  app.add_option("--out", g.out_path, "Also write the printed payload to this file");

  // defect
  auto* defect_cmd = app.add_subcommand("defect", "Sup of a defect functional over sampled pairs");
  std::string d_function, d_equation = "mixed", d_range = "-10,10";
  std::size_t d_pairs = 1000;
  bool d_emit = false;
  defect_cmd->add_option("--function", d_function, "Function spec")->required();
  defect_cmd->add_option("--equation", d_equation, "mixed|quartic|cauchy|jensen");
  defect_cmd->add_option("--pairs", d_pairs, "Number of random pairs");
  defect_cmd->add_option("--range", d_range, "lo,hi for both coordinates");
  defect_cmd->add_flag("--emit-pairs", d_emit, "Include every pair and its defect norm");

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "Direct-method extraction of Q and A");
  std::string e_function, e_points, e_strategy = "forward", e_component = "both";
  double e_tol = 1e-10;
  int e_nmax = 24;
  bool e_trace = false;
  extract_cmd->add_option("--function", e_function, "Function spec")->required();
  extract_cmd->add_option("--points", e_points, "Comma-separated points")->required();
  extract_cmd->add_option("--strategy", e_strategy, "forward|backward|auto|auto-extended");
  extract_cmd->add_option("--tol", e_tol, "Relative convergence tolerance");
  extract_cmd->add_option("--nmax", e_nmax, "Maximum number of iterations");
  extract_cmd->add_option("--component", e_component, "both|even|odd");
  extract_cmd->add_flag("--trace", e_trace, "Dump full iterate lists");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Stability bound series");
  std::string b_control, b_direction = "forward", b_kind = "combined", b_terms = "auto";
  double b_x = 1.0;
  bounds_cmd->add_option("--control", b_control, "const:EPS | power:THETA,P | custom:FILE")->required();
  bounds_cmd->add_option("--direction", b_direction, "forward|backward");
  bounds_cmd->add_option("--kind", b_kind, "quartic|additive|combined");
  bounds_cmd->add_option("--x", b_x, "Evaluation point");
  bounds_cmd->add_option("--terms", b_terms, "auto or N");

  // identities
  auto* id_cmd = app.add_subcommand("identities", "Exact check of the identity chain");
  std::string i_poly, i_parity;
  bool i_detail = false;
  id_cmd->add_option("--poly", i_poly, "Rational coefficients, ascending (e.g. 0,1/2,0,0,1)")->required();
  id_cmd->add_option("--parity", i_parity, "even|odd")->required();
  id_cmd->add_flag("--detail", i_detail, "Include residuals and re-derivations");

  // solve-basis
  auto* basis_cmd = app.add_subcommand("solve-basis", "Exact polynomial solutions up to a degree");
  int s_degree = 12;
  basis_cmd->add_option("--max-degree", s_degree, "Maximum degree");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Perturb, extract and compare against bounds");
  std::string x_config;
  std::vector<std::pair<std::string, std::string>> overrides;
  exp_cmd->add_option("--config", x_config, "key=value config file");
  for (const char* key : {"function_spec", "equation", "points", "strategy", "tol", "n_max", "control",
                          "csv_path", "json_path", "pairs", "range"}) {
    std::string flag = std::string("--") + key;
    for (auto& ch : flag) {
      if (ch == '_') ch = '-';
    }
    if (flag == "--function-spec") flag += ",--function";
    exp_cmd->add_option_function<std::string>(
        flag, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); },
        std::string("Override ") + key);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*defect_cmd) {
      const EvaluableFn f = parse_function(d_function);
      const Equation eq = parse_equation(d_equation);
      const auto pairs = random_pairs(d_pairs, parse_interval(d_range), g.seed);
      const auto rep = defect_sup(f, eq, pairs, d_emit);
      json j;
      j["equation"] = to_string(rep.equation);
      j["pair_count"] = rep.pair_count;
      j["sup_defect"] = rep.sup_defect;
      j["argmax_x"] = scalar_or_array(rep.argmax_x);
      j["argmax_y"] = scalar_or_array(rep.argmax_y);
      if (rep.per_pair) {
        j["pairs"] = json::array();
        for (const auto& pv : *rep.per_pair) {
          j["pairs"].push_back({{"x", scalar_or_array(pv.x)}, {"y", scalar_or_array(pv.y)}, {"value", pv.value}});
        }
      }
      emit(g, j, out);
      return 0;
    }

    if (*extract_cmd) {
      const EvaluableFn f = parse_function(e_function);
      ExtractionOptions opt;
      opt.tol = e_tol;
      opt.n_max = e_nmax;
      opt.components = parse_components(e_component);
      const auto r = extract_mixed(f, parse_points(e_points), parse_strategy(e_strategy), opt);
      json j;
      j["strategy"] = to_string(r.strategy);
      j["points"] = json::array();
      for (const auto& pe : r.points) {
        json p;
        p["x"] = scalar_or_array(pe.point);
        p["q"] = pe.quartic ? scalar_or_array(pe.quartic->value) : json(nullptr);
        p["a"] = pe.additive ? scalar_or_array(pe.additive->value) : json(nullptr);
        int n_used = 0;
        bool converged = true;
        double final_delta = 0.0;
        for (const auto* c : {&pe.quartic, &pe.additive}) {
          if (!*c) continue;
          n_used = std::max(n_used, (*c)->trace.n_used);
          converged = converged && (*c)->trace.converged;
          final_delta = std::max(final_delta, (*c)->trace.final_delta);
        }
        p["n_used"] = n_used;
        p["converged"] = converged;
        p["final_delta"] = final_delta;
        if (e_trace) {
          if (pe.quartic) p["quartic_trace"] = trace_json(pe.quartic->trace);
          if (pe.additive) p["additive_trace"] = trace_json(pe.additive->trace);
        }
        j["points"].push_back(std::move(p));
      }
      emit(g, j, out);
      return r.all_converged() ? 0 : 2;
    }

    if (*bounds_cmd) {
      const ControlFn psi = ControlFn::parse(b_control);
      const Direction dir = parse_direction(b_direction);
      const Point x{b_x};
      const Terms terms = parse_terms(b_terms);
      json j;
      if (b_kind == "combined") {
        const auto c = combined_bound(psi, x, dir, terms);
        j = bound_json(c.result);
        j["paper_constant"] = c.paper_constant ? json(*c.paper_constant) : json(nullptr);
        j["paper_constant_source"] = c.paper_constant_source;
        j["derived_constant"] = c.derived_constant;
        j["printed_aggregate"] = c.printed_aggregate;
        j["quartic"] = bound_json(c.quartic);
        j["additive"] = bound_json(c.additive);
      } else if (b_kind == "quartic" || b_kind == "additive") {
        const bool q = b_kind == "quartic";
        const OrbitMode m = dir == Direction::forward ? (q ? OrbitMode::quartic_fwd : OrbitMode::additive_fwd)
                                                      : (q ? OrbitMode::quartic_bwd : OrbitMode::additive_bwd);
        j = bound_json(component_bound(m, psi, x, terms));
      } else {
        throw Error(ErrorCode::Parse, "--kind must be quartic|additive|combined");
      }
      emit(g, j, out);
      return 0;
    }

    if (*id_cmd) {
      const exact::RationalPoly p(exact::parse_rational_list(i_poly));
      const auto v = exact::verify_identity_chain(p, parse_parity(i_parity));
      if (!v.applicable) {
        emit(g, json{{"applicable", false}, {"reason", v.reason}}, out);
        return 2;
      }
      json j = json::array();
      for (const auto& r : v.reports) {
        json e{{"identity_id", r.identity_id}, {"holds", r.holds}};
        if (i_detail) {
          e["residual"] = r.residual.to_string();
          e["prerequisite"] = to_string(r.prerequisite);
          e["printed"] = r.printed.to_string();
          e["derivation"] = r.derivation;
          e["derivation_consistent"] = r.derivation_consistent;
          e["derived"] = r.derived ? json(r.derived->to_string()) : json(nullptr);
          e["derived_holds"] = r.derived_holds;
        }
        j.push_back(std::move(e));
      }
      emit(g, j, out);
      return 0;
    }

    if (*basis_cmd) {
      json j = json::array();
      for (const auto& b : exact::solve_polynomial_basis(s_degree)) {
        json c = json::array();
        for (const auto& q : b.coeffs()) c.push_back(exact::to_string(q));
        j.push_back(std::move(c));
      }
      emit(g, j, out);
      return 0;
    }

    if (*exp_cmd) {
      ExperimentConfig cfg = x_config.empty() ? ExperimentConfig{} : load_config(x_config);
      if (app.count("--seed") > 0) cfg.seed = g.seed;
      for (const auto& [k, v] : overrides) apply_setting(cfg, k, v);
      const auto rep = run_experiment(cfg);
      emit_report(rep, cfg.csv_path, cfg.json_path);
      emit(g, json::parse(report_json(rep)), out);
      return rep.exit_status();
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_hypothesis_violation(e.code()) ? 2 : 1;
  }
  return 1;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace qastab::cli
