#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qastab/harness.hpp"

using namespace qastab;
namespace fs = std::filesystem;

namespace {

ExperimentConfig config(const std::string& f, const std::string& points) {
  ExperimentConfig c;
  c.function_spec = f;
  c.points = parse_points(points);
  c.pairs = 200;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("qastab_" + name + "_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Config, KeysAndValidation) {
  ExperimentConfig c;
  apply_setting(c, "function_spec", " poly:0,1 ");
  apply_setting(c, "points", "1,2,3");
  apply_setting(c, "strategy", "backward");
  apply_setting(c, "tol", "1e-8");
  apply_setting(c, "n_max", "30");
  apply_setting(c, "seed", "17");
  apply_setting(c, "range", "-2,2");
  EXPECT_EQ(c.function_spec, "poly:0,1");
  EXPECT_EQ(c.points.size(), 3u);
  EXPECT_EQ(c.strategy, Strategy::backward);
  EXPECT_EQ(c.seed, 17u);
  EXPECT_EQ(c.range.hi, 2.0);
  EXPECT_NO_THROW(validate(c));
  EXPECT_THROW(apply_setting(c, "colour", "red"), Error);
  EXPECT_THROW(apply_setting(c, "tol", "small"), Error);
  EXPECT_THROW(apply_setting(c, "seed", "-1"), Error);
  c.tol = 0;
  EXPECT_THROW(validate(c), Error);
  EXPECT_THROW(validate(ExperimentConfig{}), Error);
  EXPECT_THROW(parse_points("1,,2"), Error);
}

TEST(Config, LoadFile) {
  const auto dir = scratch_dir("cfg");
  const auto path = dir / "exp.cfg";
  std::ofstream(path) << "# perturbed solution\nfunction_spec = poly:0,1,0,0,1\n\npoints=1,2  # two points\nseed=5\n";
  const auto c = load_config(path.string());
  EXPECT_EQ(c.function_spec, "poly:0,1,0,0,1");
  EXPECT_EQ(c.points.size(), 2u);
  EXPECT_EQ(c.seed, 5u);
  std::ofstream(dir / "bad.cfg") << "points 1,2\n";
  EXPECT_THROW(load_config((dir / "bad.cfg").string()), Error);
  EXPECT_THROW(load_config((dir / "missing.cfg").string()), Error);
  fs::remove_all(dir);
}

TEST(Experiment, ExactSolution) {
  const auto rep = run_experiment(config("poly:0,1,0,0,1", "1,2,3"));
  ASSERT_EQ(rep.rows.size(), 3u);
  for (const auto& r : rep.rows) {
    EXPECT_LE(r.residual, 1e-9);
    EXPECT_EQ(r.bound_empirical, 0.0);
    EXPECT_TRUE(r.within_bound);
    EXPECT_TRUE(r.converged);
    EXPECT_FALSE(r.bound_theoretical);
  }
  EXPECT_EQ(rep.exit_status(), 0);
  EXPECT_EQ(rep.summary.tool_version, kToolVersion);
}

TEST(Experiment, PerturbedWithinBound) {
  const auto rep = run_experiment(config("poly:0,1,0,0,1+noise:0.001,none,9", "1,2"));
  for (const auto& r : rep.rows) {
    EXPECT_TRUE(r.within_bound) << r.residual << " > " << r.bound_empirical;
    EXPECT_GT(r.residual, 0.0);
  }
  EXPECT_GT(rep.summary.sup_defect, 0.0);
  EXPECT_EQ(rep.exit_status(), 0);
}

TEST(Experiment, TheoreticalBoundForConstantControl) {
  auto c = config("poly:0,1,0,0,1+noise:0.001,none,9", "1,2");
  c.control = "const:0.149";
  const auto rep = run_experiment(c);
  for (const auto& r : rep.rows) {
    ASSERT_TRUE(r.bound_theoretical);
    EXPECT_GT(*r.bound_theoretical, 0.149);
  }
}

TEST(Experiment, CubeDiverges) {
  try {
    run_experiment(config("poly:0,0,0,1", "1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Divergence);
    EXPECT_TRUE(is_hypothesis_violation(e.code()));
  }
}

TEST(Experiment, Deterministic) {
  const auto c = config("poly:0,1,0,0,1+noise:0.01,none,3", "0.5,1,2,4");
  const auto a = run_experiment(c);
  const auto b = run_experiment(c);
  EXPECT_EQ(a, b);
  EXPECT_EQ(report_csv(a), report_csv(b));
  EXPECT_EQ(report_json(a), report_json(b));
}

TEST(Report, CsvShape) {
  ExperimentReport empty;
  EXPECT_EQ(report_csv(empty),
            "point,q_estimate,a_estimate,residual,bound_empirical,bound_theoretical,within_bound,n_used\n");
  const auto rep = run_experiment(config("poly:0,1,0,0,1", "2"));
  const auto csv = report_csv(rep);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(csv.back(), '\n');
  EXPECT_NE(csv.find("\n2,16,2,0,0,,true,"), std::string::npos) << csv;
}

TEST(Report, JsonRoundTrip) {
  auto c = config("poly:0,1,0,0,1+noise:0.001,none,9", "1,2");
  c.control = "const:0.2";
  const auto rep = run_experiment(c);
  const auto text = report_json(rep);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(parse_report_json(text), rep);
  EXPECT_THROW(parse_report_json("{"), Error);
}

TEST(Report, EmitAndReadBack) {
  const auto dir = scratch_dir("emit");
  const auto rep = run_experiment(config("poly:0,1,0,0,1+noise:0.001,none,9", "1,2"));
  const auto csv = dir / "r.csv";
  const auto js = dir / "r.json";
  emit_report(rep, csv.string(), js.string());
  EXPECT_EQ(slurp(csv), report_csv(rep));
  EXPECT_EQ(read_report_json(js.string()), rep);
  EXPECT_THROW(emit_report(rep, (dir / "no" / "such" / "x.csv").string(), ""), Error);
  fs::remove_all(dir);
}
