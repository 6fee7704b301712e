#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "runner.hpp"

using namespace qll;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("qll_runner_" + name);
  fs::remove_all(d);
  return d;
}

std::string config_error(const std::string& text) {
  try {
    parse_run_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    return e.what();
  }
  ADD_FAILURE() << "no error for " << text;
  return {};
}

}  // namespace

TEST(Report, NumberFormatting) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-2.5e-20), "-2.4999999999999999e-20");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(std::nan("")), "null");
  EXPECT_EQ(json_quote("a\"b\\\n"), "\"a\\\"b\\\\\\n\"");
}

TEST(Report, JsonAndCsvLayout) {
  JsonObject inner;
  inner.number("x", 0.5);
  JsonObject o;
  o.integer("n", 3).string("s", "t").boolean("b", true).null("z").object("o", inner)
      .numbers("v", {1.0, 2.0});
  EXPECT_EQ(o.dump(),
            "{\n  \"n\": 3,\n  \"s\": \"t\",\n  \"b\": true,\n  \"z\": null,\n"
            "  \"o\": {\n    \"x\": 0.5\n  },\n  \"v\": [1, 2]\n}");
  CsvTable t({"a", "b"});
  t.add_row({1.0, std::nan("")});
  EXPECT_EQ(t.dump(), "a,b\n1,\n");
  EXPECT_THROW(t.add_row({1.0}), Error);
}

TEST(Config, ParsesAllSections) {
  const auto c = parse_run_config(R"({
    "task": "flow",
    "space": {"name": "schwarzschild", "params": {"m": 0.5},
              "derivative": "finite_difference", "fd_step": 1e-4,
              "electric_charge": 0.1, "Lambda": -3, "beta": 0.25},
    "surface": {"perturbed": {"r0": 4, "modes": [[2, 0, 0.05], [3, -1, 0.01]]}},
    "grid": [24, 48],
    "lambda": 0.5,
    "residual": {"mode": "willmore", "lambda": "best"},
    "flow": {"mode": "willmore", "max_steps": 10, "precondition": false},
    "output": {"dir": "out", "format": "csv"}
  })");
  EXPECT_EQ(c.task, Task::kFlow);
  EXPECT_EQ(c.space->params.at("m"), 0.5);
  EXPECT_EQ(c.space->derivative, DerivativeMode::kFiniteDifference);
  EXPECT_EQ(*c.space->electric_charge, 0.1);
  EXPECT_EQ(*c.space->beta, 0.25);
  EXPECT_EQ(c.surface->kind, SurfaceSpec::Kind::kPerturbed);
  ASSERT_EQ(c.surface->modes.size(), 2u);
  EXPECT_EQ(c.surface->modes[1].m, -1);
  EXPECT_EQ(c.ntheta, 24);
  EXPECT_EQ(*c.lambda, 0.5);
  EXPECT_FALSE(c.residual_lambda);
  EXPECT_EQ(c.flow.max_steps, 10);
  EXPECT_FALSE(c.flow.precondition);
  EXPECT_EQ(c.format, "csv");

  const auto s = parse_run_config(
      R"({"task": "sweep", "sweep": {"model": "euclidean", "n": 5, "r": {"from": 1, "to": 2, "count": 3}}})");
  EXPECT_EQ(s.sweep.radii, (std::vector<double>{1.0, 1.5, 2.0}));
}

TEST(Config, Diagnostics) {
  EXPECT_NE(config_error("{\n\"task\": \"eval\",\n  \"space\": {\"name\": }\n}")
                .find("line 3"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"task": "eval", "space": {"name": "euclidean", "parms": {}}, "surface": {"sphere": {"r": 1}}})")
                .find("space.parms"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"task": "eval", "space": {"name": "euclidean"}, "surface": {"sphere": {"r": "1"}}})")
                .find("surface.sphere.r"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"task": "eval", "space": {"name": "euclidean"}, "surface": {"sphere": {"r": 1}, "mesh": "m.txt"}})")
                .find("exactly one surface"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"task": "eval", "space": {"name": "euclidean"}, "surface": {"sphere": {"r": 1}}, "grid": [8, 16]})")
                .find("grid"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"task": "dance"})").find("task"), std::string::npos);
  EXPECT_NE(config_error(R"({"space": {"name": "euclidean"}})").find("task"), std::string::npos);
  EXPECT_NE(config_error(R"({"task": "eval", "surface": {"sphere": {"r": 1}}})").find("space"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"task": "eval", "space": {"name": "euclidean"}, "surface": {"perturbed": {"r0": 1, "modes": [[1, 2, 0.1]]}}})")
                .find("modes[0]"),
            std::string::npos);
  EXPECT_THROW(parse_run_config(R"({"task": "eval", "space": {"name": "euclidean"}, "surface": {"sphere": {"r": 1}}})",
                                Task::kFlow),
               Error);
  const auto c = parse_run_config(R"({"space": {"name": "euclidean"}, "surface": {"sphere": {"r": 1}}})",
                                  Task::kResidual);
  EXPECT_EQ(c.task, Task::kResidual);
}

TEST(Run, EvalIsDeterministic) {
  const auto dir = scratch_dir("eval");
  auto c = parse_run_config(R"({"task": "eval", "space": {"name": "hyperboloid", "params": {"a": 1}},
                                "surface": {"sphere": {"r": 1}}, "grid": [32, 64]})");
  c.out_dir = (dir / "a").string();
  const auto r1 = run(c);
  c.out_dir = (dir / "b").string();
  run(c);
  EXPECT_EQ(r1.exit_code, 0);
  ASSERT_EQ(r1.files.size(), 1u);
  const auto a = read_file(dir / "a" / "energy_report.json");
  EXPECT_EQ(a, read_file(dir / "b" / "energy_report.json"));
  EXPECT_NE(a.find("\"hawking_energy\": "), std::string::npos);
  EXPECT_NE(a.find("\"lambda_source\": \"lambda_star\""), std::string::npos);
  fs::remove_all(dir);
}

TEST(Run, EnergyReportFields) {
  SpaceSpec spec;
  spec.name = "reissner_nordstrom";
  spec.params = {{"m", 1.0}, {"q", 0.5}};
  spec.beta = 0.25;
  const auto space = build_space(spec);
  SurfaceSpec surf;
  surf.radius = 4.0;
  const auto geom = induced_geometry(space, build_mesh(surf, 32, 64));
  const auto rep = energy_report(space, geom, spec, 0.0);
  ASSERT_TRUE(rep.charged);
  EXPECT_NEAR(rep.charged->energy, 1.0, 1e-6);
  EXPECT_NEAR(rep.hawking_energy, 1.0 - 0.25 / 8.0, 1e-6);
  EXPECT_TRUE(rep.brown_york);
  EXPECT_EQ(rep.lambda_source, "user");
  ASSERT_TRUE(rep.f);
  EXPECT_FALSE(rep.Lambda);
  EXPECT_LT(rep.gauss_bonnet_defect, 1e-10);
}

TEST(Run, HypothesisViolationStillWritesReport) {
  const auto dir = scratch_dir("hyp");
  auto c = parse_run_config(R"({"task": "eval", "space": {"name": "euclidean"},
    "surface": {"perturbed": {"r0": 1, "modes": [[6, 0, 0.5]]}}, "grid": [32, 64]})");
  c.out_dir = dir.string();
  const auto r = run(c);
  EXPECT_EQ(r.exit_code, 2);
  const auto text = read_file(dir / "energy_report.json");
  EXPECT_NE(text.find("\"f_integral\": null"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Run, OtherTasks) {
  const auto dir = scratch_dir("tasks");
  auto res = parse_run_config(R"({"task": "residual", "space": {"name": "paraboloid", "params": {"alpha": 0.5}},
    "surface": {"sphere": {"r": 1}}, "grid": [32, 64], "residual": {"mode": "hawking", "lambda": 0, "dump_nodes": true},
    "output": {"format": "csv"}})");
  res.out_dir = dir.string();
  EXPECT_EQ(run(res).files.size(), 2u);
  EXPECT_TRUE(fs::exists(dir / "residual_report.csv"));
  EXPECT_TRUE(fs::exists(dir / "residual_nodes.csv"));

  auto sw = parse_run_config(R"({"task": "sweep", "sweep": {"model": "schwarzschild", "n": 4,
    "params": {"m": 1}, "r": [2, 3]}})");
  sw.out_dir = dir.string();
  run(sw);
  const auto csv = read_file(dir / "sweep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_TRUE(fs::exists(dir / "sweep.json"));

  auto vc = parse_run_config(R"({"task": "varcheck", "space": {"name": "euclidean"},
    "surface": {"perturbed": {"r0": 1, "modes": [[2, 0, 0.05]]}}, "grid": [24, 48],
    "varcheck": {"mode": "willmore", "lapse": {"harmonic": {"l": 3, "m": 1}}, "s": [1e-3, 5e-4]}})");
  vc.out_dir = dir.string();
  run(vc);
  EXPECT_NE(read_file(dir / "varcheck.json").find("observed_order"), std::string::npos);

  auto fl = parse_run_config(R"({"task": "flow", "space": {"name": "euclidean"},
    "surface": {"perturbed": {"r0": 1, "modes": [[2, 0, 0.05]]}}, "grid": [24, 48]})");
  fl.out_dir = dir.string();
  run(fl);
  EXPECT_NE(read_file(dir / "flow_report.json").find("\"status\": \"converged\""), std::string::npos);
  EXPECT_NO_THROW(SurfaceMesh::load((dir / "final_mesh.txt").string()));
  EXPECT_EQ(read_file(dir / "flow_history.csv").rfind("step,functional,area,residual,step_size\n", 0), 0u);
  fs::remove_all(dir);
}
