#include "runner.hpp"

#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include <json.hpp>

#include "catalog.hpp"
#include "error.hpp"
#include "functionals.hpp"

namespace qll {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorKind::kConfig, "config field '" + path + "': " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& j, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!j.is_object()) bad(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) bad(join(path, k), "unknown field");
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(path, "not finite");
  return v;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) bad(path, "expected true or false");
  return j.get<bool>();
}

Vec3d as_vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) bad(path, "expected 3 numbers");
  Vec3d v;
  for (int i = 0; i < 3; ++i)
    v[i] = as_number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Params as_params(const json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object of numbers");
  Params p;
  for (const auto& [k, v] : j.items()) p[k] = as_number(v, join(path, k));
  return p;
}

template <class F>
void if_has(const json& j, const char* key, F&& f) {
  auto it = j.find(key);
  if (it != j.end()) f(*it);
}

SpaceSpec parse_space(const json& j, const std::string& path) {
  check_keys(j, path,
             {"name", "params", "derivative", "fd_step", "electric_charge",
              "magnetic_charge", "Lambda", "beta"});
  SpaceSpec s;
  if (!j.contains("name")) bad(join(path, "name"), "missing");
  s.name = as_string(j["name"], join(path, "name"));
  if_has(j, "params", [&](const json& v) { s.params = as_params(v, join(path, "params")); });
  if_has(j, "derivative", [&](const json& v) {
    const auto d = as_string(v, join(path, "derivative"));
    if (d == "analytic")
      s.derivative = DerivativeMode::kAnalytic;
    else if (d == "finite_difference")
      s.derivative = DerivativeMode::kFiniteDifference;
    else
      bad(join(path, "derivative"), "expected 'analytic' or 'finite_difference'");
  });
  if_has(j, "fd_step", [&](const json& v) {
    s.fd_step = as_number(v, join(path, "fd_step"));
    if (s.fd_step < 0.0) bad(join(path, "fd_step"), "must be >= 0");
  });
  if_has(j, "electric_charge", [&](const json& v) { s.electric_charge = as_number(v, join(path, "electric_charge")); });
  if_has(j, "magnetic_charge", [&](const json& v) { s.magnetic_charge = as_number(v, join(path, "magnetic_charge")); });
  if_has(j, "Lambda", [&](const json& v) { s.Lambda = as_number(v, join(path, "Lambda")); });
  if_has(j, "beta", [&](const json& v) { s.beta = as_number(v, join(path, "beta")); });
  return s;
}

SurfaceSpec parse_surface(const json& j, const std::string& path) {
  check_keys(j, path, {"sphere", "ellipsoid", "perturbed", "mesh"});
  if (j.size() != 1) bad(path, "exactly one surface source is required");
  SurfaceSpec s;
  auto center = [&](const json& o, const std::string& p) {
    if_has(o, "center", [&](const json& v) { s.center = as_vec3(v, join(p, "center")); });
  };
  if (j.contains("sphere")) {
    const std::string p = join(path, "sphere");
    const json& o = j["sphere"];
    check_keys(o, p, {"r", "center"});
    s.kind = SurfaceSpec::Kind::kSphere;
    if (!o.contains("r")) bad(join(p, "r"), "missing");
    s.radius = as_number(o["r"], join(p, "r"));
    center(o, p);
  } else if (j.contains("ellipsoid")) {
    const std::string p = join(path, "ellipsoid");
    const json& o = j["ellipsoid"];
    check_keys(o, p, {"axes", "center"});
    s.kind = SurfaceSpec::Kind::kEllipsoid;
    if (!o.contains("axes")) bad(join(p, "axes"), "missing");
    s.axes = as_vec3(o["axes"], join(p, "axes"));
    center(o, p);
  } else if (j.contains("perturbed")) {
    const std::string p = join(path, "perturbed");
    const json& o = j["perturbed"];
    check_keys(o, p, {"r0", "modes", "center"});
    s.kind = SurfaceSpec::Kind::kPerturbed;
    if (!o.contains("r0")) bad(join(p, "r0"), "missing");
    s.radius = as_number(o["r0"], join(p, "r0"));
    if_has(o, "modes", [&](const json& arr) {
      const std::string mp = join(p, "modes");
      if (!arr.is_array()) bad(mp, "expected an array of [l, m, amplitude]");
      for (size_t i = 0; i < arr.size(); ++i) {
        const std::string ip = mp + "[" + std::to_string(i) + "]";
        const json& e = arr[i];
        if (!e.is_array() || e.size() != 3) bad(ip, "expected [l, m, amplitude]");
        SurfaceMesh::Harmonic h{as_int(e[0], ip + "[0]"), as_int(e[1], ip + "[1]"),
                                as_number(e[2], ip + "[2]")};
        if (h.l < 0 || std::abs(h.m) > h.l) bad(ip, "need 0 <= |m| <= l");
        s.modes.push_back(h);
      }
    });
    center(o, p);
  } else {
    s.kind = SurfaceSpec::Kind::kMesh;
    s.path = as_string(j["mesh"], join(path, "mesh"));
  }
  return s;
}

ResidualMode parse_mode(const json& j, const std::string& path) {
  try {
    return parse_residual_mode(as_string(j, path));
  } catch (const Error&) {
    bad(path, "expected 'willmore' or 'hawking'");
  }
}

std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Task parse_task(const std::string& name) {
  if (name == "eval") return Task::kEval;
  if (name == "residual") return Task::kResidual;
  if (name == "flow") return Task::kFlow;
  if (name == "sweep") return Task::kSweep;
  if (name == "varcheck") return Task::kVarcheck;
  fail(ErrorKind::kConfig, "unknown task '" + name +
                               "' (eval, residual, flow, sweep, varcheck)");
}

const char* to_string(Task task) {
  switch (task) {
    case Task::kEval: return "eval";
    case Task::kResidual: return "residual";
    case Task::kFlow: return "flow";
    case Task::kSweep: return "sweep";
    case Task::kVarcheck: return "varcheck";
  }
  return "?";
}

RunConfig parse_run_config(const std::string& text, std::optional<Task> task) {
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    std::string msg = e.what();
    const auto pos = msg.find("syntax error");
    if (pos != std::string::npos) msg = msg.substr(pos);
    fail(ErrorKind::kConfig, "config line " + std::to_string(line) +
                                 ", column " + std::to_string(col) + ": " + msg);
  }
  check_keys(j, "",
             {"task", "space", "surface", "grid", "lambda", "residual", "flow",
              "sweep", "varcheck", "output"});
  RunConfig c;
  if (j.contains("task")) {
    try {
      c.task = parse_task(as_string(j["task"], "task"));
    } catch (const Error& e) {
      bad("task", e.what());
    }
    if (task && *task != c.task)
      bad("task", std::string("'") + to_string(c.task) +
                      "' does not match the requested task '" +
                      to_string(*task) + "'");
  } else if (task) {
    c.task = *task;
  } else {
    bad("task", "missing");
  }
  if_has(j, "space", [&](const json& v) { c.space = parse_space(v, "space"); });
  if_has(j, "surface", [&](const json& v) { c.surface = parse_surface(v, "surface"); });
  if_has(j, "grid", [&](const json& v) {
    if (!v.is_array() || v.size() != 2) bad("grid", "expected [ntheta, nphi]");
    c.ntheta = as_int(v[0], "grid[0]");
    c.nphi = as_int(v[1], "grid[1]");
  });
  if_has(j, "lambda", [&](const json& v) { c.lambda = as_number(v, "lambda"); });
  if_has(j, "residual", [&](const json& o) {
    check_keys(o, "residual", {"mode", "lambda", "dump_nodes"});
    if_has(o, "mode", [&](const json& v) { c.residual_mode = parse_mode(v, "residual.mode"); });
    if_has(o, "lambda", [&](const json& v) {
      if (v.is_string() && v.get<std::string>() == "best") return;
      c.residual_lambda = as_number(v, "residual.lambda");
    });
    if_has(o, "dump_nodes", [&](const json& v) { c.dump_nodes = as_bool(v, "residual.dump_nodes"); });
  });
  if_has(j, "flow", [&](const json& o) {
    const std::string p = "flow";
    check_keys(o, p,
               {"mode", "target_area", "initial_step", "max_steps",
                "residual_tol", "backtrack", "max_backtracks", "growth",
                "max_step", "precondition"});
    FlowConfig& f = c.flow;
    if_has(o, "mode", [&](const json& v) { f.mode = parse_mode(v, "flow.mode"); });
    if_has(o, "target_area", [&](const json& v) { f.target_area = as_number(v, "flow.target_area"); });
    if_has(o, "initial_step", [&](const json& v) { f.initial_step = as_number(v, "flow.initial_step"); });
    if_has(o, "max_steps", [&](const json& v) { f.max_steps = as_int(v, "flow.max_steps"); });
    if_has(o, "residual_tol", [&](const json& v) { f.residual_tol = as_number(v, "flow.residual_tol"); });
    if_has(o, "backtrack", [&](const json& v) { f.backtrack = as_number(v, "flow.backtrack"); });
    if_has(o, "max_backtracks", [&](const json& v) { f.max_backtracks = as_int(v, "flow.max_backtracks"); });
    if_has(o, "growth", [&](const json& v) { f.growth = as_number(v, "flow.growth"); });
    if_has(o, "max_step", [&](const json& v) { f.max_step = as_number(v, "flow.max_step"); });
    if_has(o, "precondition", [&](const json& v) { f.precondition = as_bool(v, "flow.precondition"); });
  });
  if_has(j, "sweep", [&](const json& o) {
    check_keys(o, "sweep", {"model", "n", "params", "charge", "r"});
    SweepSpec& s = c.sweep;
    if (!o.contains("model")) bad("sweep.model", "missing");
    s.model = as_string(o["model"], "sweep.model");
    if_has(o, "n", [&](const json& v) { s.n = as_int(v, "sweep.n"); });
    if_has(o, "params", [&](const json& v) { s.params = as_params(v, "sweep.params"); });
    if_has(o, "charge", [&](const json& v) { s.charge = as_number(v, "sweep.charge"); });
    if (!o.contains("r")) bad("sweep.r", "missing");
    const json& r = o["r"];
    if (r.is_array()) {
      for (size_t i = 0; i < r.size(); ++i)
        s.radii.push_back(as_number(r[i], "sweep.r[" + std::to_string(i) + "]"));
    } else {
      check_keys(r, "sweep.r", {"from", "to", "count"});
      for (const char* k : {"from", "to", "count"})
        if (!r.contains(k)) bad(std::string("sweep.r.") + k, "missing");
      const double a = as_number(r["from"], "sweep.r.from");
      const double b = as_number(r["to"], "sweep.r.to");
      const int n = as_int(r["count"], "sweep.r.count");
      if (n < 1) bad("sweep.r.count", "must be >= 1");
      for (int i = 0; i < n; ++i)
        s.radii.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    }
  });
  if_has(j, "varcheck", [&](const json& o) {
    check_keys(o, "varcheck", {"mode", "lapse", "s"});
    VarcheckSpec& v = c.varcheck;
    if_has(o, "mode", [&](const json& x) { v.mode = parse_mode(x, "varcheck.mode"); });
    if_has(o, "lapse", [&](const json& l) {
      check_keys(l, "varcheck.lapse", {"random", "harmonic", "constant"});
      if (l.size() != 1) bad("varcheck.lapse", "exactly one lapse kind is required");
      if (l.contains("random")) {
        const json& r = l["random"];
        check_keys(r, "varcheck.lapse.random", {"degree", "seed"});
        v.lapse = VarcheckSpec::Lapse::kRandom;
        if_has(r, "degree", [&](const json& x) { v.degree = as_int(x, "varcheck.lapse.random.degree"); });
        if_has(r, "seed", [&](const json& x) {
          const int seed = as_int(x, "varcheck.lapse.random.seed");
          if (seed < 0) bad("varcheck.lapse.random.seed", "must be >= 0");
          v.seed = static_cast<unsigned>(seed);
        });
      } else if (l.contains("harmonic")) {
        const json& h = l["harmonic"];
        check_keys(h, "varcheck.lapse.harmonic", {"l", "m"});
        v.lapse = VarcheckSpec::Lapse::kHarmonic;
        if_has(h, "l", [&](const json& x) { v.l = as_int(x, "varcheck.lapse.harmonic.l"); });
        if_has(h, "m", [&](const json& x) { v.m = as_int(x, "varcheck.lapse.harmonic.m"); });
      } else {
        v.lapse = VarcheckSpec::Lapse::kConstant;
        v.constant = as_number(l["constant"], "varcheck.lapse.constant");
      }
    });
    if_has(o, "s", [&](const json& s) {
      if (!s.is_array() || s.empty()) bad("varcheck.s", "expected a non-empty array");
      v.s.clear();
      for (size_t i = 0; i < s.size(); ++i)
        v.s.push_back(as_number(s[i], "varcheck.s[" + std::to_string(i) + "]"));
    });
  });
  if_has(j, "output", [&](const json& o) {
    check_keys(o, "output", {"dir", "format"});
    if_has(o, "dir", [&](const json& v) { c.out_dir = as_string(v, "output.dir"); });
    if_has(o, "format", [&](const json& v) { c.format = as_string(v, "output.format"); });
  });
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv")
    bad("output.format", "expected 'json' or 'csv'");
  if (c.task == Task::kSweep) {
    if (c.sweep.model.empty()) bad("sweep", "missing");
    if (c.sweep.radii.empty()) bad("sweep.r", "no radii");
    return;
  }
  if (!c.space) bad("space", "missing");
  if (!c.surface) bad("surface", "missing");
  if (c.ntheta < 16 || c.nphi < 32) bad("grid", "must be at least [16, 32]");
  if (c.nphi % 2) bad("grid[1]", "must be even");
  if (c.task == Task::kVarcheck) {
    for (double s : c.varcheck.s)
      if (!(s > 0.0)) bad("varcheck.s", "step sizes must be > 0");
    if (c.varcheck.lapse == VarcheckSpec::Lapse::kHarmonic &&
        (c.varcheck.l < 0 || std::abs(c.varcheck.m) > c.varcheck.l))
      bad("varcheck.lapse.harmonic", "need 0 <= |m| <= l");
    if (c.varcheck.degree < 1) bad("varcheck.lapse.random.degree", "must be >= 1");
  }
  if (c.task == Task::kFlow) {
    const FlowConfig& f = c.flow;
    if (!(f.initial_step > 0.0)) bad("flow.initial_step", "must be > 0");
    if (!(f.residual_tol > 0.0)) bad("flow.residual_tol", "must be > 0");
    if (!(f.backtrack > 0.0 && f.backtrack < 1.0)) bad("flow.backtrack", "must lie in (0, 1)");
    if (f.max_steps < 0) bad("flow.max_steps", "must be >= 0");
    if (f.max_backtracks < 1) bad("flow.max_backtracks", "must be >= 1");
    if (!(f.growth >= 1.0)) bad("flow.growth", "must be >= 1");
  }
}

AmbientSpace build_space(const SpaceSpec& spec) {
  AmbientSpace s = make_space(spec.name, spec.params);
  if (spec.electric_charge) s = s.with_point_charge(*spec.electric_charge);
  if (spec.derivative == DerivativeMode::kFiniteDifference)
    s = s.with_derivative_mode(DerivativeMode::kFiniteDifference, spec.fd_step);
  return s;
}

SurfaceMesh build_mesh(const SurfaceSpec& spec, int nt, int np) {
  switch (spec.kind) {
    case SurfaceSpec::Kind::kSphere:
      return SurfaceMesh::sphere(nt, np, spec.radius, spec.center);
    case SurfaceSpec::Kind::kEllipsoid:
      return SurfaceMesh::ellipsoid(nt, np, spec.axes, spec.center);
    case SurfaceSpec::Kind::kPerturbed:
      return SurfaceMesh::perturbed_sphere(nt, np, spec.radius, spec.modes,
                                           spec.center);
    case SurfaceSpec::Kind::kMesh: {
      SurfaceMesh m = SurfaceMesh::load(spec.path);
      if (m.grid().ntheta() != nt || m.grid().nphi() != np)
        m = m.resampled(nt, np);
      return m;
    }
  }
  fail(ErrorKind::kConfig, "bad surface kind");
}

EnergyReport energy_report(const AmbientSpace& space,
                           const SurfaceGeometry& geom, const SpaceSpec& spec,
                           std::optional<double> lambda) {
  EnergyReport r;
  r.ntheta = geom.grid->ntheta();
  r.nphi = geom.grid->nphi();
  r.space = space.info().name;
  r.params = space.info().params;
  r.area = geom.area;
  Field H2(geom.H.size()), P2(geom.H.size());
  for (size_t i = 0; i < H2.size(); ++i) {
    H2[i] = geom.H[i] * geom.H[i];
    P2[i] = geom.P[i] * geom.P[i];
  }
  r.willmore_integral = integrate(geom, H2);
  r.p_integral = integrate(geom, P2);
  r.hawking_functional = hawking_functional(geom);
  r.hawking_energy = hawking_energy(geom);
  if (space.has_electric_field())
    r.charged = charged_hawking_energy(geom, space, spec.magnetic_charge);
  if (spec.Lambda) {
    r.Lambda = spec.Lambda;
  } else if (auto it = r.params.find("Lambda"); it != r.params.end()) {
    r.Lambda = it->second;
  }
  if (r.Lambda) r.lambda_energy = lambda_hawking_energy(geom, *r.Lambda);
  try {
    const BrownYork by = brown_york_round(geom);
    r.brown_york = by.value;
    r.brown_york_note = by.warning;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUnsupported) throw;
    r.brown_york_note = e.what();
  }
  if (lambda) {
    r.lambda = *lambda;
    r.lambda_source = "user";
  } else {
    r.lambda = best_lambda(geom, ResidualMode::kHawking);
    r.lambda_source = "lambda_star";
  }
  r.beta = spec.beta;
  try {
    r.f = f_integrals(geom, spec.beta.value_or(0.0), r.lambda);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kHypothesis) throw;
    r.hypothesis_violation = e.what();
  }
  r.gauss_bonnet_defect = gauss_bonnet_defect(geom);
  r.dec_min = dec_min(geom);
  return r;
}

namespace {

JsonObject params_json(const Params& p) {
  JsonObject o;
  for (const auto& [k, v] : p) o.number(k, v);
  return o;
}

template <class T>
void opt_number(JsonObject& o, const std::string& key, const std::optional<T>& v) {
  if (v)
    o.number(key, *v);
  else
    o.null(key);
}

}  // namespace

JsonObject to_json(const EnergyReport& r) {
  JsonObject o;
  o.integer("ntheta", r.ntheta).integer("nphi", r.nphi);
  o.string("space", r.space).object("params", params_json(r.params));
  o.number("area", r.area)
      .number("willmore_integral", r.willmore_integral)
      .number("p_integral", r.p_integral)
      .number("hawking_functional", r.hawking_functional)
      .number("hawking_energy", r.hawking_energy);
  if (r.charged) {
    o.number("charge", r.charged->charge)
        .number("magnetic_charge", r.charged->magnetic_charge)
        .number("charged_energy", r.charged->energy)
        .string("charged_convention", r.charged->convention);
  } else {
    o.null("charge").null("magnetic_charge").null("charged_energy").null("charged_convention");
  }
  opt_number(o, "Lambda", r.Lambda);
  opt_number(o, "lambda_energy", r.lambda_energy);
  opt_number(o, "brown_york", r.brown_york);
  o.string("brown_york_note", r.brown_york_note);
  o.number("lambda", r.lambda).string("lambda_source", r.lambda_source);
  opt_number(o, "beta", r.beta);
  if (r.f) {
    o.number("f_integral", r.f->f);
    if (r.beta)
      o.number("f_beta_integral", r.f->f_beta);
    else
      o.null("f_beta_integral");
    o.number("f_tilde_integral", r.f->f_tilde);
  } else {
    o.null("f_integral").null("f_beta_integral").null("f_tilde_integral");
  }
  o.string("hypothesis_violation", r.hypothesis_violation);
  o.number("gauss_bonnet_defect", r.gauss_bonnet_defect)
      .number("dec_min", r.dec_min);
  return o;
}

JsonObject to_json(const ResidualReport& r) {
  JsonObject o;
  o.string("mode", to_string(r.mode))
      .number("lambda", r.lambda)
      .number("lambda_star", r.lambda_star)
      .number("l2_residual", r.l2)
      .number("linf_residual", r.linf);
  return o;
}

namespace {

const std::vector<std::string> kRadialColumns = {
    "n", "r", "area", "H", "P", "sc_sigma", "Bo2", "tr_k", "k_norm2",
    "ric_nn", "sc_m", "dnu_tr_k", "dnu_k_nn", "mu", "J_norm", "dec_margin",
    "energy_1", "energy_2", "energy_1_dyn", "energy_2_dyn",
    "charged_energy_1", "charged_energy_2", "willmore_residual0",
    "willmore_lambda_star", "hawking_residual0", "hawking_lambda_star", "f",
    "f_integral"};

std::vector<double> radial_row(const RadialSphereReport& r) {
  const double nan = std::nan("");
  return {double(r.n), r.r, r.area, r.H, r.P, r.sc_sigma, r.Bo2, r.tr_k,
          r.k_norm2, r.ric_nn, r.sc_m, r.dnu_tr_k, r.dnu_k_nn, r.mu, r.J_norm,
          r.dec_margin, r.energy_1, r.energy_2, r.energy_1_dyn,
          r.energy_2_dyn, r.charged_energy_1, r.charged_energy_2,
          r.willmore_residual0, r.willmore_lambda_star, r.hawking_residual0,
          r.hawking_lambda_star, r.f_defined ? r.f : nan,
          r.f_defined ? r.f_integral : nan};
}

}  // namespace

JsonObject to_json(const RadialSphereReport& r) {
  JsonObject o;
  const auto row = radial_row(r);
  o.integer("n", r.n);
  for (size_t i = 1; i < row.size(); ++i) o.number(kRadialColumns[i], row[i]);
  return o;
}

JsonObject to_json(const VariationCheck& c) {
  JsonObject o;
  o.string("mode", to_string(c.mode));
  std::vector<JsonObject> rows;
  for (const auto& r : c.rows) {
    JsonObject x;
    x.number("s", r.s)
        .number("difference_quotient", r.difference_quotient)
        .number("analytic", r.analytic)
        .number("error", r.error)
        .number("relative_error", r.relative_error)
        .number("order", r.order);
    rows.push_back(x);
  }
  o.objects("rows", rows).number("observed_order", c.observed_order);
  return o;
}

namespace {

struct Output {
  const RunConfig& config;
  RunResult& result;
  void write(const std::string& name, const std::string& text) {
    const auto path = (std::filesystem::path(config.out_dir) / name).string();
    write_text_file(path, text);
    result.files.push_back(path);
  }
  void json(const std::string& stem, const JsonObject& o) {
    write(stem + ".json", o.dump() + "\n");
  }
  // single-row table of the flat numeric fields
  void flat_csv(const std::string& stem, const std::vector<std::string>& keys,
                const std::vector<double>& values) {
    CsvTable t(keys);
    t.add_row(values);
    write(stem + ".csv", t.dump());
  }
};

Field make_lapse(const VarcheckSpec& v, const SphereGrid& grid) {
  if (v.lapse == VarcheckSpec::Lapse::kRandom)
    return random_lapse(grid, v.degree, v.seed);
  Field a(grid.size(), v.constant);
  if (v.lapse == VarcheckSpec::Lapse::kHarmonic) {
    for (int i = 0; i < grid.ntheta(); ++i)
      for (int j = 0; j < grid.nphi(); ++j)
        a[grid.index(i, j)] =
            SphereGrid::ylm(v.l, v.m, grid.theta(i), grid.phi(j));
  }
  return a;
}

void run_eval(const RunConfig& c, Output& out) {
  const AmbientSpace space = build_space(*c.space);
  const SurfaceMesh mesh = build_mesh(*c.surface, c.ntheta, c.nphi);
  const auto geom = induced_geometry(space, mesh);
  const EnergyReport rep = energy_report(space, geom, *c.space, c.lambda);
  if (c.format == "json") {
    out.json("energy_report", to_json(rep));
  } else {
    const double nan = std::nan("");
    auto val = [&](const std::optional<double>& v) { return v.value_or(nan); };
    out.flat_csv(
        "energy_report",
        {"ntheta", "nphi", "area", "willmore_integral", "p_integral",
         "hawking_functional", "hawking_energy", "charge", "charged_energy",
         "lambda_energy", "brown_york", "lambda", "f_integral",
         "f_beta_integral", "f_tilde_integral", "gauss_bonnet_defect",
         "dec_min"},
        {double(rep.ntheta), double(rep.nphi), rep.area,
         rep.willmore_integral, rep.p_integral, rep.hawking_functional,
         rep.hawking_energy, rep.charged ? rep.charged->charge : nan,
         rep.charged ? rep.charged->energy : nan, val(rep.lambda_energy),
         val(rep.brown_york), rep.lambda, rep.f ? rep.f->f : nan,
         rep.f && rep.beta ? rep.f->f_beta : nan,
         rep.f ? rep.f->f_tilde : nan, rep.gauss_bonnet_defect,
         rep.dec_min});
  }
  if (!rep.hypothesis_violation.empty()) {
    out.result.exit_code = 2;
    out.result.message = rep.hypothesis_violation;
  }
}

void run_residual(const RunConfig& c, Output& out) {
  const AmbientSpace space = build_space(*c.space);
  const SurfaceMesh mesh = build_mesh(*c.surface, c.ntheta, c.nphi);
  const auto geom = induced_geometry(space, mesh);
  const ResidualReport rep =
      c.residual_lambda ? residual_report(geom, c.residual_mode, *c.residual_lambda)
                        : residual_report_best(geom, c.residual_mode);
  if (c.format == "json")
    out.json("residual_report", to_json(rep));
  else
    out.flat_csv("residual_report",
                 {"lambda", "lambda_star", "l2_residual", "linf_residual"},
                 {rep.lambda, rep.lambda_star, rep.l2, rep.linf});
  if (c.dump_nodes) {
    CsvTable t({"theta", "phi", "residual"});
    const SphereGrid& g = *geom.grid;
    for (int i = 0; i < g.ntheta(); ++i)
      for (int j = 0; j < g.nphi(); ++j)
        t.add_row({g.theta(i), g.phi(j), rep.residual[g.index(i, j)]});
    out.write("residual_nodes.csv", t.dump());
  }
}

void run_flow_task(const RunConfig& c, Output& out) {
  const AmbientSpace space = build_space(*c.space);
  const SurfaceMesh mesh = build_mesh(*c.surface, c.ntheta, c.nphi);
  const FlowState st = run_flow(space, c.flow, mesh);
  double energy = std::nan("");
  try {
    energy = hawking_energy(induced_geometry(space, st.mesh));
  } catch (const Error&) {
  }
  CsvTable hist({"step", "functional", "area", "residual", "step_size"});
  for (const auto& h : st.history)
    hist.add_row({double(h.step), h.functional, h.area, h.residual, h.step_size});
  out.write("flow_history.csv", hist.dump());
  std::ostringstream mesh_text;
  st.mesh.write(mesh_text);
  out.write("final_mesh.txt", mesh_text.str());
  if (c.format == "json") {
    JsonObject o;
    o.string("mode", to_string(c.flow.mode))
        .string("status", to_string(st.status))
        .integer("steps", st.step_index)
        .number("functional", st.functional)
        .number("area", st.area)
        .number("l2_residual", st.residual)
        .number("lambda_star", st.lambda_star)
        .number("hawking_energy", energy)
        .string("message", st.message);
    out.json("flow_report", o);
  } else {
    out.flat_csv("flow_report",
                 {"steps", "functional", "area", "l2_residual", "lambda_star",
                  "hawking_energy", "converged"},
                 {double(st.step_index), st.functional, st.area, st.residual,
                  st.lambda_star, energy,
                  st.status == FlowStatus::kConverged ? 1.0 : 0.0});
  }
  if (st.status == FlowStatus::kDegenerate)
    fail(ErrorKind::kFlow, "flow failed: " + st.message +
                               " (last valid state written)");
  out.result.message = to_string(st.status);
}

void run_sweep(const RunConfig& c, Output& out) {
  const RadialModel model(c.sweep.model, c.sweep.n, c.sweep.params);
  CsvTable t(kRadialColumns);
  std::vector<JsonObject> rows;
  bool undefined = false;
  for (double r : c.sweep.radii) {
    const auto rep = radial_sphere(model, r, c.sweep.charge);
    undefined |= !rep.f_defined;
    t.add_row(radial_row(rep));
    rows.push_back(to_json(rep));
  }
  out.write("sweep.csv", t.dump());
  if (c.format == "json") {
    JsonObject o;
    o.string("model", model.name())
        .integer("n", model.dimension())
        .object("params", params_json(model.params()))
        .number("charge", c.sweep.charge)
        .objects("rows", rows);
    out.json("sweep", o);
  }
  if (undefined) {
    out.result.exit_code = 2;
    out.result.message = "f undefined where H <= 0";
  }
}

void run_varcheck(const RunConfig& c, Output& out) {
  const AmbientSpace space = build_space(*c.space);
  const SurfaceMesh mesh = build_mesh(*c.surface, c.ntheta, c.nphi);
  const Field alpha = make_lapse(c.varcheck, mesh.grid());
  const auto chk =
      first_variation_check(space, mesh, alpha, c.varcheck.s, c.varcheck.mode);
  if (c.format == "json") {
    out.json("varcheck", to_json(chk));
  } else {
    CsvTable t({"s", "difference_quotient", "analytic", "error",
                "relative_error", "order"});
    for (const auto& r : chk.rows)
      t.add_row({r.s, r.difference_quotient, r.analytic, r.error,
                 r.relative_error, r.order});
    out.write("varcheck.csv", t.dump());
  }
}

}  // namespace

RunResult run(const RunConfig& config) {
  validate(config);
  RunResult result;
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec)
    fail(ErrorKind::kIo, "cannot create output directory '" + config.out_dir +
                             "': " + ec.message());
  Output out{config, result};
  switch (config.task) {
    case Task::kEval: run_eval(config, out); break;
    case Task::kResidual: run_residual(config, out); break;
    case Task::kFlow: run_flow_task(config, out); break;
    case Task::kSweep: run_sweep(config, out); break;
    case Task::kVarcheck: run_varcheck(config, out); break;
  }
  return result;
}

}  // namespace qll
