// qll: batch front end over the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qll/qll.h"

namespace {

struct Options {
  std::string config;
  std::string grid;
  std::string out;
  std::string format;
};

bool parse_grid(const std::string& s, int grid[2]) {
  const auto x = s.find_first_of("xX");
  if (x == std::string::npos) return false;
  try {
    size_t a = 0, b = 0;
    grid[0] = std::stoi(s.substr(0, x), &a);
    grid[1] = std::stoi(s.substr(x + 1), &b);
    return a == x && b == s.size() - x - 1;
  } catch (const std::exception&) {
    return false;
  }
}

int run(const std::string& task, const Options& opt) {
  std::ifstream in(opt.config, std::ios::binary);
  if (!in) {
    std::cerr << "qll: cannot read config '" << opt.config << "'\n";
    return 1;
  }
  std::ostringstream text;
  text << in.rdbuf();

  int grid[2];
  if (!opt.grid.empty() && !parse_grid(opt.grid, grid)) {
    std::cerr << "qll: --grid expects NxM, got '" << opt.grid << "'\n";
    return 1;
  }
  const qll_status st = qll_run_config(
      text.str().c_str(), task.c_str(), opt.grid.empty() ? nullptr : grid,
      opt.out.empty() ? nullptr : opt.out.c_str(),
      opt.format.empty() ? nullptr : opt.format.c_str());
  if (st == QLL_OK) return 0;
  std::cerr << "qll " << task << ": " << qll_status_name(st) << " error: "
            << qll_last_error() << "\n";
  return st == QLL_E_HYPOTHESIS ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-local energy lab: Hawking energy, Willmore/Hawking "
               "residuals and flows on closed surfaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qll_version());
  int threads = 0;
  app.add_option("--threads", threads,
                 "cap on worker threads (default: QLL_THREADS or all cores)");

  Options opt;
  std::string chosen;
  const std::pair<const char*, const char*> commands[] = {
      {"eval", "energies and hypothesis integrals of one surface"},
      {"residual", "Willmore or Hawking Euler-Lagrange residual"},
      {"flow", "area-constrained gradient flow"},
      {"sweep", "radial n-dimensional sweep"},
      {"varcheck", "finite-difference check of the first variation"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config,-c", opt.config, "JSON run config")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--grid", opt.grid, "grid override NxM (ntheta x nphi)");
    sub->add_option("--out,-o", opt.out, "output directory");
    sub->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->callback([&chosen, n = std::string(name)] { chosen = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (threads > 0) qll_set_threads(threads);
  return run(chosen, opt);
}
