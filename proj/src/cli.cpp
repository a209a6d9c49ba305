#include "clines/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "clines/io.hpp"
#include "clines/reproduction.hpp"
#include "clines/shooting.hpp"

namespace clines {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string out_dir;
  unsigned threads = 0;
};

fs::path output_dir(const Common& c) {
  fs::path dir = ".";
  if (const char* env = std::getenv("CLINE_SEED_DIR"); env && *env) dir = env;
  if (!c.out_dir.empty()) dir = c.out_dir;
  fs::create_directories(dir);
  return dir;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_manifest(const fs::path& dir, RunManifest m, double wall) {
  m.wall_time_s = wall;
  write_text_file(dir / "manifest.json", to_json(m, true).dump(2) + "\n");
}

std::size_t sign_changes(const GammaCurve& g) {
  std::size_t n = 0;
  double prev = 0.0;
  for (std::size_t i = 1; i + 1 < g.entries.size(); ++i) {
    const auto& e = g.entries[i];
    if (e.blew_up || e.terminal.v == 0.0) continue;
    if (prev != 0.0 && (prev < 0.0) != (e.terminal.v < 0.0)) ++n;
    prev = e.terminal.v;
  }
  return n;
}

int cmd_check_f(const std::string& config, std::size_t grid, std::ostream& out) {
  const Problem p = load_problem(config);
  const ConjectureReport r = validate_conjecture_hypotheses(p, grid);
  const FStarReport& f = r.f_report;
  out << "nonlinearity " << p.f.name() << "  (grid " << f.grid_size << ")\n"
      << "  f(0) = " << f.f_at_0 << ", f(1) = " << f.f_at_1 << ", f'(0) = " << f.fprime_at_0
      << ", f'(1) = " << f.fprime_at_1 << "\n"
      << "  positive on (0,1):          " << std::boolalpha << f.positive_on_open_interval << "\n"
      << "  concave:                    " << f.is_concave << "\n"
      << "  f(s)/s strictly decreasing: " << f.ratio_strictly_decreasing << "\n"
      << "weight mean = " << std::setprecision(17) << r.weight_mean << std::setprecision(6) << "\n"
      << "  (a) w > 0 on positive measure: " << r.positive_on_positive_measure << "\n"
      << "  (b) mean < 0:                  " << r.mean_negative << "\n"
      << "  (c) f satisfies (f*):          " << r.f_star << "\n"
      << "  (d) f(s)/s decreasing:         " << r.ratio_decreasing << "\n"
      << "in conjecture scope: " << r.in_scope() << "\n"
      << to_json(r).dump(2) << "\n";
  return r.in_scope() ? kExitOk : kExitHypothesisFail;
}

int cmd_shoot(const Common& c, const std::string& config, double r, double step,
              std::size_t decimate, const std::string& name, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const Problem p = load_problem(config);
  const IntegratorConfig cfg{.target_step = step};
  RunManifest m = RunManifest::make(p, cfg, 0, 0.0, 0.0);
  Trajectory t;
  try {
    t = integrate(p, cfg, {r, 0.0});
  } catch (const BlowupError& e) {
    err << "blow-up: " << e.what() << "\n";
    out << "blowup x = " << std::setprecision(17) << e.x() << "\n";
    return kExitBlowup;
  }
  const fs::path dir = output_dir(c);
  std::ostringstream csv;
  write_trajectory_csv(csv, t, decimate, &m);
  write_text_file(dir / name, csv.str());
  write_manifest(dir, m, seconds_since(t0));
  out << std::setprecision(17) << "terminal u = " << t.terminal().u << " v = " << t.terminal().v
      << "\nwrote " << (dir / name).string() << "\n";
  return kExitOk;
}

int cmd_gamma(const Common& c, const std::string& config, std::size_t resolution, double step,
              std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Problem p = load_problem(config);
  const IntegratorConfig cfg{.target_step = step};
  RunManifest m = RunManifest::make(p, cfg, resolution, 0.0, 0.0);
  const GammaCurve g = build_gamma(p, cfg, resolution, c.threads);
  const fs::path dir = output_dir(c);
  std::ostringstream csv;
  write_gamma_csv(csv, g, &m);
  write_text_file(dir / "gamma.csv", csv.str());
  const double wall = seconds_since(t0);
  write_manifest(dir, m, wall);
  out << "wrote " << (dir / "gamma.csv").string() << " (" << g.entries.size()
      << " rows), interior sign changes of v_end: " << sign_changes(g) << ", wall " << wall << " s\n";
  return kExitOk;
}

void write_constant_profile(const fs::path& file, const Problem& p, const IntegratorConfig& cfg,
                            double level, std::size_t decimate, const RunManifest& m) {
  std::ostringstream csv;
  write_trajectory_csv(csv, integrate(p, cfg, {level, 0.0}), decimate, &m);
  write_text_file(file, csv.str());
}

int cmd_find(const Common& c, const std::string& config, const SearchSettings& s, double step,
             std::size_t decimate, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Problem p = load_problem(config);
  const IntegratorConfig cfg{.target_step = step};
  RunManifest m = RunManifest::make(p, cfg, s.resolution, s.tol_r, s.tol_v);
  const ClineSearch res = find_all_clines(p, cfg, s);
  const fs::path dir = output_dir(c);

  std::vector<std::string> files;
  for (std::size_t i = 0; i < res.clines.size(); ++i) {
    files.push_back("cline_" + std::to_string(i + 1) + ".csv");
    std::ostringstream csv;
    write_trajectory_csv(csv, res.clines[i].trajectory, decimate, &m);
    write_text_file(dir / files.back(), csv.str());
  }
  write_constant_profile(dir / "trivial_p0.csv", p, cfg, 0.0, decimate, m);
  write_constant_profile(dir / "trivial_p1.csv", p, cfg, 1.0, decimate, m);
  write_text_file(dir / "clines.json", to_json(res, p, m, files).dump(2) + "\n");
  const double wall = seconds_since(t0);
  write_manifest(dir, m, wall);

  out << "brackets: " << res.brackets.size() << ", validated clines: " << res.clines.size()
      << ", rejected: " << res.rejected.size() << ", lost brackets: " << res.failures.size() << "\n";
  out << std::setprecision(12);
  for (const auto& cl : res.clines)
    out << "  c = " << cl.c << "  u(omega2) = " << cl.terminal_u << "  residual v = "
        << cl.terminal_v_residual << "\n";
  for (const auto& cl : res.rejected)
    out << "  rejected c = " << cl.c << " (" << cl.rejection << ")\n";
  out << std::setprecision(6) << "wall " << wall << " s\n";

  if (res.brackets.empty()) return kExitNoBrackets;
  return res.clines.empty() ? kExitNoBrackets : kExitOk;
}

int cmd_reproduce(const Common& c, const SearchSettings& s, double step, bool remarks,
                  std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const IntegratorConfig cfg{.target_step = step};
  nlohmann::json reports = nlohmann::json::array();
  bool all_pass = true;
  bool missing_brackets = false;
  for (const NamedInstance& inst : {proposition_1(), proposition_2()}) {
    const ClineSearch res = find_all_clines(inst.problem, cfg, s);
    const ComparisonReport rep = compare(inst, std::span<const Cline>(res.clines));
    out << render_table(rep);
    for (const auto& cl : res.rejected)
      out << "  (rejected root c = " << std::setprecision(10) << cl.c << ": " << cl.rejection << ")\n";
    out << std::setprecision(6);
    all_pass = all_pass && rep.pass;
    missing_brackets = missing_brackets || res.brackets.empty();
    nlohmann::json j = to_json(rep);
    j["manifest"] = to_json(RunManifest::make(inst.problem, cfg, s.resolution, s.tol_r, s.tol_v));
    reports.push_back(std::move(j));
  }
  nlohmann::json doc{{"reports", reports}};
  if (remarks) {
    nlohmann::json sweeps = nlohmann::json::array();
    for (const NamedInstance& inst : remark_instances()) {
      for (const SweepPoint& sp : sweep_lambda(inst, cfg, s)) {
        out << inst.name << "  lambda = " << sp.lambda << ": " << sp.validated << " validated clines ("
            << (inst.count_ok(sp.validated) ? "within" : "outside") << " the expected count range)\n";
        sweeps.push_back({{"name", inst.name},
                          {"lambda", sp.lambda},
                          {"validated", sp.validated},
                          {"rejected", sp.rejected},
                          {"count_ok", inst.count_ok(sp.validated)}});
      }
    }
    doc["remark_sweeps"] = sweeps;
  }
  const fs::path dir = output_dir(c);
  write_text_file(dir / "reproduce.json", doc.dump(2) + "\n");
  out << "overall: " << (all_pass ? "PASS" : "FAIL") << "  (wall " << seconds_since(t0) << " s)\n";
  if (missing_brackets) return kExitNoBrackets;
  return all_pass ? kExitOk : kExitHypothesisFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clines of indefinite-weight Neumann problems by phase-plane shooting", "clines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common common;
  app.add_option("--out", common.out_dir, "Output directory (default: $CLINE_SEED_DIR or .)");
  app.add_option("--threads", common.threads, "Worker threads for the gamma sweep (0 = auto)");

  std::string config;
  std::size_t grid = kDefaultFStarGrid;
  double r = 0.0;
  double step = IntegratorConfig{}.target_step;
  std::size_t decimate = 1;
  std::string shoot_name = "trajectory.csv";
  bool remarks = false;
  SearchSettings search;

  auto* check = app.add_subcommand("check-f", "Check (f*) and the conjecture hypotheses");
  check->add_option("config", config, "Problem JSON")->required();
  check->add_option("--grid", grid, "Uniform grid size on (0,1)")->check(CLI::Range(100, 100000000));

  auto* shoot = app.add_subcommand("shoot", "Integrate from (r, 0) and write the trajectory");
  shoot->add_option("config", config, "Problem JSON")->required();
  shoot->add_option("--r", r, "Initial height p(omega1)")->required();
  shoot->add_option("--step", step, "Target RK4 step")->check(CLI::PositiveNumber);
  shoot->add_option("--decimate", decimate, "Keep every n-th sample")->check(CLI::PositiveNumber);
  shoot->add_option("--output", shoot_name, "CSV file name inside the output directory");

  auto* gamma = app.add_subcommand("gamma", "Sample the image of the segment {0<=u<=1, v=0}");
  gamma->add_option("config", config, "Problem JSON")->required();
  gamma->add_option("--resolution", search.resolution, "Grid points on [0,1]")->check(CLI::Range(11, 100000000));
  gamma->add_option("--step", step, "Target RK4 step")->check(CLI::PositiveNumber);

  auto* find = app.add_subcommand("find", "Locate all clines");
  find->add_option("config", config, "Problem JSON")->required();
  find->add_option("--resolution", search.resolution, "Gamma grid points")->check(CLI::Range(11, 100000000));
  find->add_option("--tol-r", search.tol_r, "Bisection width tolerance")->check(CLI::PositiveNumber);
  find->add_option("--tol-v", search.tol_v, "Terminal v tolerance")->check(CLI::PositiveNumber);
  find->add_option("--step", step, "Target RK4 step")->check(CLI::PositiveNumber);
  find->add_option("--decimate", decimate, "Keep every n-th trajectory sample")->check(CLI::PositiveNumber);

  auto* repro = app.add_subcommand("reproduce", "Run both multiplicity examples against reference values");
  repro->add_option("--resolution", search.resolution, "Gamma grid points")->check(CLI::Range(11, 100000000));
  repro->add_option("--tol-r", search.tol_r, "Bisection width tolerance")->check(CLI::PositiveNumber);
  repro->add_option("--tol-v", search.tol_v, "Terminal v tolerance")->check(CLI::PositiveNumber);
  repro->add_option("--step", step, "Target RK4 step")->check(CLI::PositiveNumber);
  repro->add_flag("--remarks", remarks, "Also sweep the dominance scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitConfigError;
  }

  search.threads = common.threads;
  try {
    if (*check) return cmd_check_f(config, grid, out);
    if (*shoot) return cmd_shoot(common, config, r, step, decimate, shoot_name, out, err);
    if (*gamma) return cmd_gamma(common, config, search.resolution, step, out);
    if (*find) return cmd_find(common, config, search, step, decimate, out);
    if (*repro) return cmd_reproduce(common, search, step, remarks, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace clines
