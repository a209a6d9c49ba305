#include "clines/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace clines {

namespace {

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

GammaEntry shoot_entry(const Problem& p, const IntegratorConfig& cfg, double r) {
  GammaEntry e;
  e.r = r;
  try {
    e.terminal = poincare_map(p, cfg, {r, 0.0});
  } catch (const BlowupError& err) {
    e.blew_up = true;
    e.blowup_x = err.x();
    e.terminal = err.state();
  }
  return e;
}

}  // namespace

GammaCurve build_gamma(const Problem& p, const IntegratorConfig& cfg, std::size_t resolution,
                       unsigned threads) {
  if (resolution < 11) throw std::invalid_argument("gamma resolution must be >= 11");
  plan_steps(p, cfg);  // validates cfg before spawning workers

  GammaCurve g;
  g.resolution = resolution;
  g.entries.resize(resolution);
  const double last = static_cast<double>(resolution - 1);
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < resolution; i += stride)
      g.entries[i] = shoot_entry(p, cfg, static_cast<double>(i) / last);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, resolution));
  if (threads <= 1) {
    work(0, 1);
    return g;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  return g;
}

std::vector<Bracket> find_brackets(const GammaCurve& g) {
  std::vector<Bracket> out;
  const auto& e = g.entries;
  if (e.size() < 3) return out;
  const std::size_t first = 1;
  const std::size_t last = e.size() - 2;  // r = 0 and r = 1 are excluded

  auto usable = [&](std::size_t i) { return !e[i].blew_up; };
  auto is_root = [&](std::size_t i) { return std::abs(e[i].terminal.v) < kExactRootV; };

  for (std::size_t i = first; i <= last; ++i) {
    if (!usable(i)) continue;
    if (is_root(i)) {
      out.push_back({e[i].r, e[i].r, e[i].terminal.v, e[i].terminal.v});
      continue;
    }
    if (i + 1 > last || !usable(i + 1) || is_root(i + 1)) continue;
    if (opposite(e[i].terminal.v, e[i + 1].terminal.v))
      out.push_back({e[i].r, e[i + 1].r, e[i].terminal.v, e[i + 1].terminal.v});
  }
  return out;
}

BracketLostError::BracketLostError(double r, const std::string& cause)
    : std::runtime_error("bracket lost at r = " + std::to_string(r) + ": " + cause), r_(r) {}

Cline bisect_cline(const Problem& p, const IntegratorConfig& cfg, const Bracket& b, double tol_r,
                   double tol_v) {
  if (!(tol_r > 0.0) || !(tol_v > 0.0)) throw std::invalid_argument("tolerances must be > 0");
  if (!b.degenerate() && !(b.r_lo < b.r_hi && opposite(b.v_lo, b.v_hi)))
    throw std::invalid_argument("bracket must satisfy r_lo < r_hi and v_lo * v_hi < 0");

  auto shoot_v = [&](double r) {
    try {
      return poincare_map(p, cfg, {r, 0.0}).v;
    } catch (const BlowupError& err) {
      throw BracketLostError(r, err.what());
    }
  };

  Cline cl;
  cl.bracket = b;
  double best_r = b.r_lo;
  if (!b.degenerate()) {
    double lo = b.r_lo, hi = b.r_hi, v_lo = b.v_lo;
    double best_abs = INFINITY;
    while (hi - lo >= tol_r) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      const double vm = shoot_v(mid);
      ++cl.iterations;
      if (std::abs(vm) < best_abs) {
        best_abs = std::abs(vm);
        best_r = mid;
      }
      if (std::abs(vm) < tol_v) break;
      if (opposite(vm, v_lo)) {
        hi = mid;
      } else {
        lo = mid;
        v_lo = vm;
      }
    }
  }

  cl.c = best_r;
  cl.trajectory = integrate(p, cfg, {cl.c, 0.0});
  cl.terminal_u = cl.trajectory.terminal().u;
  cl.terminal_v_residual = cl.trajectory.terminal().v;
  cl.min_u = cl.trajectory.min_u();
  cl.max_u = cl.trajectory.max_u();
  cl.necessary_integral = neumann_necessary_integral(p, cl.trajectory);

  if (!(std::abs(cl.terminal_v_residual) <= tol_v)) {
    cl.rejection = "terminal v residual above tolerance";
  } else if (!(cl.min_u > kBoundaryMargin)) {
    cl.rejection = "profile reaches u <= 0";
  } else if (!(cl.max_u < 1.0 - kBoundaryMargin)) {
    cl.rejection = "profile reaches u >= 1";
  }
  cl.validated = cl.rejection.empty();
  return cl;
}

ClineSearch find_all_clines(const Problem& p, const IntegratorConfig& cfg,
                            const SearchSettings& settings) {
  ClineSearch out;
  out.gamma = build_gamma(p, cfg, settings.resolution, settings.threads);
  out.brackets = find_brackets(out.gamma);

  std::vector<Cline> roots;
  for (const Bracket& b : out.brackets) {
    try {
      roots.push_back(bisect_cline(p, cfg, b, settings.tol_r, settings.tol_v));
    } catch (const BracketLostError& err) {
      out.failures.push_back({b, err.r(), err.what()});
    }
  }

  std::stable_sort(roots.begin(), roots.end(),
                   [](const Cline& a, const Cline& b) { return a.c < b.c; });
  const double dedup = 10.0 * settings.tol_r;
  double last_c = -INFINITY;
  for (Cline& cl : roots) {
    if (cl.c - last_c < dedup) continue;
    last_c = cl.c;
    (cl.validated ? out.clines : out.rejected).push_back(std::move(cl));
  }
  return out;
}

}  // namespace clines
