#include "clines/reproduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

namespace clines {

NamedInstance proposition_1() {
  return NamedInstance{
      .name = "proposition_1",
      .problem = Problem(StepWeight(1.0, -0.21, 0.2), Nonlinearity::hat(3.0), 45.0),
      .min_clines = 3,
      .max_clines = 3,
      .expected_c = {0.125, 0.479, 0.683},
      .expected_terminal_u = {0.273, 0.601, 0.833},
      .tolerance = 0.005,
      .lambda_sweep = {},
  };
}

NamedInstance proposition_2() {
  return NamedInstance{
      .name = "proposition_2",
      .problem = Problem(StepWeight(2.4, -0.255, 0.6), Nonlinearity::arctan_damped(10.0), 3.0),
      .min_clines = 3,
      .max_clines = 3,
      .expected_c = {0.436, 0.776, 0.854},
      .expected_terminal_u = {},
      .tolerance = 0.005,
      .lambda_sweep = {},
  };
}

std::vector<NamedInstance> remark_instances() {
  const StepWeight geometry(1.0, -0.21, 0.2);
  return {
      NamedInstance{
          .name = "remark_no_dominance",
          .problem = Problem(geometry, Nonlinearity::degree_of_dominance(0.0), 45.0),
          .min_clines = 0,
          .max_clines = 1,
          .expected_c = {},
          .expected_terminal_u = {},
          .tolerance = 0.005,
          .lambda_sweep = {45.0},
      },
      NamedInstance{
          .name = "remark_a2_dominant",
          .problem = Problem(geometry, Nonlinearity::degree_of_dominance(-1.0), 45.0),
          .min_clines = 2,
          .max_clines = std::nullopt,
          .expected_c = {},
          .expected_terminal_u = {},
          .tolerance = 0.005,
          .lambda_sweep = {10.0, 45.0, 100.0},
      },
  };
}

ComparisonReport compare(const NamedInstance& instance, std::span<const FoundRoot> found) {
  ComparisonReport rep;
  rep.name = instance.name;
  rep.tolerance = instance.tolerance;
  rep.expected_count = instance.expected_c.size();
  rep.found_count = found.size();

  const auto& exp = instance.expected_c;
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < exp.size(); ++i)
    for (std::size_t j = 0; j < found.size(); ++j)
      pairs.emplace_back(std::abs(exp[i] - found[j].c), i, j);
  std::sort(pairs.begin(), pairs.end());

  std::vector<bool> used_e(exp.size(), false), used_f(found.size(), false);
  for (const auto& [dist, i, j] : pairs) {
    if (used_e[i] || used_f[j]) continue;
    used_e[i] = used_f[j] = true;
    CompareMatch m;
    m.expected_c = exp[i];
    m.found_c = found[j].c;
    m.deviation_c = dist;
    m.found_u = found[j].terminal_u;
    m.pass = dist <= instance.tolerance;
    if (i < instance.expected_terminal_u.size()) {
      m.expected_u = instance.expected_terminal_u[i];
      m.deviation_u = std::abs(*m.expected_u - m.found_u);
      m.pass = m.pass && *m.deviation_u <= instance.tolerance;
    }
    rep.matches.push_back(m);
  }
  std::sort(rep.matches.begin(), rep.matches.end(),
            [](const auto& a, const auto& b) { return a.expected_c < b.expected_c; });
  for (std::size_t i = 0; i < exp.size(); ++i)
    if (!used_e[i]) rep.unmatched_expected.push_back(exp[i]);
  for (std::size_t j = 0; j < found.size(); ++j)
    if (!used_f[j]) rep.extras.push_back(found[j].c);

  rep.pass = rep.unmatched_expected.empty() && rep.extras.empty() &&
             std::all_of(rep.matches.begin(), rep.matches.end(), [](const auto& m) { return m.pass; });
  return rep;
}

ComparisonReport compare(const NamedInstance& instance, std::span<const Cline> found) {
  std::vector<FoundRoot> roots;
  roots.reserve(found.size());
  for (const Cline& c : found) roots.push_back({c.c, c.terminal_u});
  return compare(instance, std::span<const FoundRoot>(roots));
}

std::string render_table(const ComparisonReport& r) {
  std::ostringstream os;
  char line[160];
  os << r.name << "  (tolerance " << r.tolerance << ", expected " << r.expected_count << ", found "
     << r.found_count << ")\n";
  std::snprintf(line, sizeof line, "  %-10s %-12s %-10s %-10s %-12s %-10s %s\n", "c_ref", "c_found",
                "|dc|", "u_ref", "u_found", "|du|", "status");
  os << line;
  for (const auto& m : r.matches) {
    char uref[16] = "-", du[16] = "-";
    if (m.expected_u) std::snprintf(uref, sizeof uref, "%.3f", *m.expected_u);
    if (m.deviation_u) std::snprintf(du, sizeof du, "%.2e", *m.deviation_u);
    std::snprintf(line, sizeof line, "  %-10.3f %-12.8f %-10.2e %-10s %-12.8f %-10s %s\n",
                  m.expected_c, m.found_c, m.deviation_c, uref, m.found_u, du,
                  m.pass ? "ok" : "FAIL");
    os << line;
  }
  for (double e : r.unmatched_expected) os << "  unmatched expectation c = " << e << "\n";
  for (double x : r.extras) os << "  extra root c = " << x << "\n";
  os << "  => " << (r.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::vector<SweepPoint> sweep_lambda(const NamedInstance& instance, const IntegratorConfig& cfg,
                                     const SearchSettings& settings) {
  std::vector<SweepPoint> out;
  for (double lambda : instance.lambda_sweep) {
    Problem p(instance.problem.weight, instance.problem.f, lambda);
    const ClineSearch s = find_all_clines(p, cfg, settings);
    out.push_back({lambda, s.clines.size(), s.rejected.size(), s.failures.size()});
  }
  return out;
}

}  // namespace clines
