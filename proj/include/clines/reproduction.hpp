#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clines/problem.hpp"
#include "clines/shooting.hpp"

namespace clines {

/// A canned instance together with the reference values it should reproduce.
///
/// For the two multiplicity examples min_clines == max_clines == 3 and
/// expected_c carries the reference initial heights. The qualitative remark
/// scenarios leave the expected lists empty and only bound the count.
struct NamedInstance {
  std::string name;
  Problem problem;
  std::size_t min_clines = 0;
  std::optional<std::size_t> max_clines;
  std::vector<double> expected_c;
  std::vector<double> expected_terminal_u;  // empty when not published
  double tolerance = 0.005;
  std::vector<double> lambda_sweep;  // remark scenarios only

  std::size_t expected_cline_count() const { return expected_c.size(); }
  bool count_ok(std::size_t n) const {
    return n >= min_clines && (!max_clines || n <= *max_clines);
  }
};

NamedInstance proposition_1();
NamedInstance proposition_2();
/// (a) no dominance, k = 0, at most one cline; (b) A2 dominant, k = -1,
/// observed per lambda in lambda_sweep.
std::vector<NamedInstance> remark_instances();

struct FoundRoot {
  double c = 0.0;
  double terminal_u = 0.0;
};

struct CompareMatch {
  double expected_c = 0.0;
  double found_c = 0.0;
  double deviation_c = 0.0;
  std::optional<double> expected_u;
  double found_u = 0.0;
  std::optional<double> deviation_u;
  bool pass = false;
};

struct ComparisonReport {
  std::string name;
  double tolerance = 0.0;
  std::size_t expected_count = 0;
  std::size_t found_count = 0;
  std::vector<CompareMatch> matches;   // sorted by expected_c
  std::vector<double> unmatched_expected;
  std::vector<double> extras;          // found c values with no partner
  bool pass = false;
};

/// Pairs expected and found heights greedily by increasing distance; a pair
/// passes when both the height and (if published) the terminal value are
/// within tolerance. The report passes when every pair passes and nothing
/// is left over on either side.
ComparisonReport compare(const NamedInstance& instance, std::span<const FoundRoot> found);
ComparisonReport compare(const NamedInstance& instance, std::span<const Cline> found);

std::string render_table(const ComparisonReport& report);

struct SweepPoint {
  double lambda = 0.0;
  std::size_t validated = 0;
  std::size_t rejected = 0;
  std::size_t failures = 0;
};

/// Runs find_all_clines for each lambda in instance.lambda_sweep.
std::vector<SweepPoint> sweep_lambda(const NamedInstance& instance, const IntegratorConfig& cfg,
                                     const SearchSettings& settings = {});

}  // namespace clines
