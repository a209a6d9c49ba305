#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "clines/integrator.hpp"
#include "clines/nonlinearity.hpp"
#include "clines/problem.hpp"
#include "clines/reproduction.hpp"
#include "clines/shooting.hpp"

namespace clines {

inline constexpr const char* kToolVersion = "1.0.0";

/// Malformed or invalid configuration. what() names the location.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const Nonlinearity& f);
nlohmann::json to_json(const StepWeight& w);
nlohmann::json to_json(const Problem& p);
nlohmann::json to_json(const FStarReport& r);
nlohmann::json to_json(const ConjectureReport& r);
nlohmann::json to_json(const ComparisonReport& r);

Nonlinearity nonlinearity_from_json(const nlohmann::json& j);
StepWeight weight_from_json(const nlohmann::json& j);
Problem problem_from_json(const nlohmann::json& j);

/// Parses text; ConfigError carries the parse position or the JSON pointer
/// of the offending field.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::filesystem::path& path);

/// SHA-256 (hex) of the compact canonical JSON of the problem.
std::string config_digest(const Problem& p);

struct RunManifest {
  std::string config_digest;
  IntegratorConfig integrator;
  StepPlan steps;
  std::size_t resolution = 0;
  double tol_r = 0.0;
  double tol_v = 0.0;
  std::string tool_version = kToolVersion;
  std::optional<double> wall_time_s;

  static RunManifest make(const Problem& p, const IntegratorConfig& cfg, std::size_t resolution,
                          double tol_r, double tol_v);
};

/// wall_time_s is only written when include_timing is set, so that data
/// files stay byte-identical across runs.
nlohmann::json to_json(const RunManifest& m, bool include_timing = false);

/// One-line "# ..." reference to the manifest used as the first CSV line.
std::string manifest_comment(const RunManifest& m);

/// Header `x,u,v`; every decimate-th sample plus the x = 0 node and the
/// final sample. decimate must be >= 1.
void write_trajectory_csv(std::ostream& os, const Trajectory& t, std::size_t decimate = 1,
                          const RunManifest* manifest = nullptr);

/// Header `r,u_end,v_end,status`; status is "ok" or "blowup@<x>".
void write_gamma_csv(std::ostream& os, const GammaCurve& g, const RunManifest* manifest = nullptr);

/// Result envelope of find_all_clines. trajectory_files, when given, is the
/// CSV name for each validated cline (same order as s.clines).
nlohmann::json to_json(const ClineSearch& s, const Problem& p, const RunManifest& m,
                       const std::vector<std::string>& trajectory_files = {});
nlohmann::json to_json(const Cline& c);

/// Writes the whole string to path in binary mode.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace clines
