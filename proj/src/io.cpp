#include "clines/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <variant>

namespace clines {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(where + "/" + key + ": missing field");
  return *it;
}

double number(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number()) throw ConfigError(where + "/" + key + ": expected a number");
  return v.get<double>();
}

// Re-throws constructor validation errors with the JSON location attached.
template <class F>
auto located(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::string fmt17(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

json to_json(const Nonlinearity& f) {
  return std::visit(Overloaded{
                        [](const DegreeOfDominance& d) {
                          return json{{"kind", "degree_of_dominance"}, {"k", d.k}};
                        },
                        [](const HatFamily& h) { return json{{"kind", "hat"}, {"h", h.h}}; },
                        [](const ArctanDamped& a) {
                          return json{{"kind", "arctan_damped"}, {"m", a.m}};
                        },
                        [](const CustomPolynomial& p) {
                          return json{{"kind", "poly"}, {"coeffs", p.coeffs}};
                        },
                    },
                    f.kind());
}

json to_json(const StepWeight& w) {
  return {{"alpha", w.alpha()}, {"omega1", w.omega1()}, {"omega2", w.omega2()}};
}

json to_json(const Problem& p) {
  return {{"weight", to_json(p.weight)}, {"f", to_json(p.f)}, {"lambda", p.lambda}};
}

Nonlinearity nonlinearity_from_json(const json& j) {
  const std::string where = "/f";
  const json& kind = field(j, "kind", where);
  if (!kind.is_string()) throw ConfigError(where + "/kind: expected a string");
  const auto k = kind.get<std::string>();
  if (k == "degree_of_dominance") {
    const double v = number(j, "k", where);
    return located(where + "/k", [&] { return Nonlinearity::degree_of_dominance(v); });
  }
  if (k == "hat") {
    const double v = number(j, "h", where);
    return located(where + "/h", [&] { return Nonlinearity::hat(v); });
  }
  if (k == "arctan_damped") {
    const double v = number(j, "m", where);
    return located(where + "/m", [&] { return Nonlinearity::arctan_damped(v); });
  }
  if (k == "poly") {
    const json& c = field(j, "coeffs", where);
    if (!c.is_array()) throw ConfigError(where + "/coeffs: expected an array");
    std::vector<double> coeffs;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].is_number())
        throw ConfigError(where + "/coeffs/" + std::to_string(i) + ": expected a number");
      coeffs.push_back(c[i].get<double>());
    }
    return located(where + "/coeffs", [&] { return Nonlinearity::polynomial(std::move(coeffs)); });
  }
  throw ConfigError(where + "/kind: unknown kind '" + k + "'");
}

StepWeight weight_from_json(const json& j) {
  const std::string where = "/weight";
  const double a = number(j, "alpha", where);
  const double w1 = number(j, "omega1", where);
  const double w2 = number(j, "omega2", where);
  return located(where, [&] { return StepWeight(a, w1, w2); });
}

Problem problem_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("/: expected an object");
  StepWeight w = weight_from_json(field(j, "weight", ""));
  Nonlinearity f = nonlinearity_from_json(field(j, "f", ""));
  const double lambda = number(j, "lambda", "");
  return located("/lambda", [&] { return Problem(w, f, lambda); });
}

Problem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }
  return problem_from_json(j);
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_problem(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string config_digest(const Problem& p) {
  const std::string canon = to_json(p).dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canon.data(), canon.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string hex;
  hex.reserve(2 * len);
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", md[i]);
    hex += byte;
  }
  return hex;
}

json to_json(const FStarReport& r) {
  return {{"f_at_0", r.f_at_0},
          {"f_at_1", r.f_at_1},
          {"fprime_at_0", r.fprime_at_0},
          {"fprime_at_1", r.fprime_at_1},
          {"positive_on_open_interval", r.positive_on_open_interval},
          {"is_concave", r.is_concave},
          {"ratio_strictly_decreasing", r.ratio_strictly_decreasing},
          {"grid_size", r.grid_size},
          {"satisfies_f_star", r.satisfies_f_star()}};
}

json to_json(const ConjectureReport& r) {
  return {{"positive_on_positive_measure", r.positive_on_positive_measure},
          {"weight_mean", r.weight_mean},
          {"mean_negative", r.mean_negative},
          {"f_star", r.f_star},
          {"ratio_decreasing", r.ratio_decreasing},
          {"in_scope", r.in_scope()},
          {"f_report", to_json(r.f_report)}};
}

json to_json(const ComparisonReport& r) {
  json matches = json::array();
  for (const auto& m : r.matches) {
    json jm{{"expected_c", m.expected_c},
            {"found_c", m.found_c},
            {"deviation_c", m.deviation_c},
            {"found_terminal_u", m.found_u},
            {"pass", m.pass}};
    if (m.expected_u) jm["expected_terminal_u"] = *m.expected_u;
    if (m.deviation_u) jm["deviation_terminal_u"] = *m.deviation_u;
    matches.push_back(std::move(jm));
  }
  return {{"name", r.name},
          {"tolerance", r.tolerance},
          {"expected_count", r.expected_count},
          {"found_count", r.found_count},
          {"matches", matches},
          {"unmatched_expected", r.unmatched_expected},
          {"extras", r.extras},
          {"pass", r.pass}};
}

RunManifest RunManifest::make(const Problem& p, const IntegratorConfig& cfg, std::size_t resolution,
                              double tol_r, double tol_v) {
  RunManifest m;
  m.config_digest = clines::config_digest(p);
  m.integrator = cfg;
  m.steps = plan_steps(p, cfg);
  m.resolution = resolution;
  m.tol_r = tol_r;
  m.tol_v = tol_v;
  return m;
}

json to_json(const RunManifest& m, bool include_timing) {
  json j{{"config_digest", m.config_digest},
         {"integrator",
          {{"method", "rk4_fixed_split_at_0"},
           {"target_step", m.integrator.target_step},
           {"effective_target_step", m.steps.effective_target},
           {"step_left", m.steps.step_left},
           {"step_right", m.steps.step_right},
           {"n_left", m.steps.n_left},
           {"n_right", m.steps.n_right},
           {"blowup_bound", m.integrator.blowup_bound}}},
         {"resolution", m.resolution},
         {"tol_r", m.tol_r},
         {"tol_v", m.tol_v},
         {"tool_version", m.tool_version}};
  if (include_timing && m.wall_time_s) j["wall_time_s"] = *m.wall_time_s;
  return j;
}

std::string manifest_comment(const RunManifest& m) {
  std::ostringstream os;
  os << "# manifest config_digest=" << m.config_digest << " step=" << fmt17(m.integrator.target_step)
     << " effective_step=" << fmt17(m.steps.effective_target) << " resolution=" << m.resolution
     << " tol_r=" << fmt17(m.tol_r) << " tol_v=" << fmt17(m.tol_v) << " version=" << m.tool_version;
  return os.str();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t, std::size_t decimate,
                          const RunManifest* manifest) {
  if (decimate == 0) throw std::invalid_argument("decimate must be >= 1");
  if (manifest) os << manifest_comment(*manifest) << '\n';
  os << "x,u,v\n";
  os << std::setprecision(17);
  const auto& s = t.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i % decimate != 0 && i != t.split_index && i + 1 != s.size()) continue;
    os << s[i].x << ',' << s[i].z.u << ',' << s[i].z.v << '\n';
  }
}

void write_gamma_csv(std::ostream& os, const GammaCurve& g, const RunManifest* manifest) {
  if (manifest) os << manifest_comment(*manifest) << '\n';
  os << "r,u_end,v_end,status\n";
  os << std::setprecision(17);
  for (const auto& e : g.entries) {
    os << e.r << ',' << e.terminal.u << ',' << e.terminal.v << ',';
    if (e.blew_up)
      os << "blowup@" << e.blowup_x;
    else
      os << "ok";
    os << '\n';
  }
}

json to_json(const Cline& c) {
  return {{"c", c.c},
          {"terminal_u", c.terminal_u},
          {"terminal_v_residual", c.terminal_v_residual},
          {"min_u", c.min_u},
          {"max_u", c.max_u},
          {"necessary_integral", c.necessary_integral},
          {"bracket",
           {{"r_lo", c.bracket.r_lo},
            {"r_hi", c.bracket.r_hi},
            {"v_lo", c.bracket.v_lo},
            {"v_hi", c.bracket.v_hi}}},
          {"iterations", c.iterations},
          {"validated", c.validated},
          {"rejection", c.rejection},
          {"trajectory",
           {{"samples", c.trajectory.samples.size()},
            {"step_left", c.trajectory.step_left},
            {"step_right", c.trajectory.step_right},
            {"split_index", c.trajectory.split_index}}}};
}

json to_json(const ClineSearch& s, const Problem& p, const RunManifest& m,
             const std::vector<std::string>& trajectory_files) {
  json clines = json::array();
  for (std::size_t i = 0; i < s.clines.size(); ++i) {
    json jc = to_json(s.clines[i]);
    if (i < trajectory_files.size()) jc["trajectory"]["csv"] = trajectory_files[i];
    clines.push_back(std::move(jc));
  }
  json rejected = json::array();
  for (const auto& c : s.rejected) rejected.push_back(to_json(c));
  json failures = json::array();
  for (const auto& f : s.failures)
    failures.push_back({{"r_lo", f.bracket.r_lo}, {"r_hi", f.bracket.r_hi}, {"r", f.r}, {"message", f.message}});
  json brackets = json::array();
  for (const auto& b : s.brackets)
    brackets.push_back({{"r_lo", b.r_lo}, {"r_hi", b.r_hi}, {"v_lo", b.v_lo}, {"v_hi", b.v_hi}});
  std::size_t blowups = 0;
  for (const auto& e : s.gamma.entries) blowups += e.blew_up ? 1 : 0;
  return {{"manifest", to_json(m)},
          {"problem", to_json(p)},
          {"gamma", {{"resolution", s.gamma.resolution}, {"blowups", blowups}}},
          {"brackets", brackets},
          {"clines", clines},
          {"rejected", rejected},
          {"failures", failures}};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace clines
