#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "clines/io.hpp"

using namespace clines;
using nlohmann::json;

namespace {

std::string error_of(const std::string& text) {
  try {
    (void)parse_problem(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

const char* kProp1 = R"({"weight": {"alpha": 1, "omega1": -0.21, "omega2": 0.2},
                         "f": {"kind": "hat", "h": 3}, "lambda": 45})";

}  // namespace

TEST_CASE("parse_problem reads the config schema") {
  const Problem p = parse_problem(kProp1);
  CHECK(p.weight.alpha() == 1.0);
  CHECK(p.weight.omega1() == -0.21);
  CHECK(p.f == Nonlinearity::hat(3.0));
  CHECK(p.lambda == 45.0);

  const Problem q = parse_problem(R"({"weight": {"alpha": 2.4, "omega1": -0.255, "omega2": 0.6},
      "f": {"kind": "poly", "coeffs": [0, 1, -1]}, "lambda": 3})");
  CHECK(q.f.coefficients() == std::vector<double>{0.0, 1.0, -1.0});
}

TEST_CASE("config errors name their location") {
  CHECK(error_of(R"({"weight": {"alpha": 1, "omega1": -0.21)").find("parse error") != std::string::npos);
  CHECK(error_of(R"({"weight": {"alpha": 1, "omega1": -0.21)").find("line 1") != std::string::npos);
  CHECK(error_of(R"({"f": {"kind": "hat", "h": 3}, "lambda": 45})").find("/weight") != std::string::npos);
  CHECK(error_of(R"({"weight": {"alpha": 1, "omega1": -0.21, "omega2": 0.2},
                     "f": {"kind": "hat"}, "lambda": 45})")
            .find("/f/h") != std::string::npos);
  CHECK(error_of(R"({"weight": {"alpha": 1, "omega1": -0.21, "omega2": 0.2},
                     "f": {"kind": "cubic", "h": 3}, "lambda": 45})")
            .find("/f/kind") != std::string::npos);
  CHECK(error_of(R"({"weight": {"alpha": "one", "omega1": -0.21, "omega2": 0.2},
                     "f": {"kind": "hat", "h": 3}, "lambda": 45})")
            .find("/weight/alpha") != std::string::npos);
  CHECK(error_of(R"({"weight": {"alpha": 1, "omega1": -0.21, "omega2": 0.2},
                     "f": {"kind": "hat", "h": 3}, "lambda": -1})")
            .find("/lambda") != std::string::npos);
  CHECK(error_of(R"({"weight": {"alpha": 1, "omega1": -0.21, "omega2": 0.2},
                     "f": {"kind": "degree_of_dominance", "k": 2}, "lambda": 1})")
            .find("/f/k") != std::string::npos);
  CHECK(error_of("[1, 2]").find("/") != std::string::npos);
  CHECK_THROWS_AS(load_problem("/nonexistent/prop.json"), ConfigError);
}

TEST_CASE("property: random problems round-trip through JSON") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> pos(1e-3, 50.0), left(-3.0, -1e-3), right(1e-3, 3.0),
      k(-1.0, 1.0), coef(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const StepWeight w(pos(rng), left(rng), right(rng));
    Nonlinearity f = Nonlinearity::hat(1.0);
    switch (trial % 4) {
      case 0: f = Nonlinearity::degree_of_dominance(k(rng)); break;
      case 1: f = Nonlinearity::hat(pos(rng)); break;
      case 2: f = Nonlinearity::arctan_damped(pos(rng)); break;
      default: f = Nonlinearity::polynomial({coef(rng), coef(rng), coef(rng), coef(rng)});
    }
    const Problem p(w, f, pos(rng));
    const Problem back = parse_problem(to_json(p).dump(2));
    CHECK(back == p);
    CHECK(to_json(back) == to_json(p));
  }
}

TEST_CASE("config digest is a stable SHA-256 of the canonical form") {
  const Problem p = parse_problem(kProp1);
  const std::string d = config_digest(p);
  CHECK(d.size() == 64);
  CHECK(d.find_first_not_of("0123456789abcdef") == std::string::npos);
  // whitespace and key order in the source do not matter
  CHECK(config_digest(parse_problem(R"({"lambda":45,"f":{"h":3,"kind":"hat"},
      "weight":{"omega2":0.2,"omega1":-0.21,"alpha":1}})")) == d);
  CHECK(config_digest(Problem(p.weight, p.f, 45.5)) != d);
}

TEST_CASE("manifest serialization leaves timing out unless asked") {
  const Problem p = parse_problem(kProp1);
  RunManifest m = RunManifest::make(p, {}, 2001, 1e-12, 1e-10);
  m.wall_time_s = 1.25;
  const json plain = to_json(m);
  CHECK_FALSE(plain.contains("wall_time_s"));
  CHECK(plain["config_digest"] == config_digest(p));
  CHECK(plain["resolution"] == 2001);
  CHECK(plain["integrator"]["n_left"] == 2100);
  CHECK(plain["tool_version"] == kToolVersion);
  CHECK(to_json(m, true)["wall_time_s"] == 1.25);

  const std::string c = manifest_comment(m);
  CHECK(c.rfind("# manifest config_digest=" + m.config_digest, 0) == 0);
  CHECK(c.find("resolution=2001") != std::string::npos);
  CHECK(c.find('\n') == std::string::npos);
}

TEST_CASE("trajectory CSV keeps the split node and the last sample") {
  Trajectory t;
  for (int i = 0; i <= 10; ++i) t.samples.push_back({-0.5 + 0.1 * i, {0.1 * i, -0.1 * i}});
  t.split_index = 5;
  std::ostringstream all, dec;
  write_trajectory_csv(all, t);
  write_trajectory_csv(dec, t, 4);
  const auto a = lines(all.str()), d = lines(dec.str());
  CHECK(a.front() == "x,u,v");
  CHECK(a.size() == 12);
  // rows 0, 4, 5 (split), 8, 10 (last)
  REQUIRE(d.size() == 6);
  CHECK(d[1] == a[1]);
  CHECK(d[2] == a[5]);
  CHECK(d[3] == a[6]);
  CHECK(d[4] == a[9]);
  CHECK(d[5] == a[11]);
  CHECK_THROWS_AS(write_trajectory_csv(dec, t, 0), std::invalid_argument);
}

TEST_CASE("trajectory CSV values round-trip at full precision") {
  Trajectory t;
  t.samples = {{-0.21, {0.1234567890123456789, 0.0}}, {0.0, {1.0 / 3.0, -2.0 / 7.0}}};
  t.split_index = 1;
  const Problem p = parse_problem(kProp1);
  const RunManifest m = RunManifest::make(p, {}, 0, 0.0, 0.0);
  std::ostringstream os;
  write_trajectory_csv(os, t, 1, &m);
  const auto l = lines(os.str());
  REQUIRE(l.size() == 4);
  CHECK(l[0] == manifest_comment(m));
  double x, u, v;
  char c1, c2;
  std::istringstream row(l[3]);
  row >> x >> c1 >> u >> c2 >> v;
  CHECK(u == 1.0 / 3.0);
  CHECK(v == -2.0 / 7.0);
}

TEST_CASE("gamma CSV marks blown-up rows") {
  GammaCurve g;
  g.resolution = 3;
  g.entries = {{0.0, {0.0, 0.0}, false, 0.0}, {0.5, {2e3, 1.0}, true, 0.125}, {1.0, {1.0, 0.0}, false, 0.0}};
  std::ostringstream os;
  write_gamma_csv(os, g);
  const auto l = lines(os.str());
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "r,u_end,v_end,status");
  CHECK(l[1] == "0,0,0,ok");
  CHECK(l[2].substr(l[2].rfind(',') + 1) == "blowup@0.125");
  CHECK(l[3] == "1,1,0,ok");
}

TEST_CASE("write_text_file writes bytes verbatim") {
  const auto path = std::filesystem::temp_directory_path() / "clines_io_test.txt";
  write_text_file(path, "a,b\n1,2\n");
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == "a,b\n1,2\n");
  std::filesystem::remove(path);
  CHECK_THROWS(write_text_file("/nonexistent-dir/x.txt", "x"));
}
