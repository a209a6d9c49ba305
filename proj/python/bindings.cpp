#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>

#include "clines/integrator.hpp"
#include "clines/io.hpp"
#include "clines/nonlinearity.hpp"
#include "clines/problem.hpp"
#include "clines/reproduction.hpp"
#include "clines/shooting.hpp"

namespace py = pybind11;
using namespace clines;

namespace {

py::array_t<double> column(const std::vector<double>& v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

py::dict trajectory_dict(const Trajectory& t) {
  std::vector<double> x, u, v;
  x.reserve(t.samples.size());
  u.reserve(t.samples.size());
  v.reserve(t.samples.size());
  for (const auto& s : t.samples) {
    x.push_back(s.x);
    u.push_back(s.z.u);
    v.push_back(s.z.v);
  }
  py::dict d;
  d["x"] = column(x);
  d["u"] = column(u);
  d["v"] = column(v);
  d["split_index"] = t.split_index;
  d["step_left"] = t.step_left;
  d["step_right"] = t.step_right;
  return d;
}

py::object eval_array(const Nonlinearity& f, const py::array_t<double>& s) {
  return py::vectorize([&f](double x) { return f.eval(x); })(s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Phase-plane shooting for clines of indefinite-weight Neumann problems";
  m.attr("__version__") = kToolVersion;

  py::register_exception<BlowupError>(m, "BlowupError", PyExc_ArithmeticError);
  py::register_exception<BracketLostError>(m, "BracketLostError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<Nonlinearity>(m, "Nonlinearity")
      .def_static("degree_of_dominance", &Nonlinearity::degree_of_dominance, py::arg("k"))
      .def_static("hat", &Nonlinearity::hat, py::arg("h"))
      .def_static("arctan_damped", &Nonlinearity::arctan_damped, py::arg("m"))
      .def_static("polynomial", &Nonlinearity::polynomial, py::arg("coeffs"))
      .def("__call__", &eval_array, py::arg("s"))
      .def("eval", &eval_array, py::arg("s"))
      .def("derivative", &Nonlinearity::derivative, py::arg("s"), py::arg("order") = 1)
      .def("antiderivative", &Nonlinearity::antiderivative, py::arg("s"))
      .def("coefficients", &Nonlinearity::coefficients)
      .def_property_readonly("name", &Nonlinearity::name)
      .def("to_json", [](const Nonlinearity& f) { return to_json(f).dump(); })
      .def("__eq__", [](const Nonlinearity& a, const Nonlinearity& b) { return a == b; })
      .def("__repr__", [](const Nonlinearity& f) { return "Nonlinearity." + f.name(); });

  py::class_<FStarReport>(m, "FStarReport")
      .def_readonly("f_at_0", &FStarReport::f_at_0)
      .def_readonly("f_at_1", &FStarReport::f_at_1)
      .def_readonly("fprime_at_0", &FStarReport::fprime_at_0)
      .def_readonly("fprime_at_1", &FStarReport::fprime_at_1)
      .def_readonly("positive_on_open_interval", &FStarReport::positive_on_open_interval)
      .def_readonly("is_concave", &FStarReport::is_concave)
      .def_readonly("ratio_strictly_decreasing", &FStarReport::ratio_strictly_decreasing)
      .def_readonly("grid_size", &FStarReport::grid_size)
      .def_property_readonly("satisfies_f_star", &FStarReport::satisfies_f_star);

  m.def("check_f_star", &check_f_star, py::arg("f"), py::arg("grid_size") = kDefaultFStarGrid);

  py::class_<StepWeight>(m, "StepWeight")
      .def(py::init<double, double, double>(), py::arg("alpha"), py::arg("omega1"), py::arg("omega2"))
      .def_property_readonly("alpha", &StepWeight::alpha)
      .def_property_readonly("omega1", &StepWeight::omega1)
      .def_property_readonly("omega2", &StepWeight::omega2)
      .def("at", &StepWeight::at, py::arg("x"))
      .def("mean", &StepWeight::mean)
      .def("__eq__", [](const StepWeight& a, const StepWeight& b) { return a == b; });

  py::class_<Problem>(m, "Problem")
      .def(py::init<StepWeight, Nonlinearity, double>(), py::arg("weight"), py::arg("f"), py::arg("lam"))
      .def_readonly("weight", &Problem::weight)
      .def_readonly("f", &Problem::f)
      .def_readonly("lam", &Problem::lambda)
      .def("to_json", [](const Problem& p) { return to_json(p).dump(); })
      .def_static("from_json", &parse_problem, py::arg("text"))
      .def_static("load", [](const std::string& path) { return load_problem(path); }, py::arg("path"))
      .def("config_digest", [](const Problem& p) { return config_digest(p); })
      .def("__eq__", [](const Problem& a, const Problem& b) { return a == b; });

  py::class_<ConjectureReport>(m, "ConjectureReport")
      .def_readonly("positive_on_positive_measure", &ConjectureReport::positive_on_positive_measure)
      .def_readonly("mean_negative", &ConjectureReport::mean_negative)
      .def_readonly("f_star", &ConjectureReport::f_star)
      .def_readonly("ratio_decreasing", &ConjectureReport::ratio_decreasing)
      .def_readonly("weight_mean", &ConjectureReport::weight_mean)
      .def_readonly("f_report", &ConjectureReport::f_report)
      .def_property_readonly("in_scope", &ConjectureReport::in_scope);

  m.def("validate_conjecture_hypotheses", &validate_conjecture_hypotheses, py::arg("problem"),
        py::arg("grid_size") = kDefaultFStarGrid);

  py::class_<IntegratorConfig>(m, "IntegratorConfig")
      .def(py::init([](double step, double bound) { return IntegratorConfig{step, bound}; }),
           py::arg("target_step") = IntegratorConfig{}.target_step,
           py::arg("blowup_bound") = IntegratorConfig{}.blowup_bound)
      .def_readwrite("target_step", &IntegratorConfig::target_step)
      .def_readwrite("blowup_bound", &IntegratorConfig::blowup_bound);

  m.def(
      "integrate",
      [](const Problem& p, double u0, double v0, const IntegratorConfig& cfg) {
        Trajectory t;
        {
          py::gil_scoped_release nogil;
          t = integrate(p, cfg, {u0, v0});
        }
        return trajectory_dict(t);
      },
      py::arg("problem"), py::arg("u0"), py::arg("v0") = 0.0, py::arg("config") = IntegratorConfig{},
      "Integrate from (u0, v0) at omega1; returns arrays x, u, v and the step layout.");

  m.def(
      "poincare_map",
      [](const Problem& p, double u0, double v0, const IntegratorConfig& cfg) {
        py::gil_scoped_release nogil;
        const PhasePoint z = poincare_map(p, cfg, {u0, v0});
        return std::make_pair(z.u, z.v);
      },
      py::arg("problem"), py::arg("u0"), py::arg("v0") = 0.0, py::arg("config") = IntegratorConfig{});

  m.def(
      "build_gamma",
      [](const Problem& p, std::size_t resolution, const IntegratorConfig& cfg, unsigned threads) {
        GammaCurve g;
        {
          py::gil_scoped_release nogil;
          g = build_gamma(p, cfg, resolution, threads);
        }
        std::vector<double> r, u, v;
        std::vector<bool> blew;
        for (const auto& e : g.entries) {
          r.push_back(e.r);
          u.push_back(e.terminal.u);
          v.push_back(e.terminal.v);
          blew.push_back(e.blew_up);
        }
        py::dict d;
        d["r"] = column(r);
        d["u_end"] = column(u);
        d["v_end"] = column(v);
        d["blew_up"] = py::array(py::cast(blew));
        return d;
      },
      py::arg("problem"), py::arg("resolution") = kDefaultResolution, py::arg("config") = IntegratorConfig{},
      py::arg("threads") = 0u);

  py::class_<Cline>(m, "Cline")
      .def_readonly("c", &Cline::c)
      .def_readonly("terminal_u", &Cline::terminal_u)
      .def_readonly("terminal_v_residual", &Cline::terminal_v_residual)
      .def_readonly("min_u", &Cline::min_u)
      .def_readonly("max_u", &Cline::max_u)
      .def_readonly("necessary_integral", &Cline::necessary_integral)
      .def_readonly("iterations", &Cline::iterations)
      .def_readonly("validated", &Cline::validated)
      .def_readonly("rejection", &Cline::rejection)
      .def_property_readonly("trajectory", [](const Cline& c) { return trajectory_dict(c.trajectory); })
      .def("__repr__", [](const Cline& c) {
        return "Cline(c=" + std::to_string(c.c) + ", terminal_u=" + std::to_string(c.terminal_u) + ")";
      });

  py::class_<ClineSearch>(m, "ClineSearch")
      .def_readonly("clines", &ClineSearch::clines)
      .def_readonly("rejected", &ClineSearch::rejected)
      .def_property_readonly("bracket_count", [](const ClineSearch& s) { return s.brackets.size(); })
      .def_property_readonly("failure_count", [](const ClineSearch& s) { return s.failures.size(); });

  m.def(
      "find_all_clines",
      [](const Problem& p, const IntegratorConfig& cfg, std::size_t resolution, double tol_r, double tol_v,
         unsigned threads) {
        py::gil_scoped_release nogil;
        return find_all_clines(p, cfg, {resolution, tol_r, tol_v, threads});
      },
      py::arg("problem"), py::arg("config") = IntegratorConfig{}, py::arg("resolution") = kDefaultResolution,
      py::arg("tol_r") = kDefaultTolR, py::arg("tol_v") = kDefaultTolV, py::arg("threads") = 0u);

  py::class_<NamedInstance>(m, "NamedInstance")
      .def_readonly("name", &NamedInstance::name)
      .def_readonly("problem", &NamedInstance::problem)
      .def_readonly("min_clines", &NamedInstance::min_clines)
      .def_readonly("max_clines", &NamedInstance::max_clines)
      .def_readonly("expected_c", &NamedInstance::expected_c)
      .def_readonly("expected_terminal_u", &NamedInstance::expected_terminal_u)
      .def_readonly("tolerance", &NamedInstance::tolerance)
      .def_readonly("lambda_sweep", &NamedInstance::lambda_sweep);

  m.def("proposition_1", &proposition_1);
  m.def("proposition_2", &proposition_2);
  m.def("remark_instances", &remark_instances);

  py::class_<ComparisonReport>(m, "ComparisonReport")
      .def_readonly("name", &ComparisonReport::name)
      .def_readonly("expected_count", &ComparisonReport::expected_count)
      .def_readonly("found_count", &ComparisonReport::found_count)
      .def_readonly("unmatched_expected", &ComparisonReport::unmatched_expected)
      .def_readonly("extras", &ComparisonReport::extras)
      .def_readonly("passed", &ComparisonReport::pass)
      .def("table", [](const ComparisonReport& r) { return render_table(r); })
      .def("to_json", [](const ComparisonReport& r) { return to_json(r).dump(); });

  m.def(
      "compare",
      [](const NamedInstance& inst, const std::vector<Cline>& found) {
        return compare(inst, std::span<const Cline>(found));
      },
      py::arg("instance"), py::arg("found"));
}
