#include "clines/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace clines {

namespace {

std::string blowup_message(double x, PhasePoint z) {
  std::ostringstream os;
  os.precision(17);
  os << "trajectory left the blow-up bound at x = " << x << " (u = " << z.u << ", v = " << z.v
     << ")";
  return os.str();
}

std::size_t steps_for(double length, double target) {
  // Guards against L/h landing one ulp above an integer.
  const double n = std::ceil(length / target * (1.0 - 1e-12));
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

// RK4 over [a, b] in n equal steps with the weight frozen at w. The callback
// sees every node after the start, including the exact endpoint b.
template <class OnNode>
PhasePoint rk4_piece(const Problem& p, double w, double a, double b, std::size_t n, PhasePoint z,
                     double bound, OnNode&& on_node) {
  const double h = (b - a) / static_cast<double>(n);
  const double c = -p.lambda * w;
  const Nonlinearity& f = p.f;
  for (std::size_t i = 0; i < n; ++i) {
    const double k1u = z.v;
    const double k1v = c * f.eval(z.u);
    const double k2u = z.v + 0.5 * h * k1v;
    const double k2v = c * f.eval(z.u + 0.5 * h * k1u);
    const double k3u = z.v + 0.5 * h * k2v;
    const double k3v = c * f.eval(z.u + 0.5 * h * k2u);
    const double k4u = z.v + h * k3v;
    const double k4v = c * f.eval(z.u + h * k3u);
    z.u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    z.v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

    const double x = (i + 1 == n) ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n);
    if (!(std::abs(z.u) <= bound && std::abs(z.v) <= bound)) throw BlowupError(x, z);
    on_node(x, z);
  }
  return z;
}

template <class OnNode>
PhasePoint propagate(const Problem& p, const IntegratorConfig& cfg, PhasePoint z0, const StepPlan& plan,
                     OnNode&& on_node) {
  if (!std::isfinite(z0.u) || !std::isfinite(z0.v))
    throw std::invalid_argument("initial point must be finite");
  const auto& w = p.weight;
  if (!(std::abs(z0.u) <= cfg.blowup_bound && std::abs(z0.v) <= cfg.blowup_bound))
    throw BlowupError(w.omega1(), z0);
  // u and v are continuous across x = 0; only v' jumps.
  PhasePoint mid = rk4_piece(p, -w.alpha(), w.omega1(), 0.0, plan.n_left, z0, cfg.blowup_bound, on_node);
  return rk4_piece(p, 1.0, 0.0, w.omega2(), plan.n_right, mid, cfg.blowup_bound, on_node);
}

}  // namespace

BlowupError::BlowupError(double x, PhasePoint z)
    : std::runtime_error(blowup_message(x, z)), x_(x), z_(z) {}

StepPlan plan_steps(const Problem& p, const IntegratorConfig& cfg) {
  if (!(cfg.target_step > 0.0)) throw std::invalid_argument("target_step must be > 0");
  if (!(cfg.blowup_bound > 0.0)) throw std::invalid_argument("blowup_bound must be > 0");
  const auto& w = p.weight;
  StepPlan plan;
  plan.effective_target = std::min(cfg.target_step, w.length() / 100.0);
  plan.n_left = steps_for(-w.omega1(), plan.effective_target);
  plan.n_right = steps_for(w.omega2(), plan.effective_target);
  plan.step_left = -w.omega1() / static_cast<double>(plan.n_left);
  plan.step_right = w.omega2() / static_cast<double>(plan.n_right);
  return plan;
}

PhasePoint vector_field(const Problem& p, double x, PhasePoint z) {
  return {z.v, -p.lambda * p.weight.at(x) * p.f.eval(z.u)};
}

Trajectory integrate(const Problem& p, const IntegratorConfig& cfg, PhasePoint z0) {
  const StepPlan plan = plan_steps(p, cfg);
  Trajectory t;
  t.step_left = plan.step_left;
  t.step_right = plan.step_right;
  t.split_index = plan.n_left;
  t.samples.reserve(plan.n_left + plan.n_right + 1);
  t.samples.push_back({p.weight.omega1(), z0});
  propagate(p, cfg, z0, plan, [&](double x, PhasePoint z) { t.samples.push_back({x, z}); });
  return t;
}

PhasePoint poincare_map(const Problem& p, const IntegratorConfig& cfg, PhasePoint z0) {
  return propagate(p, cfg, z0, plan_steps(p, cfg), [](double, PhasePoint) {});
}

double piecewise_energy(const Problem& p, double x, PhasePoint z) {
  if (x == 0.0) throw std::invalid_argument("energy is piecewise; x = 0 has no piece");
  return 0.5 * z.v * z.v + p.lambda * p.weight.on_piece(x) * p.f.antiderivative(z.u);
}

double Trajectory::min_u() const {
  return std::min_element(samples.begin(), samples.end(),
                          [](const auto& a, const auto& b) { return a.z.u < b.z.u; })
      ->z.u;
}

double Trajectory::max_u() const {
  return std::max_element(samples.begin(), samples.end(),
                          [](const auto& a, const auto& b) { return a.z.u < b.z.u; })
      ->z.u;
}

}  // namespace clines
