#pragma once

#include <cstddef>
#include <stdexcept>

#include "clines/problem.hpp"
#include "clines/trajectory.hpp"

namespace clines {

struct IntegratorConfig {
  double target_step = 1e-4;
  double blowup_bound = 1e3;
};

/// Fixed RK4 steps actually used on [omega1, 0] and [0, omega2].
///
/// The requested step is first capped at (omega2 - omega1)/100; each side
/// then uses the largest step not above that cap which divides its length.
struct StepPlan {
  std::size_t n_left = 0;
  std::size_t n_right = 0;
  double step_left = 0.0;
  double step_right = 0.0;
  double effective_target = 0.0;
};

StepPlan plan_steps(const Problem& p, const IntegratorConfig& cfg);

/// Thrown when |u| or |v| exceeds the blow-up bound (or turns non-finite).
class BlowupError : public std::runtime_error {
 public:
  BlowupError(double x, PhasePoint z);
  double x() const noexcept { return x_; }
  PhasePoint state() const noexcept { return z_; }

 private:
  double x_;
  PhasePoint z_;
};

/// (v, -lambda w(x) f(u)).
PhasePoint vector_field(const Problem& p, double x, PhasePoint z);

/// Integrates from (omega1, z0) to omega2, keeping every step.
Trajectory integrate(const Problem& p, const IntegratorConfig& cfg, PhasePoint z0);

/// Terminal point of integrate() without storing the samples.
PhasePoint poincare_map(const Problem& p, const IntegratorConfig& cfg, PhasePoint z0);

/// v^2/2 + lambda w F(u) with F' = f, F(0) = 0; conserved on each piece.
/// x selects the piece and must not be 0.
double piecewise_energy(const Problem& p, double x, PhasePoint z);

}  // namespace clines
