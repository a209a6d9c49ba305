#pragma once

#include <cstddef>

#include "clines/nonlinearity.hpp"
#include "clines/trajectory.hpp"

namespace clines {

/// w(x) = -alpha on [omega1, 0), +1 on [0, omega2].
///
/// w is undefined at the interface in the model; the value +1 is used there
/// (right-continuous). Integration never straddles x = 0, so the choice only
/// shows up if a caller asks for weight_at(0).
class StepWeight {
 public:
  StepWeight(double alpha, double omega1, double omega2);

  double alpha() const noexcept { return alpha_; }
  double omega1() const noexcept { return omega1_; }
  double omega2() const noexcept { return omega2_; }
  double length() const noexcept { return omega2_ - omega1_; }

  /// Throws std::out_of_range outside [omega1, omega2].
  double at(double x) const;
  /// Value on the piece selected by the sign of x, no domain check.
  double on_piece(double x) const noexcept { return x < 0.0 ? -alpha_ : 1.0; }
  /// \int_{omega1}^{omega2} w = alpha*omega1 + omega2.
  double mean() const noexcept { return alpha_ * omega1_ + omega2_; }

  friend bool operator==(const StepWeight&, const StepWeight&) = default;

 private:
  double alpha_;
  double omega1_;
  double omega2_;
};

inline double weight_at(const StepWeight& w, double x) { return w.at(x); }
inline double weight_mean(const StepWeight& w) { return w.mean(); }

/// p'' + lambda w(x) f(p) = 0 on (omega1, omega2), p'(omega1) = p'(omega2) = 0.
struct Problem {
  StepWeight weight;
  Nonlinearity f;
  double lambda;

  Problem(StepWeight weight, Nonlinearity f, double lambda);

  friend bool operator==(const Problem&, const Problem&) = default;
};

struct ConjectureReport {
  bool positive_on_positive_measure = false;
  bool mean_negative = false;
  bool f_star = false;
  bool ratio_decreasing = false;
  double weight_mean = 0.0;
  FStarReport f_report;

  bool in_scope() const {
    return positive_on_positive_measure && mean_negative && f_star && ratio_decreasing;
  }
};

ConjectureReport validate_conjecture_hypotheses(const Problem& p,
                                                std::size_t grid_size = kDefaultFStarGrid);

/// Trapezoidal \int w(x) f(u(x)) dx over the samples, summed separately on
/// each side of x = 0. Throws std::invalid_argument if the trajectory does
/// not span [omega1, omega2].
double neumann_necessary_integral(const Problem& p, const Trajectory& traj);

}  // namespace clines
