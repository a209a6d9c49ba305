#include "clines/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace clines {

StepWeight::StepWeight(double alpha, double omega1, double omega2)
    : alpha_(alpha), omega1_(omega1), omega2_(omega2) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be > 0");
  if (!(omega1 < 0.0) || !std::isfinite(omega1)) throw std::invalid_argument("omega1 must be < 0");
  if (!(omega2 > 0.0) || !std::isfinite(omega2)) throw std::invalid_argument("omega2 must be > 0");
}

double StepWeight::at(double x) const {
  if (!(x >= omega1_ && x <= omega2_)) throw std::out_of_range("x outside [omega1, omega2]");
  return on_piece(x);
}

Problem::Problem(StepWeight weight_, Nonlinearity f_, double lambda_)
    : weight(weight_), f(std::move(f_)), lambda(lambda_) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be > 0");
}

ConjectureReport validate_conjecture_hypotheses(const Problem& p, std::size_t grid_size) {
  ConjectureReport r;
  r.f_report = check_f_star(p.f, grid_size);
  r.weight_mean = p.weight.mean();
  // Exact for a step weight: the positive piece (0, omega2] has length omega2.
  r.positive_on_positive_measure = p.weight.omega2() > 0.0;
  r.mean_negative = r.weight_mean < 0.0;
  r.f_star = r.f_report.satisfies_f_star();
  r.ratio_decreasing = r.f_report.ratio_strictly_decreasing;
  return r;
}

double neumann_necessary_integral(const Problem& p, const Trajectory& traj) {
  const auto& s = traj.samples;
  constexpr double kEdge = 1e-12;
  if (s.size() < 3 || std::abs(s.front().x - p.weight.omega1()) > kEdge ||
      std::abs(s.back().x - p.weight.omega2()) > kEdge)
    throw std::invalid_argument("trajectory does not span [omega1, omega2]");
  if (traj.split_index == 0 || traj.split_index >= s.size() - 1 || s[traj.split_index].x != 0.0)
    throw std::invalid_argument("trajectory has no node at x = 0");

  auto piece = [&](std::size_t lo, std::size_t hi, double w) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
      acc += 0.5 * (s[i + 1].x - s[i].x) * (p.f.eval(s[i].z.u) + p.f.eval(s[i + 1].z.u));
    return w * acc;
  };
  return piece(0, traj.split_index, -p.weight.alpha()) +
         piece(traj.split_index, s.size() - 1, 1.0);
}

}  // namespace clines
