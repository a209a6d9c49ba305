#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace clines {

/// f_k(s) = s(1-s)(1+k-2ks), the degree-of-dominance family, -1 <= k <= 1.
struct DegreeOfDominance {
  double k = 0.0;
};

/// s(1-s)(1-hs+hs^2), h > 0.
struct HatFamily {
  double h = 3.0;
};

/// (10 s e^{-25 s^2} + s/(|s|+1)) * atan(m(1-s)), m > 0.
struct ArctanDamped {
  double m = 10.0;
};

/// sum_i coeffs[i] * s^i (ascending powers).
struct CustomPolynomial {
  std::vector<double> coeffs;
};

/// Selection term f of the reaction-diffusion steady state.
///
/// All formulas are evaluated on the whole real line, not only on [0,1],
/// because shooting trajectories may leave the unit strip.
class Nonlinearity {
 public:
  using Kind = std::variant<DegreeOfDominance, HatFamily, ArctanDamped, CustomPolynomial>;

  static Nonlinearity degree_of_dominance(double k);
  static Nonlinearity hat(double h);
  static Nonlinearity arctan_damped(double m);
  static Nonlinearity polynomial(std::vector<double> coeffs);

  const Kind& kind() const noexcept { return kind_; }
  std::string name() const;

  double operator()(double s) const { return eval(s); }
  double eval(double s) const;
  /// order must be 1 or 2; throws std::invalid_argument otherwise.
  double derivative(double s, int order) const;
  /// F(s) = \int_0^s f. Exact for polynomial kinds; composite Gauss-Legendre
  /// for ArctanDamped.
  double antiderivative(double s) const;

  /// Ascending coefficients for the polynomial kinds; empty for ArctanDamped.
  std::vector<double> coefficients() const;

  friend bool operator==(const Nonlinearity& a, const Nonlinearity& b);

 private:
  explicit Nonlinearity(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

inline double eval(const Nonlinearity& f, double s) { return f.eval(s); }
inline double eval_deriv(const Nonlinearity& f, double s, int order) {
  return f.derivative(s, order);
}

struct FStarReport {
  double f_at_0 = 0.0;
  double f_at_1 = 0.0;
  double fprime_at_0 = 0.0;
  double fprime_at_1 = 0.0;
  bool positive_on_open_interval = false;
  bool is_concave = false;
  bool ratio_strictly_decreasing = false;
  std::size_t grid_size = 0;

  /// f(0) = f(1) = 0, f > 0 on (0,1) and f'(0) > 0 > f'(1).
  bool satisfies_f_star() const;
};

inline constexpr std::size_t kDefaultFStarGrid = 10001;

/// Grid verdicts on s_i = i/(grid_size+1), i = 1..grid_size.
/// grid_size must be >= 100.
FStarReport check_f_star(const Nonlinearity& f, std::size_t grid_size = kDefaultFStarGrid);

}  // namespace clines
