#include "clines/nonlinearity.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace clines {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double horner(const std::vector<double>& c, double s) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

std::vector<double> differentiate(const std::vector<double>& c) {
  if (c.size() <= 1) return {};
  std::vector<double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
  return d;
}

std::vector<double> integrate_coeffs(const std::vector<double>& c) {
  std::vector<double> out(c.size() + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) out[i + 1] = c[i] / static_cast<double>(i + 1);
  return out;
}

// Pieces of the arctan-damped term: f = g(s) * a(s).
struct ArctanParts {
  double g, g1, g2, a, a1, a2;
};

ArctanParts arctan_parts(double m, double s) {
  const double e = std::exp(-25.0 * s * s);
  const double q = std::abs(s) + 1.0;
  const double sgn = (s > 0.0) - (s < 0.0);
  const double t = m * (1.0 - s);
  const double den = 1.0 + t * t;
  ArctanParts p{};
  p.g = 10.0 * s * e + s / q;
  p.g1 = 10.0 * e * (1.0 - 50.0 * s * s) + 1.0 / (q * q);
  p.g2 = 10.0 * e * (2500.0 * s * s * s - 150.0 * s) - 2.0 * sgn / (q * q * q);
  p.a = std::atan(t);
  p.a1 = -m / den;
  p.a2 = -2.0 * m * m * m * (1.0 - s) / (den * den);
  return p;
}

}  // namespace

Nonlinearity Nonlinearity::degree_of_dominance(double k) {
  if (!(k >= -1.0 && k <= 1.0))
    throw std::invalid_argument("degree of dominance k must lie in [-1, 1]");
  return Nonlinearity(DegreeOfDominance{k});
}

Nonlinearity Nonlinearity::hat(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("hat parameter h must be > 0");
  return Nonlinearity(HatFamily{h});
}

Nonlinearity Nonlinearity::arctan_damped(double m) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::invalid_argument("arctan damping m must be > 0");
  return Nonlinearity(ArctanDamped{m});
}

Nonlinearity Nonlinearity::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
  for (double c : coeffs)
    if (!std::isfinite(c)) throw std::invalid_argument("polynomial coefficients must be finite");
  return Nonlinearity(CustomPolynomial{std::move(coeffs)});
}

std::string Nonlinearity::name() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const DegreeOfDominance& d) { os << "degree_of_dominance(k=" << d.k << ")"; },
                 [&](const HatFamily& h) { os << "hat(h=" << h.h << ")"; },
                 [&](const ArctanDamped& a) { os << "arctan_damped(m=" << a.m << ")"; },
                 [&](const CustomPolynomial& p) { os << "poly(degree=" << p.coeffs.size() - 1 << ")"; },
             },
             kind_);
  return os.str();
}

std::vector<double> Nonlinearity::coefficients() const {
  return std::visit(Overloaded{
                        [](const DegreeOfDominance& d) {
                          return std::vector<double>{0.0, 1.0 + d.k, -(1.0 + 3.0 * d.k), 2.0 * d.k};
                        },
                        [](const HatFamily& h) {
                          return std::vector<double>{0.0, 1.0, -(1.0 + h.h), 2.0 * h.h, -h.h};
                        },
                        [](const ArctanDamped&) { return std::vector<double>{}; },
                        [](const CustomPolynomial& p) { return p.coeffs; },
                    },
                    kind_);
}

double Nonlinearity::eval(double s) const {
  // Factored forms keep f(0) and f(1) exactly zero.
  return std::visit(Overloaded{
                        [s](const DegreeOfDominance& d) {
                          return s * (1.0 - s) * (1.0 + d.k - 2.0 * d.k * s);
                        },
                        [s](const HatFamily& h) {
                          return s * (1.0 - s) * (1.0 - h.h * s + h.h * s * s);
                        },
                        [s](const ArctanDamped& a) {
                          return (10.0 * s * std::exp(-25.0 * s * s) + s / (std::abs(s) + 1.0)) *
                                 std::atan(a.m * (1.0 - s));
                        },
                        [s](const CustomPolynomial& p) { return horner(p.coeffs, s); },
                    },
                    kind_);
}

double Nonlinearity::derivative(double s, int order) const {
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  if (const auto* a = std::get_if<ArctanDamped>(&kind_)) {
    const ArctanParts p = arctan_parts(a->m, s);
    if (order == 1) return p.g1 * p.a + p.g * p.a1;
    return p.g2 * p.a + 2.0 * p.g1 * p.a1 + p.g * p.a2;
  }
  auto d = differentiate(coefficients());
  if (order == 2) d = differentiate(d);
  return horner(d, s);
}

double Nonlinearity::antiderivative(double s) const {
  if (std::holds_alternative<ArctanDamped>(kind_)) {
    if (s == 0.0) return 0.0;
    // The |s| kink sits at the lower limit, so the integrand is smooth inside.
    auto integrand = [this](double t) { return eval(t); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    return GK::integrate(integrand, 0.0, s, 8, 1e-13);
  }
  return horner(integrate_coeffs(coefficients()), s);
}

bool operator==(const Nonlinearity& a, const Nonlinearity& b) {
  return std::visit(Overloaded{
                        [](const DegreeOfDominance& x, const DegreeOfDominance& y) { return x.k == y.k; },
                        [](const HatFamily& x, const HatFamily& y) { return x.h == y.h; },
                        [](const ArctanDamped& x, const ArctanDamped& y) { return x.m == y.m; },
                        [](const CustomPolynomial& x, const CustomPolynomial& y) {
                          return x.coeffs == y.coeffs;
                        },
                        [](const auto&, const auto&) { return false; },
                    },
                    a.kind_, b.kind_);
}

bool FStarReport::satisfies_f_star() const {
  constexpr double kZero = 1e-12;
  return std::abs(f_at_0) <= kZero && std::abs(f_at_1) <= kZero && positive_on_open_interval &&
         fprime_at_0 > 0.0 && fprime_at_1 < 0.0;
}

FStarReport check_f_star(const Nonlinearity& f, std::size_t grid_size) {
  if (grid_size < 100) throw std::invalid_argument("check_f_star needs grid_size >= 100");
  FStarReport r;
  r.grid_size = grid_size;
  r.f_at_0 = f.eval(0.0);
  r.f_at_1 = f.eval(1.0);
  r.fprime_at_0 = f.derivative(0.0, 1);
  r.fprime_at_1 = f.derivative(1.0, 1);
  r.positive_on_open_interval = true;
  r.is_concave = true;
  r.ratio_strictly_decreasing = true;

  const double denom = static_cast<double>(grid_size + 1);
  double prev_ratio = 0.0;
  for (std::size_t i = 1; i <= grid_size; ++i) {
    const double s = static_cast<double>(i) / denom;
    const double v = f.eval(s);
    if (!(v > 0.0)) r.positive_on_open_interval = false;
    if (f.derivative(s, 2) > 0.0) r.is_concave = false;
    const double ratio = v / s;
    if (i > 1 && !(ratio < prev_ratio)) r.ratio_strictly_decreasing = false;
    prev_ratio = ratio;
  }
  return r;
}

}  // namespace clines
