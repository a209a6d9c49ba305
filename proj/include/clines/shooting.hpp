#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "clines/integrator.hpp"
#include "clines/problem.hpp"

namespace clines {

/// Terminal point of the shot from (r, 0). Entries that blew up keep the
/// exit location and are skipped by the bracket scan.
struct GammaEntry {
  double r = 0.0;
  PhasePoint terminal;
  bool blew_up = false;
  double blowup_x = 0.0;
};

/// Image of the segment {0 <= u <= 1, v = 0} under the Poincare map,
/// sampled on a uniform grid of r including both endpoints.
struct GammaCurve {
  std::vector<GammaEntry> entries;
  std::size_t resolution = 0;
};

inline constexpr std::size_t kDefaultResolution = 2001;
inline constexpr double kDefaultTolR = 1e-12;
inline constexpr double kDefaultTolV = 1e-10;
inline constexpr double kExactRootV = 1e-13;
/// Clines whose profile comes within this distance of 0 or 1 are rejected.
inline constexpr double kBoundaryMargin = 1e-9;

/// threads == 0 uses std::thread::hardware_concurrency(). The result does
/// not depend on the thread count.
GammaCurve build_gamma(const Problem& p, const IntegratorConfig& cfg,
                       std::size_t resolution = kDefaultResolution, unsigned threads = 0);

/// A sign change of the terminal v between two neighbouring grid values.
/// r_lo == r_hi marks a grid node that is already a root (|v| < 1e-13).
struct Bracket {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double v_lo = 0.0;
  double v_hi = 0.0;

  bool degenerate() const noexcept { return r_lo == r_hi; }
};

/// Scans interior, non-blown-up neighbours in order of r.
std::vector<Bracket> find_brackets(const GammaCurve& g);

class BracketLostError : public std::runtime_error {
 public:
  BracketLostError(double r, const std::string& cause);
  double r() const noexcept { return r_; }

 private:
  double r_;
};

struct Cline {
  double c = 0.0;
  double terminal_u = 0.0;
  double terminal_v_residual = 0.0;
  Trajectory trajectory;
  double min_u = 0.0;
  double max_u = 0.0;
  double necessary_integral = 0.0;
  Bracket bracket;
  std::size_t iterations = 0;
  bool validated = false;
  std::string rejection;  // empty when validated
};

/// Bisection on r -> v(omega2; r) until the width drops below tol_r or
/// |v| < tol_v. Throws BracketLostError if a shot inside the bracket blows
/// up. A root whose profile leaves (0,1) or whose residual exceeds tol_v is
/// returned with validated == false and a reason.
Cline bisect_cline(const Problem& p, const IntegratorConfig& cfg, const Bracket& b,
                   double tol_r = kDefaultTolR, double tol_v = kDefaultTolV);

struct BracketFailure {
  Bracket bracket;
  double r = 0.0;
  std::string message;
};

struct ClineSearch {
  GammaCurve gamma;
  std::vector<Bracket> brackets;
  std::vector<Cline> clines;    // validated, sorted by c
  std::vector<Cline> rejected;  // sorted by c
  std::vector<BracketFailure> failures;
};

struct SearchSettings {
  std::size_t resolution = kDefaultResolution;
  double tol_r = kDefaultTolR;
  double tol_v = kDefaultTolV;
  unsigned threads = 0;
};

/// build_gamma -> find_brackets -> bisect_cline on every bracket. Roots
/// closer than 10*tol_r collapse to the first one found.
ClineSearch find_all_clines(const Problem& p, const IntegratorConfig& cfg,
                            const SearchSettings& settings = {});

}  // namespace clines
