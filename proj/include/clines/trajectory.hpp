#pragma once

#include <cstddef>
#include <vector>

namespace clines {

/// A point (u, v) = (p, p') of the planar system.
struct PhasePoint {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

struct TrajectorySample {
  double x = 0.0;
  PhasePoint z;
};

/// Sampled solution from omega1 to omega2. The interface x = 0 is always a
/// node (samples[split_index].x == 0); each side has its own uniform step.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  double step_left = 0.0;
  double step_right = 0.0;
  std::size_t split_index = 0;

  const PhasePoint& initial() const { return samples.front().z; }
  const PhasePoint& terminal() const { return samples.back().z; }
  double min_u() const;
  double max_u() const;
};

}  // namespace clines
