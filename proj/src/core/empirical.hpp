#pragma once

#include <cstdint>
#include <vector>

#include "core/distributions.hpp"
#include "core/geometry.hpp"
#include "core/vec.hpp"

namespace hsd::emp {

// Points X_1..X_n with weights xi_1..xi_n; the weighted empirical measure
// puts mass xi_i/n at X_i.  Weights may be negative (signed measure).
class WeightedSample {
 public:
  WeightedSample(std::vector<Vec2> points, std::vector<double> weights);
  explicit WeightedSample(std::vector<Vec2> points);  // unit weights

  int n() const { return static_cast<int>(points_.size()); }
  const std::vector<Vec2>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  double mean_weight() const { return mean_weight_; }
  bool nonnegative() const { return nonnegative_; }
  geom::BoundingBox bbox(double inflate = 1.0) const;

 private:
  std::vector<Vec2> points_;
  std::vector<double> weights_;
  double mean_weight_;
  bool nonnegative_;
};

using CriticalDirections = std::vector<geom::UnitDirection>;

// The +-normals of every line through two distinct sample points, angle-sorted
// and deduplicated at 1e-12.  Throws on n < 2 or an all-coincident sample.
CriticalDirections critical_directions(const WeightedSample& s);

// (1/n) sum of xi_i over sample points in the closed halfplane (tie tolerance
// 1e-12 on the boundary).
double emp_mass(const WeightedSample& s, const geom::Halfplane& h);

// Exact empirical depth via the rotating-halfplane sweep over the angles of
// X_i - x; O(n log n).  Requires nonnegative weights.  Critical angles closer
// than 1e-9 rad (x collinear with an atom pair, up to rounding) count as one
// direction; the infimum is then attained in an adjacent arc, matching the
// exact-arithmetic value.
double emp_depth(const WeightedSample& s, Vec2 x);

// Exact empirical depth trimmed region: intersection of all halfplanes whose
// empirical mass exceeds mean_weight - alpha.  Capped at n <= 3000 (the
// critical-direction set is quadratic); larger samples should use the grid.
geom::ConvexRegion emp_region(const WeightedSample& s, double alpha);

// Same construction restricted to grid_size uniformly spaced directions.  The
// result always contains the exact region and shrinks onto it as the grid
// refines (nested for nested grids), but the per-direction quantile jumps as
// the direction rotates, so a constraint binding only on an angular window
// narrower than the spacing can be missed entirely; there is no uniform
// O(grid^-2) support-function bound, unlike polygonal approximation of a
// smooth model region.
geom::ConvexRegion emp_region_grid(const WeightedSample& s, double alpha, int grid_size);

struct DeviationResult {
  double value;            // certified lower bound of the supremum
  geom::Halfplane argmax;  // witness halfplane
};

// sup over halfplanes of |empirical mass - model mass|, scanned over the
// critical directions and their quarter-turns (n <= 512) plus extra_dirs
// uniform angles, with both one-sided limits checked at every sample
// projection.
DeviationResult sup_deviation(const WeightedSample& s, const dist::ModelDistribution& d,
                              int extra_dirs);

}  // namespace hsd::emp
