#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "core/geometry.hpp"
#include "core/vec.hpp"

namespace hsd::dist {

double std_normal_cdf(double x);
double std_normal_quantile(double p);  // accurate to ~1e-15 via Newton refinement

// Unique r in [0,1) with arcsin(r) + r*sqrt(1-r^2) = pi/2 - pi*alpha,
// bisected to 1e-12; the level radius of the unit-disk depth regions.
double disk_level_radius(double alpha);

enum class Family { UniformDisk, UniformSquare, Gauss2D, Cauchy2D, Uniform1D, Normal1D };

struct Interval {
  double lo, hi;
};

using RadonValue = double;  // projected density at <x,u>, nonnegative

// Reference measure with closed-form halfspace mass, depth, trimmed regions,
// projected densities and a deterministic sampler.  The planar families are
// centrally symmetric, so the maximal depth is 1/2.
class ModelDistribution {
 public:
  static ModelDistribution disk(double radius = 1.0);
  static ModelDistribution square();
  static ModelDistribution gauss();
  static ModelDistribution cauchy();
  static ModelDistribution uniform1d();
  static ModelDistribution normal1d();
  // tags: disk, square, gauss, cauchy, uniform1d, normal1d
  static ModelDistribution from_tag(const std::string& tag);

  Family family() const { return family_; }
  const std::string& tag() const { return tag_; }
  bool planar() const { return family_ != Family::Uniform1D && family_ != Family::Normal1D; }
  double disk_radius() const { return radius_; }

  double halfspace_mass(const geom::Halfplane& h) const;
  double depth(Vec2 x) const;
  geom::ConvexRegion region(double alpha, int resolution = 1024) const;
  RadonValue radon(Vec2 x, const geom::UnitDirection& u) const;
  double min_boundary_radon(double alpha) const;

  // n i.i.d. draws, fully determined by the stream id; each draw consumes a
  // fixed number of generator words, so prefixes are stable
  std::vector<Vec2> sample(int n, uint64_t stream) const;
  Vec2 draw(std::mt19937_64& g) const;

  double depth_1d(double x) const;           // 1-D families only
  Interval region_1d(double alpha) const;    // [q_alpha, q_{1-alpha}]
  double cdf_1d(double x) const;
  double quantile_1d(double p) const;

 private:
  ModelDistribution(Family f, std::string tag, double radius)
      : family_(f), tag_(std::move(tag)), radius_(radius) {}

  Family family_;
  std::string tag_;
  double radius_;  // disk only
};

}  // namespace hsd::dist
