#pragma once

#include <functional>

#include "core/distributions.hpp"
#include "core/vec.hpp"

namespace hsd::asy {

// sqrt(2 log log n / n); defined for n >= 3
double lambda_n(long n);

// Rate evaluable along a sample-size schedule: either lambda_n or the
// polynomial n^{(1-p)/p} with p in [1,2).
struct RateSequence {
  enum class Kind { LambdaN, Polynomial };
  Kind kind = Kind::LambdaN;
  double p = 1.5;  // Polynomial only

  double operator()(long n) const;
};

// sqrt(M*m - m^2): the deviation envelope at mass level m for a weight
// second moment M >= 1, m in [0,1]
double envelope(double M, double m);

// Normalized limsup constant for the trimmed-region Hausdorff deviation.
// lower == upper for the families where the boundary minimum is attained
// with a flat envelope; the heavy-tailed square-region family only admits
// a bracket (upper = sqrt(2) * lower).
struct LILConstant {
  double lower;
  double upper;
  double min_radon;
  bool exact;  // lower == upper
};

LILConstant lil_constant(const dist::ModelDistribution& d, double alpha, double M);

// max over the alpha-region boundary of |phi(x)| / radon(x, u_x) with u_x the
// outward vertex normal (mean of the two adjacent edge normals)
double phi_prime(const dist::ModelDistribution& d, double alpha,
                 const std::function<double(Vec2)>& phi, int resolution = 1024);

// hausdorff(region(alpha+t), region(alpha)) / |t| for small t != 0;
// converges to 1 / min_boundary_radon(alpha) as t -> 0
double hausdorff_rate(const dist::ModelDistribution& d, double alpha, double t,
                      int resolution = 2048);

// One-sided local depth oscillation over the closed ball B(x, r):
//   sign=+1: sup_y depth(y) - depth(x),  sign=-1: inf_y depth(y) - depth(x),
// evaluated on a 64x64 polar grid (4096 points, outer ring at radius r).
double varpi(const dist::ModelDistribution& d, Vec2 x, double r, int sign);

}  // namespace hsd::asy
