#include "core/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hsd::asy {

double lambda_n(long n) {
  if (n < 3) throw std::domain_error("lambda_n: needs n >= 3");
  const double nn = static_cast<double>(n);
  return std::sqrt(2.0 * std::log(std::log(nn)) / nn);
}

double RateSequence::operator()(long n) const {
  if (kind == Kind::LambdaN) return lambda_n(n);
  if (!(p >= 1.0 && p < 2.0)) throw std::domain_error("RateSequence: p outside [1,2)");
  if (n < 1) throw std::domain_error("RateSequence: needs n >= 1");
  return std::pow(static_cast<double>(n), (1.0 - p) / p);
}

double envelope(double M, double m) {
  if (!(M >= 1.0)) throw std::domain_error("envelope: weight second moment must be >= 1");
  if (!(m >= 0.0 && m <= 1.0)) throw std::domain_error("envelope: mass level outside [0,1]");
  const double rad = M * m - m * m;
  return std::sqrt(rad);  // rad >= 0 since M >= 1 >= m
}

LILConstant lil_constant(const dist::ModelDistribution& d, double alpha, double M) {
  const double env = envelope(M, alpha);
  const double minr = d.min_boundary_radon(alpha);  // validates alpha, rejects 1-D
  LILConstant c;
  c.min_radon = minr;
  if (d.family() == dist::Family::Cauchy2D) {
    // corner minimizers: the flat-boundary value brackets the true constant
    // from below, an extra sqrt(2) from the diagonal direction from above
    c.lower = env / minr;
    c.upper = std::sqrt(2.0) * c.lower;
    c.exact = false;
  } else {
    c.lower = c.upper = env / minr;
    c.exact = true;
  }
  return c;
}

double phi_prime(const dist::ModelDistribution& d, double alpha,
                 const std::function<double(Vec2)>& phi, int resolution) {
  if (resolution < 64) throw std::invalid_argument("phi_prime: resolution < 64");
  if (!phi) throw std::invalid_argument("phi_prime: empty functional");
  const geom::ConvexRegion reg = d.region(alpha, resolution);
  const auto& v = reg.vertices();
  const size_t m = v.size();
  if (m < 3) throw std::domain_error("phi_prime: degenerate boundary");
  double best = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const Vec2 a = v[(i + m - 1) % m], b = v[i], c = v[(i + 1) % m];
    // outward normal of a CCW edge (p -> q) is rot90(q - p) negated
    const Vec2 n1{b.y - a.y, a.x - b.x};
    const Vec2 n2{c.y - b.y, b.x - c.x};
    const Vec2 s{n1.x / norm(n1) + n2.x / norm(n2), n1.y / norm(n1) + n2.y / norm(n2)};
    const geom::UnitDirection u(s.x, s.y);
    const double t = d.radon(b, u);
    if (!(t > 0.0)) throw std::domain_error("phi_prime: projected density vanishes on the boundary");
    best = std::max(best, std::abs(phi(b)) / t);
  }
  return best;
}

double hausdorff_rate(const dist::ModelDistribution& d, double alpha, double t,
                      int resolution) {
  if (t == 0.0 || !std::isfinite(t)) throw std::domain_error("hausdorff_rate: t must be nonzero");
  const double at = std::abs(t);
  if (!(alpha - at > 0.0 && alpha + at < 0.5))
    throw std::domain_error("hausdorff_rate: alpha +/- t must stay inside (0, 1/2)");
  const geom::ConvexRegion r0 = d.region(alpha, resolution);
  const geom::ConvexRegion r1 = d.region(alpha + t, resolution);
  return geom::hausdorff_distance(r0, r1) / at;
}

double varpi(const dist::ModelDistribution& d, Vec2 x, double r, int sign) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error("varpi: radius must be positive");
  if (sign != 1 && sign != -1) throw std::invalid_argument("varpi: sign must be +1 or -1");
  if (d.family() == dist::Family::UniformDisk) {
    if (norm(x) + r >= d.disk_radius())
      throw std::domain_error("varpi: ball exits the support disk");
  } else if (d.family() == dist::Family::UniformSquare) {
    if (!(x.x - r > 0.0 && x.x + r < 1.0 && x.y - r > 0.0 && x.y + r < 1.0))
      throw std::domain_error("varpi: ball exits the support square");
  }
  const double d0 = d.depth(x);
  double best = 0.0;  // y = x contributes 0 to both sides
  constexpr int kRad = 64, kAng = 64;
  for (int j = 1; j <= kRad; ++j) {
    const double rho = r * j / kRad;
    for (int k = 0; k < kAng; ++k) {
      const double th = 2.0 * M_PI * k / kAng;
      const Vec2 y{x.x + rho * std::cos(th), x.y + rho * std::sin(th)};
      const double delta = d.depth(y) - d0;
      if (sign > 0)
        best = std::max(best, delta);
      else
        best = std::min(best, delta);
    }
  }
  return best;
}

}  // namespace hsd::asy
