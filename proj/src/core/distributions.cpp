#include "core/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/rng.hpp"

namespace hsd::dist {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;

double shoelace_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  for (size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * std::fabs(a);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::domain_error("alpha must lie in (0, 1/2)");
}

}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / M_SQRT2); }

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: p must lie in (0,1)");
  // Acklam's rational estimate, then Newton steps on the erfc-based cdf
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  for (int it = 0; it < 2; ++it) {
    const double err = std_normal_cdf(x) - p;
    const double pdf = std::exp(-0.5 * x * x) / kSqrt2Pi;
    if (pdf <= 0.0) break;
    x -= err / pdf;
  }
  return x;
}

double disk_level_radius(double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw std::domain_error("disk_level_radius: alpha must lie in (0, 1/2]");
  const double rhs = M_PI_2 - M_PI * alpha;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    const double g = std::asin(mid) + mid * std::sqrt(1.0 - mid * mid);
    (g < rhs ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ModelDistribution ModelDistribution::disk(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("disk: radius must be positive and finite");
  return {Family::UniformDisk, "disk", radius};
}
ModelDistribution ModelDistribution::square() { return {Family::UniformSquare, "square", 0.0}; }
ModelDistribution ModelDistribution::gauss() { return {Family::Gauss2D, "gauss", 0.0}; }
ModelDistribution ModelDistribution::cauchy() { return {Family::Cauchy2D, "cauchy", 0.0}; }
ModelDistribution ModelDistribution::uniform1d() { return {Family::Uniform1D, "uniform1d", 0.0}; }
ModelDistribution ModelDistribution::normal1d() { return {Family::Normal1D, "normal1d", 0.0}; }

ModelDistribution ModelDistribution::from_tag(const std::string& tag) {
  if (tag == "disk") return disk();
  if (tag == "square") return square();
  if (tag == "gauss") return gauss();
  if (tag == "cauchy") return cauchy();
  if (tag == "uniform1d") return uniform1d();
  if (tag == "normal1d") return normal1d();
  throw std::invalid_argument("unknown distribution tag: " + tag);
}

double ModelDistribution::halfspace_mass(const geom::Halfplane& h) const {
  const double ux = h.u.ux, uy = h.u.uy, t = h.t;
  switch (family_) {
    case Family::UniformDisk: {
      const double s = t / radius_;
      if (s <= -1.0) return 0.0;
      if (s >= 1.0) return 1.0;
      return 1.0 - (std::acos(s) - s * std::sqrt(1.0 - s * s)) / M_PI;
    }
    case Family::UniformSquare: {
      static const std::vector<Vec2> unit = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      return shoelace_area(geom::clip_convex(unit, h));
    }
    case Family::Gauss2D:
      return std_normal_cdf(t);
    case Family::Cauchy2D: {
      // <X,u> with independent standard Cauchy coordinates is Cauchy(0, |u1|+|u2|)
      const double gamma = std::fabs(ux) + std::fabs(uy);
      return 0.5 + std::atan(t / gamma) / M_PI;
    }
    case Family::Uniform1D:
    case Family::Normal1D: {
      if (ux == 0.0) return t >= 0.0 ? 1.0 : 0.0;
      const double q = t / ux;
      return ux > 0.0 ? cdf_1d(q) : 1.0 - cdf_1d(q);
    }
  }
  return 0.0;
}

double ModelDistribution::depth(Vec2 x) const {
  switch (family_) {
    case Family::UniformDisk: {
      const double s = norm(x) / radius_;
      if (s >= 1.0) return 0.0;
      return (std::acos(s) - s * std::sqrt(1.0 - s * s)) / M_PI;
    }
    case Family::UniformSquare: {
      if (x.x < 0.0 || x.x > 1.0 || x.y < 0.0 || x.y > 1.0) return 0.0;
      return 2.0 * std::min(x.x, 1.0 - x.x) * std::min(x.y, 1.0 - x.y);
    }
    case Family::Gauss2D:
      return 1.0 - std_normal_cdf(norm(x));
    case Family::Cauchy2D:
      return 0.5 - std::atan(std::max(std::fabs(x.x), std::fabs(x.y))) / M_PI;
    case Family::Uniform1D:
    case Family::Normal1D:
      return x.y == 0.0 ? depth_1d(x.x) : 0.0;
  }
  return 0.0;
}

geom::ConvexRegion ModelDistribution::region(double alpha, int resolution) const {
  check_alpha(alpha);
  if (resolution < 16) throw std::invalid_argument("region: resolution must be >= 16");
  switch (family_) {
    case Family::UniformDisk:
    case Family::Gauss2D: {
      const double r = family_ == Family::UniformDisk
                           ? radius_ * disk_level_radius(alpha)
                           : std_normal_quantile(1.0 - alpha);
      std::vector<Vec2> v;
      v.reserve(resolution);
      for (int k = 0; k < resolution; ++k) {
        const double th = 2.0 * M_PI * k / resolution;
        v.push_back({r * std::cos(th), r * std::sin(th)});
      }
      return geom::ConvexRegion(std::move(v));
    }
    case Family::Cauchy2D: {
      const double c = std::cos(M_PI * alpha) / std::sin(M_PI * alpha);
      return geom::ConvexRegion({{c, -c}, {c, c}, {-c, c}, {-c, -c}});
    }
    case Family::UniformSquare: {
      // four hyperbolic arcs min(x,1-x)min(y,1-y) = alpha/2; each arc spans
      // x in [alpha, 1/2] in its corner frame, with the diagonal apex
      // sqrt(alpha/2) inserted exactly
      const int per_arc = std::max(4, resolution / 4);
      std::vector<double> xs;
      xs.reserve(per_arc + 2);
      for (int k = 0; k <= per_arc; ++k)
        xs.push_back(alpha + (0.5 - alpha) * k / per_arc);
      const double apex = std::sqrt(alpha / 2.0);
      const auto pos = std::lower_bound(xs.begin(), xs.end(), apex);
      if (pos == xs.end() || std::fabs(*pos - apex) > 1e-15) xs.insert(pos, apex);

      std::vector<Vec2> v;
      v.reserve(4 * xs.size());
      // CCW: left-bottom, bottom-right, right-top, top-left; each arc drops
      // its final junction point (the next arc starts there)
      for (size_t i = 0; i + 1 < xs.size(); ++i)  // (alpha,1/2) -> (1/2,alpha)
        v.push_back({xs[i], alpha / (2.0 * xs[i])});
      for (size_t i = xs.size(); i-- > 1;)        // (1/2,alpha) -> (1-alpha,1/2)
        v.push_back({1.0 - xs[i], alpha / (2.0 * xs[i])});
      for (size_t i = 0; i + 1 < xs.size(); ++i)  // (1-alpha,1/2) -> (1/2,1-alpha)
        v.push_back({1.0 - xs[i], 1.0 - alpha / (2.0 * xs[i])});
      for (size_t i = xs.size(); i-- > 1;)        // (1/2,1-alpha) -> (alpha,1/2)
        v.push_back({xs[i], 1.0 - alpha / (2.0 * xs[i])});
      return geom::ConvexRegion(std::move(v));
    }
    case Family::Uniform1D:
    case Family::Normal1D: {
      const Interval iv = region_1d(alpha);
      return geom::ConvexRegion({{iv.lo, 0.0}, {iv.hi, 0.0}});
    }
  }
  return {};
}

RadonValue ModelDistribution::radon(Vec2 x, const geom::UnitDirection& u) const {
  const double s = dot(x, u.vec());
  switch (family_) {
    case Family::UniformDisk: {
      if (norm(x) >= radius_)
        throw std::domain_error("radon: point outside the open disk");
      return 2.0 * std::sqrt(radius_ * radius_ - s * s) / (M_PI * radius_ * radius_);
    }
    case Family::UniformSquare: {
      if (!(x.x > 0.0 && x.x < 1.0 && x.y > 0.0 && x.y < 1.0))
        throw std::domain_error("radon: point outside the open square");
      // chord length of the unit square cut by the line through x normal to u
      const Vec2 d = rot90(u.vec());
      double lo = -1e300, hi = 1e300;
      const double px[2] = {x.x, x.y}, dd[2] = {d.x, d.y};
      for (int axis = 0; axis < 2; ++axis) {
        if (std::fabs(dd[axis]) < 1e-15) continue;
        double a = (0.0 - px[axis]) / dd[axis];
        double b = (1.0 - px[axis]) / dd[axis];
        if (a > b) std::swap(a, b);
        lo = std::max(lo, a);
        hi = std::min(hi, b);
      }
      return std::max(0.0, hi - lo);
    }
    case Family::Gauss2D:
      return std::exp(-0.5 * s * s) / kSqrt2Pi;
    case Family::Cauchy2D: {
      const double gamma = std::fabs(u.ux) + std::fabs(u.uy);
      return gamma / (M_PI * (gamma * gamma + s * s));
    }
    case Family::Uniform1D:
    case Family::Normal1D: {
      if (u.ux == 0.0)
        throw std::domain_error("radon: degenerate projection for a 1-D law");
      const double q = s / u.ux;
      const double f = family_ == Family::Uniform1D
                           ? (q >= 0.0 && q <= 1.0 ? 1.0 : 0.0)
                           : std::exp(-0.5 * q * q) / kSqrt2Pi;
      return f / std::fabs(u.ux);
    }
  }
  return 0.0;
}

double ModelDistribution::min_boundary_radon(double alpha) const {
  check_alpha(alpha);
  switch (family_) {
    case Family::UniformDisk: {
      const double r = disk_level_radius(alpha);
      return 2.0 * std::sqrt(1.0 - r * r) / (M_PI * radius_);
    }
    case Family::UniformSquare:
      // boundary minimum localized at the diagonal touch points
      return 2.0 * std::sqrt(alpha);
    case Family::Gauss2D: {
      const double q = std_normal_quantile(1.0 - alpha);
      return std::exp(-0.5 * q * q) / kSqrt2Pi;
    }
    case Family::Cauchy2D: {
      const double sn = std::sin(M_PI * alpha);
      return sn * sn / M_PI;
    }
    default:
      throw std::domain_error("min_boundary_radon: unsupported for 1-D laws");
  }
}

Vec2 ModelDistribution::draw(std::mt19937_64& g) const {
  using rng::uniform01;
  switch (family_) {
    case Family::UniformDisk: {
      const double r = radius_ * std::sqrt(uniform01(g));
      const double th = 2.0 * M_PI * uniform01(g);
      return {r * std::cos(th), r * std::sin(th)};
    }
    case Family::UniformSquare: {
      const double a = uniform01(g), b = uniform01(g);
      return {a, b};
    }
    case Family::Gauss2D: {
      double z1, z2;
      rng::normal_pair(g, z1, z2);
      return {z1, z2};
    }
    case Family::Cauchy2D: {
      const double a = uniform01(g), b = uniform01(g);
      return {std::tan(M_PI * (a - 0.5)), std::tan(M_PI * (b - 0.5))};
    }
    case Family::Uniform1D:
      return {uniform01(g), 0.0};
    case Family::Normal1D: {
      double z1, z2;
      rng::normal_pair(g, z1, z2);
      return {z1, 0.0};
    }
  }
  return {};
}

std::vector<Vec2> ModelDistribution::sample(int n, uint64_t stream) const {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  auto g = rng::make_stream(stream, 0, 0);
  std::vector<Vec2> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back(draw(g));
  return pts;
}

double ModelDistribution::cdf_1d(double x) const {
  switch (family_) {
    case Family::Uniform1D:
      return std::clamp(x, 0.0, 1.0);
    case Family::Normal1D:
      return std_normal_cdf(x);
    default:
      throw std::domain_error("cdf_1d: not a 1-D law");
  }
}

double ModelDistribution::quantile_1d(double p) const {
  switch (family_) {
    case Family::Uniform1D:
      if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("quantile_1d: p outside [0,1]");
      return p;
    case Family::Normal1D:
      return std_normal_quantile(p);
    default:
      throw std::domain_error("quantile_1d: not a 1-D law");
  }
}

double ModelDistribution::depth_1d(double x) const {
  const double f = cdf_1d(x);
  return std::min(f, 1.0 - f);
}

Interval ModelDistribution::region_1d(double alpha) const {
  check_alpha(alpha);
  return {quantile_1d(alpha), quantile_1d(1.0 - alpha)};
}

}  // namespace hsd::dist
