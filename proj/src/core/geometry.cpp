#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hsd::geom {

namespace {

constexpr double kMergeTol = 1e-12;  // vertex merge / collinearity tolerance

double seg_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return distance(p, a);
  const double s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + s * ab);
}

std::vector<Vec2> canonicalize(std::vector<Vec2> v) {
  // merge consecutive near-duplicates (cyclically)
  std::vector<Vec2> merged;
  for (const Vec2& p : v) {
    if (merged.empty() || distance(merged.back(), p) > kMergeTol) merged.push_back(p);
  }
  while (merged.size() > 1 && distance(merged.front(), merged.back()) <= kMergeTol)
    merged.pop_back();
  if (merged.size() <= 2) return merged;

  // drop interior collinear vertices; a ~180 degree turn marks the endpoint of
  // a degenerate (segment-shaped) chain and must be kept for the next pass
  std::vector<Vec2> out;
  const size_t m = merged.size();
  for (size_t i = 0; i < m; ++i) {
    const Vec2 a = merged[(i + m - 1) % m], b = merged[i], c = merged[(i + 1) % m];
    const Vec2 ab = b - a, bc = c - b;
    const bool straight =
        std::fabs(cross(ab, bc)) <= kMergeTol * norm(ab) * norm(bc) && dot(ab, bc) > 0.0;
    if (!straight) out.push_back(b);
  }
  if (out.size() <= 2) return out;

  // if everything is within tolerance of one line, collapse to a segment
  Vec2 lo = out[0], hi = out[0];
  for (const Vec2& p : out) {
    if (p.x < lo.x || (p.x == lo.x && p.y < lo.y)) lo = p;
    if (p.x > hi.x || (p.x == hi.x && p.y > hi.y)) hi = p;
  }
  const Vec2 axis = hi - lo;
  const double axis_len = norm(axis);
  if (axis_len > 0.0) {
    bool flat = true;
    for (const Vec2& p : out)
      if (std::fabs(cross(axis, p - lo)) > kMergeTol * axis_len) { flat = false; break; }
    if (flat) return {lo, hi};
  }

  double area2 = 0.0;
  for (size_t i = 0; i < out.size(); ++i)
    area2 += cross(out[i], out[(i + 1) % out.size()]);
  if (area2 < 0.0) std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

UnitDirection::UnitDirection(double x, double y) {
  const double n = std::hypot(x, y);
  if (!std::isfinite(n) || n == 0.0)
    throw std::invalid_argument("UnitDirection: zero or non-finite vector");
  ux = x / n;
  uy = y / n;
}

UnitDirection UnitDirection::from_angle(double theta) {
  return UnitDirection(std::cos(theta), std::sin(theta));
}

ConvexRegion::ConvexRegion(std::vector<Vec2> verts) : verts_(canonicalize(std::move(verts))) {}

std::vector<Vec2> clip_convex(const std::vector<Vec2>& poly, const Halfplane& h) {
  std::vector<Vec2> out;
  out.reserve(poly.size() + 1);
  const Vec2 u = h.u.vec();
  const size_t m = poly.size();
  for (size_t i = 0; i < m; ++i) {
    const Vec2 p = poly[i], q = poly[(i + 1) % m];
    const double sp = h.t - dot(p, u), sq = h.t - dot(q, u);
    if (sp >= 0.0) out.push_back(p);
    if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0)) {
      const double s = sp / (sp - sq);
      out.push_back(p + s * (q - p));
    }
  }
  return out;
}

ConvexRegion intersect_halfplanes(const std::vector<Halfplane>& hs, const BoundingBox& clip) {
  if (hs.empty()) throw std::invalid_argument("intersect_halfplanes: empty halfplane list");
  for (const Halfplane& h : hs)
    if (!std::isfinite(h.t)) throw std::invalid_argument("intersect_halfplanes: non-finite offset");
  if (!(clip.xmin < clip.xmax) || !(clip.ymin < clip.ymax))
    throw std::invalid_argument("intersect_halfplanes: invalid clip box");

  std::vector<Vec2> poly = {{clip.xmin, clip.ymin},
                            {clip.xmax, clip.ymin},
                            {clip.xmax, clip.ymax},
                            {clip.xmin, clip.ymax}};
  for (const Halfplane& h : hs) {
    poly = clip_convex(poly, h);
    if (poly.empty()) return {};
  }
  return ConvexRegion(std::move(poly));
}

bool contains(const ConvexRegion& r, Vec2 x, double tol) {
  const auto& v = r.vertices();
  if (v.empty()) return false;
  if (v.size() == 1) return distance(x, v[0]) <= tol;
  if (v.size() == 2) return seg_distance(x, v[0], v[1]) <= tol;
  const size_t m = v.size();
  for (size_t i = 0; i < m; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % m];
    if (cross(b - a, x - a) < -tol * norm(b - a)) return false;
  }
  return true;
}

bool contains_log(const ConvexRegion& r, Vec2 x, double tol) {
  const auto& v = r.vertices();
  const size_t m = v.size();
  if (m < 3) return contains(r, x, tol);
  const Vec2 rel = x - v[0];
  // Outside the fan anchored at v[0] the nearest feature may be either edge
  // incident to v[0]; that case is rare for our query mix, so just fall back.
  if (cross(v[1] - v[0], rel) < 0 || cross(v[m - 1] - v[0], rel) > 0)
    return contains(r, x, tol);
  size_t lo = 1, hi = m - 1;
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    if (cross(v[mid] - v[0], rel) >= 0)
      lo = mid;
    else
      hi = mid;
  }
  const Vec2 e = v[hi] - v[lo];
  return cross(e, x - v[lo]) >= -tol * norm(e);
}

double point_to_region_distance(Vec2 x, const ConvexRegion& r) {
  const auto& v = r.vertices();
  if (v.empty()) throw EmptyRegionError("point_to_region_distance: empty region");
  if (v.size() == 1) return distance(x, v[0]);
  if (v.size() == 2) return seg_distance(x, v[0], v[1]);
  const size_t m = v.size();
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < m; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % m];
    if (cross(b - a, x - a) < 0.0) inside = false;
    best = std::min(best, seg_distance(x, a, b));
  }
  return inside ? 0.0 : best;
}

namespace {

// Distance from p to polygon b.  The edge-distance sequence of an outside
// point is bimodal around the cycle (a near arc and a far arc), so local
// descent is unsafe; after the O(log m) containment fan test every edge is
// scanned.
double poly_distance(Vec2 p, const std::vector<Vec2>& b) {
  const size_t m = b.size();
  const Vec2 v0 = b[0];
  const Vec2 rel = p - v0;
  if (cross(b[1] - v0, rel) >= 0.0 && cross(b[m - 1] - v0, rel) <= 0.0) {
    size_t lo = 1, hi = m - 1;
    while (hi - lo > 1) {
      const size_t mid = (lo + hi) / 2;
      if (cross(b[mid] - v0, rel) >= 0.0) lo = mid;
      else hi = mid;
    }
    if (cross(b[hi] - b[lo], p - b[lo]) >= 0.0) return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < m; ++i)
    best = std::min(best, seg_distance(p, b[i], b[(i + 1) % m]));
  return best;
}

double directed_hausdorff(const ConvexRegion& a, const ConvexRegion& b) {
  const auto& av = a.vertices();
  const auto& bv = b.vertices();
  double worst = 0.0;
  if (bv.size() <= 2) {
    for (const Vec2& p : av)
      worst = std::max(worst, bv.size() == 1 ? distance(p, bv[0]) : seg_distance(p, bv[0], bv[1]));
    return worst;
  }
  for (const Vec2& p : av) worst = std::max(worst, poly_distance(p, bv));
  return worst;
}

}  // namespace

double hausdorff_distance(const ConvexRegion& a, const ConvexRegion& b) {
  if (a.empty() || b.empty()) throw EmptyRegionError("hausdorff_distance: empty region");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace hsd::geom
