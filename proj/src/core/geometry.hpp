#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "core/vec.hpp"

namespace hsd::geom {

// Unit vector on S^1, normalized on construction.
struct UnitDirection {
  double ux;
  double uy;

  UnitDirection(double x, double y);
  static UnitDirection from_angle(double theta);
  double angle() const { return std::atan2(uy, ux); }
  Vec2 vec() const { return {ux, uy}; }
};

// Closed halfplane {z : <z,u> <= t}.
struct Halfplane {
  UnitDirection u;
  double t;

  bool contains(Vec2 z, double tol = 0.0) const {
    return z.x * u.ux + z.y * u.uy <= t + tol;
  }
  // image under the translation z -> z + c
  Halfplane translated(Vec2 c) const { return {u, t + dot(c, u.vec())}; }
};

struct BoundingBox {
  double xmin, ymin, xmax, ymax;
};

// Thrown by operations that are undefined on empty regions.
struct EmptyRegionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Bounded convex polygon, CCW vertex order.  Degenerate one- and two-vertex
// regions (points, segments) are valid non-empty values; the default state is
// the empty region.
class ConvexRegion {
 public:
  ConvexRegion() = default;
  explicit ConvexRegion(std::vector<Vec2> verts);  // canonicalizes

  bool empty() const { return verts_.empty(); }
  const std::vector<Vec2>& vertices() const { return verts_; }

 private:
  std::vector<Vec2> verts_;
};

// Intersection of all halfplanes, clipped to `clip`; clip edges survive only
// where the true intersection extends beyond the box.  Rejects non-finite
// offsets.  Result may be empty.
ConvexRegion intersect_halfplanes(const std::vector<Halfplane>& hs,
                                  const BoundingBox& clip);

// One Sutherland-Hodgman step: convex polygon (CCW) clipped by a halfplane.
std::vector<Vec2> clip_convex(const std::vector<Vec2>& poly, const Halfplane& h);

// Closed membership; boundary points within tol count as inside.
bool contains(const ConvexRegion& r, Vec2 x, double tol = 1e-12);

// Same predicate in O(log m) via a fan binary search; intended for repeated
// queries against large polygons.
bool contains_log(const ConvexRegion& r, Vec2 x, double tol = 1e-12);

// 0 if contained, else distance to the nearest boundary feature.
double point_to_region_distance(Vec2 x, const ConvexRegion& r);

// Exact Hausdorff distance between convex polygons: point-to-convex-set
// distance is convex, hence maximal at vertices of the other polygon.
double hausdorff_distance(const ConvexRegion& a, const ConvexRegion& b);

}  // namespace hsd::geom
