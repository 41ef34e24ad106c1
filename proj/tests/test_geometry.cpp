#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "core/geometry.hpp"
#include "core/rng.hpp"

using namespace hsd;
using namespace hsd::geom;

namespace {

std::vector<Vec2> regular_polygon(int m, double radius, double phase = 0.0,
                                  Vec2 center = {0, 0}) {
  std::vector<Vec2> v;
  for (int k = 0; k < m; ++k) {
    const double th = phase + 2.0 * M_PI * k / m;
    v.push_back({center.x + radius * std::cos(th), center.y + radius * std::sin(th)});
  }
  return v;
}

// random convex polygon: points on a circle with jittered radii, sorted angles
ConvexRegion random_convex(std::mt19937_64& g, int m) {
  std::vector<double> angles(m);
  for (auto& a : angles) a = 2.0 * M_PI * rng::uniform01(g);
  std::sort(angles.begin(), angles.end());
  const double r = 0.5 + 2.0 * rng::uniform01(g);
  std::vector<Vec2> v;
  for (double a : angles) v.push_back({r * std::cos(a), r * std::sin(a)});
  return ConvexRegion(v);
}

}  // namespace

TEST_CASE("unit direction normalizes and rejects degenerate input") {
  UnitDirection u(3.0, 4.0);
  CHECK(u.ux == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(u.uy == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(std::hypot(u.ux, u.uy) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(UnitDirection(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(UnitDirection(1.0 / 0.0, 1.0), std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(UnitDirection(nan, 1.0), std::invalid_argument);
  const auto v = UnitDirection::from_angle(M_PI / 2);
  CHECK(v.ux == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v.uy == doctest::Approx(1.0));
  CHECK(v.angle() == doctest::Approx(M_PI / 2));
}

TEST_CASE("halfplane membership with tolerance") {
  const Halfplane h{UnitDirection(1.0, 0.0), 2.0};
  CHECK(h.contains({1.9, 5.0}));
  CHECK(h.contains({2.0, -3.0}));
  CHECK(!h.contains({2.1, 0.0}));
  CHECK(h.contains({2.05, 0.0}, 0.1));
}

TEST_CASE("convex region canonicalization") {
  // duplicates merged, clockwise input flipped
  ConvexRegion r({{0, 0}, {0, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 0}});
  REQUIRE(r.vertices().size() == 4);
  double area2 = 0.0;
  const auto& v = r.vertices();
  for (size_t i = 0; i < v.size(); ++i)
    area2 += cross(v[i], v[(i + 1) % v.size()]);
  CHECK(area2 == doctest::Approx(2.0));  // CCW

  // interior collinear vertex dropped
  ConvexRegion c({{0, 0}, {0.5, 0.0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(c.vertices().size() == 4);

  // a flat chain collapses to its extreme segment
  ConvexRegion seg({{0, 0}, {1, 0}, {2, 0}, {0.5, 0}});
  REQUIRE(seg.vertices().size() == 2);
  CHECK(seg.vertices()[0].x == 0.0);
  CHECK(seg.vertices()[1].x == 2.0);

  CHECK(ConvexRegion().empty());
  CHECK(ConvexRegion({{1, 2}}).vertices().size() == 1);
}

TEST_CASE("halfplane intersection recovers a box") {
  const BoundingBox clip{-10, -10, 10, 10};
  std::vector<Halfplane> hs = {
      {UnitDirection(1, 0), 1}, {UnitDirection(-1, 0), 0},
      {UnitDirection(0, 1), 2}, {UnitDirection(0, -1), 0}};
  const ConvexRegion r = intersect_halfplanes(hs, clip);
  REQUIRE(r.vertices().size() == 4);
  for (const Vec2& v : r.vertices()) {
    CHECK(v.x == doctest::Approx(v.x < 0.5 ? 0.0 : 1.0).epsilon(1e-12));
    CHECK(v.y == doctest::Approx(v.y < 1.0 ? 0.0 : 2.0).epsilon(1e-12));
  }

  hs.push_back({UnitDirection(1, 0), -1});  // incompatible with x >= 0
  CHECK(intersect_halfplanes(hs, clip).empty());
}

TEST_CASE("halfplane intersection validates input") {
  const BoundingBox clip{-1, -1, 1, 1};
  CHECK_THROWS_AS(intersect_halfplanes({}, clip), std::invalid_argument);
  CHECK_THROWS_AS(intersect_halfplanes({{UnitDirection(1, 0), std::nan("")}}, clip),
                  std::invalid_argument);
  CHECK_THROWS_AS(intersect_halfplanes({{UnitDirection(1, 0), 0.0}},
                                       BoundingBox{1, 0, -1, 1}),
                  std::invalid_argument);
}

TEST_CASE("halfplane intersection properties on random input") {
  auto g = rng::make_stream(11, 0, 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Halfplane> hs;
    const int k = 3 + static_cast<int>(rng::uniform01(g) * 20);
    for (int i = 0; i < k; ++i) {
      const auto u = UnitDirection::from_angle(2.0 * M_PI * rng::uniform01(g));
      hs.push_back({u, 0.2 + rng::uniform01(g)});  // all contain the origin
    }
    const BoundingBox clip{-3, -3, 3, 3};
    const ConvexRegion r = intersect_halfplanes(hs, clip);
    REQUIRE(!r.empty());
    CHECK(contains(r, {0, 0}, 1e-12));
    CHECK(r.vertices().size() <= hs.size() + 4);
    for (const Vec2& v : r.vertices())
      for (const Halfplane& h : hs) CHECK(h.contains(v, 1e-9));

    // one more constraint can only shrink the region
    hs.push_back({UnitDirection::from_angle(2.0 * M_PI * rng::uniform01(g)), 0.5});
    const ConvexRegion r2 = intersect_halfplanes(hs, clip);
    for (const Vec2& v : r2.vertices()) CHECK(contains(r, v, 1e-9));
  }
}

TEST_CASE("containment on degenerate and full-rank regions") {
  CHECK(!contains(ConvexRegion(), {0, 0}));
  const ConvexRegion pt({{1, 1}});
  CHECK(contains(pt, {1, 1}));
  CHECK(contains(pt, {1 + 1e-13, 1}));
  CHECK(!contains(pt, {1.1, 1}));
  const ConvexRegion seg({{0, 0}, {2, 0}});
  CHECK(contains(seg, {1, 0}));
  CHECK(contains(seg, {1, 1e-13}));
  CHECK(!contains(seg, {1, 0.1}));
  CHECK(!contains(seg, {2.1, 0}));

  const ConvexRegion sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(contains(sq, {0.5, 0.5}));
  CHECK(contains(sq, {0, 0}));
  CHECK(contains(sq, {1.0 + 1e-13, 0.5}));
  CHECK(!contains(sq, {1.0 + 1e-6, 0.5}));
  CHECK(contains(sq, {1.05, 0.5}, 0.1));
}

TEST_CASE("log-time containment agrees with the linear test") {
  auto g = rng::make_stream(12, 0, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const ConvexRegion r = random_convex(g, 3 + static_cast<int>(rng::uniform01(g) * 60));
    if (r.vertices().size() < 3) continue;
    for (int q = 0; q < 200; ++q) {
      const Vec2 p{6.0 * rng::uniform01(g) - 3.0, 6.0 * rng::uniform01(g) - 3.0};
      CHECK(contains_log(r, p) == contains(r, p));
    }
    // boundary-ish queries: points on scaled copies of each vertex
    for (const Vec2& v : r.vertices()) {
      for (double s : {0.5, 0.999, 1.001, 1.5}) {
        const Vec2 p{v.x * s, v.y * s};
        CHECK(contains_log(r, p, 1e-9) == contains(r, p, 1e-9));
      }
    }
  }
}

TEST_CASE("point-to-region distance") {
  CHECK_THROWS_AS(point_to_region_distance({0, 0}, ConvexRegion()), EmptyRegionError);
  const ConvexRegion sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(point_to_region_distance({0.5, 0.5}, sq) == 0.0);
  CHECK(point_to_region_distance({2, 0.5}, sq) == doctest::Approx(1.0));
  CHECK(point_to_region_distance({2, 2}, sq) == doctest::Approx(std::sqrt(2.0)));
  CHECK(point_to_region_distance({0.5, -3}, sq) == doctest::Approx(3.0));
  CHECK(point_to_region_distance({5, 0}, ConvexRegion({{0, 0}, {2, 0}})) ==
        doctest::Approx(3.0));
  CHECK(point_to_region_distance({1, 1}, ConvexRegion({{1, 0}})) == doctest::Approx(1.0));
}

TEST_CASE("hausdorff distance closed cases") {
  const ConvexRegion sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(hausdorff_distance(sq, sq) == 0.0);

  // aligned regular polygons on concentric circles: exactly the radius gap
  for (int m : {3, 8, 64, 1024}) {
    const ConvexRegion inner(regular_polygon(m, 0.5));
    const ConvexRegion outer(regular_polygon(m, 1.25));
    CHECK(hausdorff_distance(inner, outer) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(hausdorff_distance(outer, inner) == doctest::Approx(0.75).epsilon(1e-14));
  }

  // translation of a square: exactly the shift
  const ConvexRegion sq2({{0.25, 0}, {1.25, 0}, {1.25, 1}, {0.25, 1}});
  CHECK(hausdorff_distance(sq, sq2) == doctest::Approx(0.25).epsilon(1e-14));

  CHECK_THROWS_AS(hausdorff_distance(sq, ConvexRegion()), EmptyRegionError);
  CHECK_THROWS_AS(hausdorff_distance(ConvexRegion(), ConvexRegion()), EmptyRegionError);

  // degenerate operands: farthest square corner from (3,0) is (0,1)
  CHECK(hausdorff_distance(ConvexRegion({{3, 0}}), sq) == doctest::Approx(std::sqrt(10.0)));
  CHECK(hausdorff_distance(ConvexRegion({{0, 0}, {1, 0}}), sq) == doctest::Approx(1.0));
}

TEST_CASE("hausdorff distance matches a dense boundary scan") {
  auto g = rng::make_stream(13, 0, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const ConvexRegion a = random_convex(g, 3 + static_cast<int>(rng::uniform01(g) * 30));
    ConvexRegion b = random_convex(g, 3 + static_cast<int>(rng::uniform01(g) * 30));
    if (a.vertices().size() < 3 || b.vertices().size() < 3) continue;
    const double exact = hausdorff_distance(a, b);

    double brute = 0.0;
    const auto scan = [&](const ConvexRegion& from, const ConvexRegion& to) {
      const auto& v = from.vertices();
      for (size_t i = 0; i < v.size(); ++i) {
        const Vec2 p = v[i], q = v[(i + 1) % v.size()];
        for (int s = 0; s < 200; ++s) {
          const Vec2 z = p + (s / 200.0) * (q - p);
          brute = std::max(brute, point_to_region_distance(z, to));
        }
      }
    };
    scan(a, b);
    scan(b, a);
    // the directed maximum sits at a source vertex, and each scan sample is
    // measured exactly, so the two agree to rounding
    CHECK(exact >= brute - 1e-12);
    CHECK(exact <= brute + 1e-12);
  }
}

TEST_CASE("hausdorff distance on eccentric polygons") {
  // stretched shapes make the far side of a polygon locally attractive for
  // edge-distance searches; the distances must still come from the near side
  auto g = rng::make_stream(77, 0, 0);
  const auto stretch = [&](double sx, double sy, double dx, double dy, int m) {
    std::vector<double> angles(m);
    for (auto& a : angles) a = 2.0 * M_PI * rng::uniform01(g);
    std::sort(angles.begin(), angles.end());
    std::vector<Vec2> v;
    for (double a : angles)
      v.push_back({sx * std::cos(a) + dx, sy * std::sin(a) + dy});
    return ConvexRegion(v);
  };
  for (int trial = 0; trial < 12; ++trial) {
    const ConvexRegion a =
        stretch(100.0, 1.0, 0.0, 0.0, 4 + static_cast<int>(rng::uniform01(g) * 8));
    const ConvexRegion b =
        stretch(100.0, 1.0, 20.0 * rng::uniform01(g), 5.0 + 10.0 * rng::uniform01(g),
                4 + static_cast<int>(rng::uniform01(g) * 8));
    if (a.vertices().size() < 3 || b.vertices().size() < 3) continue;
    const double exact = hausdorff_distance(a, b);
    double brute = 0.0;
    const auto scan = [&](const ConvexRegion& from, const ConvexRegion& to) {
      const auto& v = from.vertices();
      for (size_t i = 0; i < v.size(); ++i)
        brute = std::max(brute, point_to_region_distance(v[i], to));
    };
    scan(a, b);
    scan(b, a);
    CHECK(exact == doctest::Approx(brute).epsilon(1e-12));
  }
}
