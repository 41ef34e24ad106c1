#include "core/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hsd::emp {

namespace {

constexpr double kTieTol = 1e-12;
constexpr int kBuckets = 2048;

double two_pi_mod(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  return a < 0.0 ? a + 2.0 * M_PI : a;
}

// Minimal grouped-quantile offset: the smallest sample projection v (group
// representative = max of a tie group) whose cumulative weight exceeds
// thr_total.  Bucket counting narrows the crossing to ~n/kBuckets candidates;
// a direct sorted scan resolves it exactly.  Total weight always exceeds
// thr_total, so a crossing exists.
struct OffsetScratch {
  std::vector<double> proj;
  std::vector<double> bucket_sum;
  std::vector<double> bucket_pos;  // positive parts, for signed weights
  std::vector<std::pair<double, double>> cand;
};

double sorted_crossing(std::vector<std::pair<double, double>>& vw, double cum,
                       double thr_total, bool& found) {
  std::sort(vw.begin(), vw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  size_t i = 0;
  while (i < vw.size()) {
    size_t j = i;
    double gmax = vw[i].first, gsum = 0.0;
    while (j < vw.size() && vw[j].first - vw[i].first <= kTieTol) {
      gmax = vw[j].first;
      gsum += vw[j].second;
      ++j;
    }
    cum += gsum;
    if (cum > thr_total) {
      found = true;
      return gmax;
    }
    i = j;
  }
  found = false;
  return cum;  // cumulative so far, for the caller to continue with
}

double quantile_offset(const std::vector<Vec2>& pts, const std::vector<double>& ws,
                       Vec2 u, double thr_total, OffsetScratch& sc) {
  const size_t n = pts.size();
  sc.proj.resize(n);
  double mn = std::numeric_limits<double>::infinity(), mx = -mn;
  for (size_t i = 0; i < n; ++i) {
    const double p = pts[i].x * u.x + pts[i].y * u.y;
    sc.proj[i] = p;
    mn = std::min(mn, p);
    mx = std::max(mx, p);
  }
  const double width = (mx - mn) / kBuckets;
  if (!(width > 10.0 * kTieTol)) {
    // tiny projection range: tie groups may straddle buckets, scan directly
    sc.cand.clear();
    for (size_t i = 0; i < n; ++i) sc.cand.push_back({sc.proj[i], ws[i]});
    bool found = false;
    const double v = sorted_crossing(sc.cand, 0.0, thr_total, found);
    return found ? v : mx;
  }
  const double inv_width = 1.0 / width;
  sc.bucket_sum.assign(kBuckets, 0.0);
  sc.bucket_pos.assign(kBuckets, 0.0);
  for (size_t i = 0; i < n; ++i) {
    const int b = std::min(kBuckets - 1, static_cast<int>((sc.proj[i] - mn) * inv_width));
    sc.bucket_sum[b] += ws[i];
    if (ws[i] > 0.0) sc.bucket_pos[b] += ws[i];
  }
  double cum = 0.0;
  int b = 0;
  while (b < kBuckets) {
    if (cum + sc.bucket_pos[b] > thr_total) {
      const int blo = std::max(0, b - 1);
      const int bhi = std::min(kBuckets - 1, b + 1);
      sc.cand.clear();
      for (size_t i = 0; i < n; ++i) {
        const int bi = std::min(kBuckets - 1, static_cast<int>((sc.proj[i] - mn) * inv_width));
        if (bi >= blo && bi <= bhi) sc.cand.push_back({sc.proj[i], ws[i]});
      }
      double base = 0.0;
      for (int k = 0; k < blo; ++k) base += sc.bucket_sum[k];
      bool found = false;
      const double v = sorted_crossing(sc.cand, base, thr_total, found);
      if (found) return v;
      cum = v;  // cumulative through bucket bhi
      b = bhi + 1;
      continue;
    }
    cum += sc.bucket_sum[b];
    ++b;
  }
  return mx;  // unreachable for alpha > 0; defensive
}

geom::ConvexRegion region_from_angles(const WeightedSample& s, double alpha,
                                      const std::vector<double>& angles) {
  const double thr_total = s.mean_weight() * s.n() - s.n() * alpha;
  if (thr_total < 0.0) return {};  // arbitrarily remote mass-0 halfplanes qualify

  const auto& pts = s.points();
  bool coincident = true;
  for (int i = 1; i < s.n() && coincident; ++i)
    coincident = pts[i].x == pts[0].x && pts[i].y == pts[0].y;
  if (coincident) return geom::ConvexRegion({pts[0]});

  const geom::BoundingBox box = s.bbox(1.0);

  OffsetScratch sc;
  std::vector<geom::Halfplane> hs;
  hs.reserve(angles.size());
  for (const double a : angles) {
    const geom::UnitDirection u = geom::UnitDirection::from_angle(a);
    const double v = quantile_offset(pts, s.weights(), u.vec(), thr_total, sc);
    hs.push_back({u, v + kTieTol});
  }
  return geom::intersect_halfplanes(hs, box);
}

std::vector<double> dedup_sorted_angles(std::vector<double> a) {
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (const double x : a)
    if (out.empty() || x - out.back() > kTieTol) out.push_back(x);
  if (out.size() > 1 && (out.back() - out.front()) >= 2.0 * M_PI - kTieTol) out.pop_back();
  return out;
}

}  // namespace

WeightedSample::WeightedSample(std::vector<Vec2> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw std::invalid_argument("WeightedSample: need n >= 1");
  if (points_.size() != weights_.size())
    throw std::invalid_argument("WeightedSample: points/weights length mismatch");
  double sum = 0.0;
  nonnegative_ = true;
  for (size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y) ||
        !std::isfinite(weights_[i]))
      throw std::invalid_argument("WeightedSample: non-finite entry");
    sum += weights_[i];
    if (weights_[i] < 0.0) nonnegative_ = false;
  }
  mean_weight_ = sum / points_.size();
}

WeightedSample::WeightedSample(std::vector<Vec2> points) {
  const size_t n = points.size();
  *this = WeightedSample(std::move(points), std::vector<double>(n, 1.0));
}

geom::BoundingBox WeightedSample::bbox(double inflate) const {
  geom::BoundingBox b{points_[0].x, points_[0].y, points_[0].x, points_[0].y};
  for (const Vec2& p : points_) {
    b.xmin = std::min(b.xmin, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.xmax = std::max(b.xmax, p.x);
    b.ymax = std::max(b.ymax, p.y);
  }
  b.xmin -= inflate;
  b.ymin -= inflate;
  b.xmax += inflate;
  b.ymax += inflate;
  return b;
}

CriticalDirections critical_directions(const WeightedSample& s) {
  const auto& p = s.points();
  const int n = s.n();
  if (n < 2) throw std::invalid_argument("critical_directions: need n >= 2");
  std::vector<double> angles;
  angles.reserve(static_cast<size_t>(n) * (n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vec2 d = p[j] - p[i];
      if (d.x == 0.0 && d.y == 0.0) continue;
      const double a = std::atan2(d.x, -d.y);  // angle of rot90(d), a line normal
      angles.push_back(two_pi_mod(a));
      angles.push_back(two_pi_mod(a + M_PI));
    }
  if (angles.empty()) throw std::invalid_argument("critical_directions: degenerate sample");
  CriticalDirections out;
  for (const double a : dedup_sorted_angles(std::move(angles)))
    out.push_back(geom::UnitDirection::from_angle(a));
  return out;
}

double emp_mass(const WeightedSample& s, const geom::Halfplane& h) {
  const auto& p = s.points();
  const auto& w = s.weights();
  const double ux = h.u.ux, uy = h.u.uy, t = h.t + kTieTol;
  double sum = 0.0;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i].x * ux + p[i].y * uy <= t) sum += w[i];
  return sum / p.size();
}

double emp_depth(const WeightedSample& s, Vec2 x) {
  if (!s.nonnegative())
    throw std::invalid_argument("emp_depth: negative weights unsupported for depth-as-infimum");
  const auto& p = s.points();
  const auto& w = s.weights();
  const size_t n = p.size();

  // direct total over index order, for exactness at the selected angle
  auto mass_at = [&](double theta) {
    const double ux = std::cos(theta), uy = std::sin(theta);
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i)
      if ((p[i].x - x.x) * ux + (p[i].y - x.y) * uy <= 0.0) sum += w[i];
    return sum;
  };

  // rotating sweep over the outward-normal angle: atom i is covered on the
  // closed arc [phi_i + pi/2, phi_i + 3pi/2]
  struct Event {
    double angle;
    double delta;
  };
  std::vector<Event> ev;
  ev.reserve(2 * n);
  for (size_t i = 0; i < n; ++i) {
    const Vec2 d = p[i] - x;
    if (d.x == 0.0 && d.y == 0.0) continue;  // coincident atoms always count
    const double phi = std::atan2(d.y, d.x);
    ev.push_back({two_pi_mod(phi + M_PI_2), w[i]});
    ev.push_back({two_pi_mod(phi + 3.0 * M_PI_2), -w[i]});
  }
  if (ev.empty()) return s.mean_weight();
  std::sort(ev.begin(), ev.end(),
            [](const Event& a, const Event& b) { return a.angle < b.angle; });

  const size_t m = ev.size();
  // For a query on the line through two atoms the pair's critical angles
  // coincide in exact arithmetic but differ by rounding here, opening a
  // ~1e-16-wide phantom arc whose midpoint no cos/sin can classify.  Angles
  // closer than this are one critical direction and the arc between them is
  // never probed; the one-sided limits live in the wide arcs next to it.
  constexpr double kGapTol = 1e-9;
  auto gap_after = [&](size_t k) {
    const double next = k + 1 < m ? ev[k + 1].angle : ev[0].angle + 2.0 * M_PI;
    return next - ev[k].angle;
  };
  // seed inside the widest arc: at least 2*pi/m wide, so its midpoint
  // classification is unambiguous
  size_t seed = 0;
  for (size_t k = 1; k < m; ++k)
    if (gap_after(k) > gap_after(seed)) seed = k;
  const double seed_mid = ev[seed].angle + 0.5 * gap_after(seed);
  double run = mass_at(seed_mid);
  double best = run;
  double best_mid = seed_mid;
  for (size_t step = 1; step <= m; ++step) {
    const size_t k = (seed + step) % m;
    run += ev[k].delta;
    if (gap_after(k) > kGapTol && run < best) {
      best = run;
      best_mid = ev[k].angle + 0.5 * gap_after(k);
    }
  }
  return mass_at(best_mid) / n;
}

geom::ConvexRegion emp_region(const WeightedSample& s, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::domain_error("emp_region: alpha must be positive");
  if (s.n() > 3000)
    throw std::invalid_argument("emp_region: exact mode capped at n = 3000; use the grid");
  const auto& p = s.points();
  const int n = s.n();
  std::vector<double> angles;
  if (n >= 2) {
    angles.reserve(4u * n * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Vec2 d = p[j] - p[i];
        if (d.x == 0.0 && d.y == 0.0) continue;
        const double a = two_pi_mod(std::atan2(d.x, -d.y));
        // the +-pair normals, plus the along-line directions that bound
        // collinear configurations (redundant for samples in general position)
        angles.push_back(a);
        angles.push_back(two_pi_mod(a + M_PI));
        angles.push_back(two_pi_mod(a + M_PI_2));
        angles.push_back(two_pi_mod(a - M_PI_2));
      }
    angles = dedup_sorted_angles(std::move(angles));
  }
  return region_from_angles(s, alpha, angles);
}

geom::ConvexRegion emp_region_grid(const WeightedSample& s, double alpha, int grid_size) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::domain_error("emp_region_grid: alpha must be positive");
  if (grid_size < 4) throw std::invalid_argument("emp_region_grid: grid_size must be >= 4");
  std::vector<double> angles(grid_size);
  for (int k = 0; k < grid_size; ++k) angles[k] = 2.0 * M_PI * k / grid_size;
  return region_from_angles(s, alpha, angles);
}

DeviationResult sup_deviation(const WeightedSample& s, const dist::ModelDistribution& d,
                              int extra_dirs) {
  if (extra_dirs < 0) throw std::invalid_argument("sup_deviation: extra_dirs must be >= 0");
  const auto& p = s.points();
  const auto& w = s.weights();
  const size_t n = p.size();

  std::vector<double> angles;
  for (int k = 0; k < extra_dirs; ++k) angles.push_back(2.0 * M_PI * k / extra_dirs);
  if (n >= 2 && n <= 512) {
    bool degenerate = true;
    for (size_t i = 1; i < n && degenerate; ++i)
      degenerate = p[i].x == p[0].x && p[i].y == p[0].y;
    if (!degenerate)
      for (const auto& u : critical_directions(s)) {
        const double a = two_pi_mod(u.angle());
        // quarter-turn copies bound collinear samples along their own line
        angles.push_back(a);
        angles.push_back(two_pi_mod(a + M_PI_2));
      }
  }
  if (angles.empty()) angles.push_back(0.0);
  angles = dedup_sorted_angles(std::move(angles));

  const double xi_bar = s.mean_weight();
  double best = -1.0;
  geom::UnitDirection best_u(1.0, 0.0);
  double best_t = 0.0;

  std::vector<std::pair<double, double>> vw(n);
  for (const double a : angles) {
    const geom::UnitDirection u = geom::UnitDirection::from_angle(a);
    for (size_t i = 0; i < n; ++i)
      vw[i] = {p[i].x * u.ux + p[i].y * u.uy, w[i]};
    std::sort(vw.begin(), vw.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    auto consider = [&](double dev, double t) {
      if (dev > best) {
        best = dev;
        best_u = u;
        best_t = t;
      }
    };
    double cum = 0.0;
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      double gmax = vw[i].first, gsum = 0.0;
      while (j < n && vw[j].first - vw[i].first <= kTieTol) {
        gmax = vw[j].first;
        gsum += vw[j].second;
        ++j;
      }
      const double model = d.halfspace_mass({u, gmax});
      // left limit: the grouped cum represents a cut below the whole tie band,
      // so evaluate the model there as well; otherwise projections with an
      // atom at gmax (1-D laws hit near-perpendicularly) pair inconsistently
      const double model_left = d.halfspace_mass({u, gmax - kTieTol});
      consider(std::fabs(cum / n - model_left), gmax);
      consider(std::fabs((cum + gsum) / n - model), gmax);
      cum += gsum;
      i = j;
    }
    consider(d.halfspace_mass({u, vw.front().first - 1.0}), vw.front().first - 1.0);
    consider(std::fabs(xi_bar - d.halfspace_mass({u, vw.back().first + 1.0})),
             vw.back().first + 1.0);
  }
  return {best, {best_u, best_t}};
}

}  // namespace hsd::emp
