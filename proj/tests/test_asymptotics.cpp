#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "core/asymptotics.hpp"
#include "core/distributions.hpp"

using namespace hsd;
using dist::ModelDistribution;

TEST_CASE("rate sequence values") {
  CHECK(asy::lambda_n(3) ==
        doctest::Approx(std::sqrt(2.0 * std::log(std::log(3.0)) / 3.0)).epsilon(1e-15));
  CHECK(asy::lambda_n(1000) ==
        doctest::Approx(std::sqrt(2.0 * std::log(std::log(1000.0)) / 1000.0)).epsilon(1e-15));
  CHECK(asy::lambda_n(1000000) == doctest::Approx(0.0022916334412).epsilon(1e-10));
  CHECK_THROWS_AS(asy::lambda_n(2), std::domain_error);
  CHECK_THROWS_AS(asy::lambda_n(0), std::domain_error);
  // single hump at n = 6, decreasing ever after
  CHECK(asy::lambda_n(3) < asy::lambda_n(4));
  CHECK(asy::lambda_n(5) < asy::lambda_n(6));
  CHECK(asy::lambda_n(6) > asy::lambda_n(7));
  for (long n : {7L, 20L, 100L, 10000L})
    CHECK(asy::lambda_n(2 * n) < asy::lambda_n(n));

  asy::RateSequence lam;
  CHECK(lam(1234) == asy::lambda_n(1234));
  const asy::RateSequence poly{asy::RateSequence::Kind::Polynomial, 1.5};
  CHECK(poly(1000) == doctest::Approx(0.1).epsilon(1e-12));  // n^(-1/3)
  CHECK(poly(8) == doctest::Approx(0.5).epsilon(1e-12));
  const asy::RateSequence unit{asy::RateSequence::Kind::Polynomial, 1.0};
  CHECK(unit(31337) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(asy::RateSequence({asy::RateSequence::Kind::Polynomial, 2.0})(10),
                  std::domain_error);
  CHECK_THROWS_AS(asy::RateSequence({asy::RateSequence::Kind::Polynomial, 0.5})(10),
                  std::domain_error);
  CHECK_THROWS_AS(poly(0), std::domain_error);
}

TEST_CASE("deviation envelope") {
  CHECK(asy::envelope(1.0, 0.25) == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-15));
  CHECK(asy::envelope(2.0, 0.25) == doctest::Approx(std::sqrt(0.4375)).epsilon(1e-15));
  CHECK(asy::envelope(1.0, 0.0) == 0.0);
  CHECK(asy::envelope(1.0, 1.0) == 0.0);
  CHECK(asy::envelope(3.0, 0.5) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
  CHECK_THROWS_AS(asy::envelope(0.5, 0.25), std::domain_error);
  CHECK_THROWS_AS(asy::envelope(1.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(asy::envelope(1.0, 1.1), std::domain_error);
}

TEST_CASE("limsup constants") {
  const double alpha = 0.25;
  const auto sq = asy::lil_constant(ModelDistribution::square(), alpha, 1.0);
  CHECK(sq.exact);
  CHECK(sq.lower == sq.upper);
  CHECK(sq.min_radon == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sq.lower == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-14));
  const auto sq2 = asy::lil_constant(ModelDistribution::square(), alpha, 2.0);
  CHECK(sq2.lower == doctest::Approx(std::sqrt(0.4375)).epsilon(1e-14));
  CHECK(sq2.lower > sq.lower);  // heavier weights widen the band

  const auto dk = asy::lil_constant(ModelDistribution::disk(), alpha, 1.0);
  const double r = dist::disk_level_radius(alpha);
  const double minr = 2.0 * std::sqrt(1.0 - r * r) / M_PI;
  CHECK(dk.exact);
  CHECK(dk.min_radon == doctest::Approx(minr).epsilon(1e-12));
  CHECK(dk.lower == doctest::Approx(std::sqrt(3.0) / 4.0 / minr).epsilon(1e-12));

  const auto ga = asy::lil_constant(ModelDistribution::gauss(), alpha, 1.0);
  const double q = dist::std_normal_quantile(1.0 - alpha);
  const double phi_q = std::exp(-q * q / 2.0) / std::sqrt(2.0 * M_PI);
  CHECK(ga.exact);
  CHECK(ga.lower == doctest::Approx(std::sqrt(3.0) / 4.0 / phi_q).epsilon(1e-12));

  const auto ca = asy::lil_constant(ModelDistribution::cauchy(), alpha, 1.0);
  CHECK(!ca.exact);
  CHECK(ca.upper == doctest::Approx(std::sqrt(2.0) * ca.lower).epsilon(1e-14));
  const double minrc = std::sin(M_PI * alpha) * std::sin(M_PI * alpha) / M_PI;
  CHECK(ca.lower == doctest::Approx(std::sqrt(3.0) / 4.0 / minrc).epsilon(1e-12));

  CHECK_THROWS_AS(asy::lil_constant(ModelDistribution::uniform1d(), alpha, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(asy::lil_constant(ModelDistribution::square(), 0.0, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(asy::lil_constant(ModelDistribution::square(), alpha, 0.9),
                  std::domain_error);
}

TEST_CASE("weighted rate functional over the boundary") {
  const double alpha = 0.25;
  // constant weight recovers the reciprocal boundary minimum; circular level
  // sets make every vertex normal exactly radial, so this is tight
  for (const auto& d : {ModelDistribution::disk(), ModelDistribution::gauss()}) {
    const double got = asy::phi_prime(d, alpha, [](Vec2) { return 1.0; });
    CHECK(got == doctest::Approx(1.0 / d.min_boundary_radon(alpha)).epsilon(1e-12));
  }
  // weighting by the projected density itself makes the ratio identically one
  const auto dk = ModelDistribution::disk();
  const auto self = [&](Vec2 b) {
    const double n = std::hypot(b.x, b.y);
    return dk.radon(b, geom::UnitDirection(b.x / n, b.y / n));
  };
  CHECK(asy::phi_prime(dk, alpha, self) == doctest::Approx(1.0).epsilon(1e-12));
  // a coordinate weight picks out the widest horizontal excursion
  const double r = dist::disk_level_radius(alpha);
  const double minr = 2.0 * std::sqrt(1.0 - r * r) / M_PI;
  CHECK(asy::phi_prime(dk, alpha, [](Vec2 b) { return b.x; }) ==
        doctest::Approx(r / minr).epsilon(1e-3));

  CHECK_THROWS_AS(asy::phi_prime(dk, alpha, [](Vec2) { return 1.0; }, 32),
                  std::invalid_argument);
  CHECK_THROWS_AS(asy::phi_prime(dk, alpha, nullptr), std::invalid_argument);
  CHECK_THROWS_AS(
      asy::phi_prime(ModelDistribution::uniform1d(), alpha, [](Vec2) { return 1.0; }),
      std::domain_error);
}

TEST_CASE("finite-difference region rates approach the reciprocal minimum") {
  const double alpha = 0.25;
  const double t = 1e-3;
  for (const auto& d : {ModelDistribution::disk(), ModelDistribution::square(),
                        ModelDistribution::gauss()}) {
    const double want = 1.0 / d.min_boundary_radon(alpha);
    CHECK(asy::hausdorff_rate(d, alpha, t) == doctest::Approx(want).epsilon(0.01));
    CHECK(asy::hausdorff_rate(d, alpha, -t) == doctest::Approx(want).epsilon(0.01));
    // shrinking t sharpens the estimate
    const double e1 = std::fabs(asy::hausdorff_rate(d, alpha, 1e-2) - want);
    const double e2 = std::fabs(asy::hausdorff_rate(d, alpha, 1e-4, 8192) - want);
    CHECK(e2 <= e1 + 1e-6);
  }
  // the region corners of the heavy-tailed law add a sqrt(2) over the
  // reported boundary minimum: corners travel along the diagonal
  const double want_c =
      std::sqrt(2.0) * M_PI / (std::sin(M_PI * alpha) * std::sin(M_PI * alpha));
  CHECK(asy::hausdorff_rate(ModelDistribution::cauchy(), alpha, t) ==
        doctest::Approx(want_c).epsilon(0.01));

  CHECK_THROWS_AS(asy::hausdorff_rate(ModelDistribution::disk(), alpha, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(
      asy::hausdorff_rate(ModelDistribution::disk(), alpha,
                          std::numeric_limits<double>::quiet_NaN()),
      std::domain_error);
  CHECK_THROWS_AS(asy::hausdorff_rate(ModelDistribution::disk(), 0.49, 0.02),
                  std::domain_error);
  CHECK_THROWS_AS(asy::hausdorff_rate(ModelDistribution::disk(), 0.01, -0.02),
                  std::domain_error);
}

TEST_CASE("local depth oscillation") {
  const auto dk = ModelDistribution::disk();
  const double alpha = 0.25;
  const double ra = dist::disk_level_radius(alpha);
  const double grad = 2.0 * std::sqrt(1.0 - ra * ra) / M_PI;  // radial slope
  const double r = 1e-3;
  const Vec2 x{ra, 0.0};
  CHECK(asy::varpi(dk, x, r, +1) / r == doctest::Approx(grad).epsilon(0.01));
  CHECK(asy::varpi(dk, x, r, -1) / r == doctest::Approx(-grad).epsilon(0.01));

  // grows with the radius; at the deepest point only the downside moves
  CHECK(asy::varpi(dk, x, 2 * r, +1) >= asy::varpi(dk, x, r, +1));
  CHECK(asy::varpi(dk, {0, 0}, 0.1, +1) == 0.0);
  CHECK(asy::varpi(dk, {0, 0}, 0.1, -1) ==
        doctest::Approx(dk.depth({0.1, 0}) - 0.5).epsilon(1e-12));

  // bilinear depth near an interior square point: gradient (2y, 2x)
  const auto sq = ModelDistribution::square();
  const Vec2 z{0.3, 0.4};
  CHECK(asy::varpi(sq, z, r, +1) / r ==
        doctest::Approx(std::hypot(2.0 * 0.4, 2.0 * 0.3)).epsilon(0.01));

  CHECK_THROWS_AS(asy::varpi(dk, x, 0.0, +1), std::domain_error);
  CHECK_THROWS_AS(asy::varpi(dk, x, -1e-3, +1), std::domain_error);
  CHECK_THROWS_AS(asy::varpi(dk, x, 1e-3, 0), std::invalid_argument);
  CHECK_THROWS_AS(asy::varpi(dk, {0.9999, 0}, 1e-3, +1), std::domain_error);
  CHECK_THROWS_AS(asy::varpi(sq, {0.9999, 0.5}, 1e-3, +1), std::domain_error);
  CHECK(asy::varpi(ModelDistribution::gauss(), {5, 5}, 1.0, +1) > 0.0);
}
