#include "oracles.hpp"

#include "illume/projective.hpp"

#include <doctest.h>

#include <random>

using namespace illume;

namespace {

Body disk(double r = 1.0) { return Body::ball(2, Vec::Zero(), r); }
Body square() { return Body::polytope(2, {vec2(-1, -1), vec2(1, -1), vec2(1, 1), vec2(-1, 1)}); }

}  // namespace

TEST_CASE("space form chart factors") {
  const SpaceFormChart flat(0, 2);
  const SpaceFormChart hyp(-1, 2);
  CHECK(flat.boundary_measure_factor(vec2(0.4, 0.1), vec2(1, 0)) == doctest::Approx(1.0));
  CHECK(hyp.boundary_measure_factor(vec2(0.5, 0), vec2(1, 0)) == doctest::Approx(1.154701).epsilon(1e-6));
  CHECK(hyp.boundary_measure_factor(Vec::Zero(), vec2(0, 1)) == doctest::Approx(1.0));
  CHECK(SpaceFormChart(1, 2).boundary_measure_factor(Vec::Zero(), vec2(0, 1)) == doctest::Approx(1.0));
  CHECK(flat.curvature_transform(vec2(0.4, 0.1), vec2(1, 0), 0.7) == doctest::Approx(0.7));
  CHECK(hyp.curvature_transform(vec2(0.4, 0.1), vec2(1, 0), 0.0) == 0.0);
  CHECK(hyp.model_radius() == doctest::Approx(1.0));
  CHECK(hyp.intrinsic_radius(0.5) == doctest::Approx(std::atanh(0.5)));
  CHECK(hyp.chart_radius(hyp.intrinsic_radius(0.3)) == doctest::Approx(0.3));
  CHECK(SpaceFormChart(1, 2).intrinsic_radius(1.0) == doctest::Approx(oracle::pi / 4));
  CHECK_THROWS_AS(hyp.require_inside(disk(1.2)), Error);
  CHECK_NOTHROW(hyp.require_inside(disk(0.5)));
}

TEST_CASE("floating area") {
  CHECK(floating_area(disk(), SpaceFormChart(0, 2)) == doctest::Approx(2 * oracle::pi).epsilon(1e-10));
  CHECK(floating_area(square(), SpaceFormChart(0, 2)) == 0.0);
  const SpaceFormChart hyp(-1, 2);
  const double composed = floating_area(disk(0.5), hyp);
  const double factored = floating_area_factored(disk(0.5), hyp);
  CHECK(std::abs(composed - factored) <= 1e-8);
  // Geodesic circle of radius r: length 2 pi sinh r, curvature coth r.
  const double r = std::atanh(0.5);
  CHECK(composed == doctest::Approx(2 * oracle::pi * std::sinh(r) * std::cbrt(1 / std::tanh(r))).epsilon(1e-9));
}

TEST_CASE("spherical excess") {
  CHECK(spherical_excess(Vec(1, 0, 0), Vec(0, 1, 0), Vec(0, 0, 1)) == doctest::Approx(oracle::pi / 2));
  CHECK(spherical_excess(Vec(1, 0, 0), Vec(0, 1, 0), Vec(0, 1, 0)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(spherical_excess(Vec(2, 0, 0), Vec(0, 1, 0), Vec(0, 0, 1)), Error);
}

TEST_CASE("spherical triangle profile") {
  const double phi = 0.5;
  const double theta = 0.7;
  const SphericalTriangleProfile prof(phi, theta);
  const Vec p(std::cos(theta) * std::cos(phi), std::sin(phi), std::sin(theta) * std::cos(phi));
  const Vec q(std::cos(theta) * std::cos(phi), -std::sin(phi), std::sin(theta) * std::cos(phi));
  CHECK((prof.p() - p).norm() <= 1e-15);
  CHECK((prof.q() - q).norm() <= 1e-15);
  CHECK(std::abs(prof.at_zero() - oracle::solid_angle(Vec(1, 0, 0), p, q)) <= 1e-12);
  CHECK(prof.strict_local_max_at_zero());
  for (double t : {0.3, -0.8, 1.2}) {
    CHECK(std::abs(prof(t) - oracle::solid_angle(Vec(std::cos(t), std::sin(t), 0), p, q)) <= 1e-12);
  }
}

TEST_CASE("hyperbolic triangle tau") {
  const HyperbolicTriangleTau same(0.0, 1.0, 0.0);
  for (double t : {-1.0, 0.0, 2.0}) CHECK(same.area(t) == doctest::Approx(0.0));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-2, 2);
  std::uniform_real_distribution<double> uy(0.2, 3);
  std::uniform_real_distribution<double> ut(-1.5, 1.5);
  for (int k = 0; k < 20; ++k) {
    const double x1 = ux(rng);
    const double y1 = uy(rng);
    const double x0 = ux(rng);
    const double t = ut(rng);
    const HyperbolicTriangleTau tri(x1, y1, x0);
    const double direct = oracle::uhp_triangle_area({0, std::exp(t)}, {x1, y1}, {x0, 1});
    CHECK(std::abs(tri.area(t) - direct) <= 1e-8);
    const double s = std::exp(t);
    const double h = 1e-5 * s;
    CHECK(tri.tau_prime(s) == doctest::Approx((tri.tau(s + h) - tri.tau(s - h)) / (2 * h)).epsilon(1e-6));
    CHECK(tri.no_local_max(-4, 4));
    for (double s0 : tri.mu_roots()) {
      CHECK(std::abs(tri.mu(s0)) <= 1e-9 * (1 + s0 * s0));
      if (std::abs(tri.tau(s0)) > 1e-12) CHECK((tri.tau_second(s0) > 0) == (tri.tau(s0) > 0));
    }
  }
}

TEST_CASE("hull volume along chords") {
  const Body k = disk(0.3);
  std::vector<double> ts;
  for (int i = 0; i <= 40; ++i) ts.push_back(i / 40.0);
  const auto scan = hull_volume_along_geodesic(k, space_form_density(-1, 2), vec2(-0.6, 0.5), vec2(0.6, 0.5), ts);
  CHECK(scan.local_maxima.empty());
  CHECK_THROWS_AS(hull_volume_along_geodesic(k, space_form_density(-1, 2), vec2(-0.6, 0), vec2(0.6, 0), ts), Error);
}

TEST_CASE("Hilbert norm and distance") {
  const HilbertDomain x(disk());
  CHECK(x.norm(Vec::Zero(), vec2(0.6, 0.8)) == doctest::Approx(1.0));
  CHECK(x.norm(vec2(0.5, 0), vec2(1, 0)) == doctest::Approx(4.0 / 3.0));
  CHECK(x.distance(vec2(0.2, 0.1), vec2(0.2, 0.1)) == 0.0);
  CHECK(x.distance(Vec::Zero(), vec2(0.5, 0)) == doctest::Approx(0.5 * std::log(3.0)));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Vector2d p(u(rng), u(rng));
    const Eigen::Vector2d q(u(rng), u(rng));
    CHECK(std::abs(x.distance(vec2(p.x(), p.y()), vec2(q.x(), q.y())) - oracle::klein_distance(p, q)) <= 1e-8);
  }
  CHECK_THROWS_AS(x.norm(vec2(1.5, 0), vec2(1, 0)), Error);
}

TEST_CASE("Hilbert volume densities") {
  const HilbertDomain x(disk());
  for (FinslerKind kind : {FinslerKind::Busemann, FinslerKind::HolmesThompson, FinslerKind::GromovMass,
                           FinslerKind::GromovComass}) {
    CAPTURE(to_string(kind));
    CHECK(x.density(kind, Vec::Zero()) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(x.density(kind, vec2(0.5, 0)) == doctest::Approx(oracle::klein_density(0.5)).epsilon(1e-4));
    CHECK(finsler_kind_from_string(to_string(kind)) == kind);
  }
  // Unit ball at (0.5, 0): ellipse with semi-axes 0.75 and sqrt(0.75).
  CHECK(x.density(FinslerKind::Busemann, vec2(0.5, 0)) == doctest::Approx(1 / (0.75 * std::sqrt(0.75))).epsilon(1e-4));
  const HilbertDomain sq(square());
  CHECK(sq.polygonal());
  CHECK(sq.density(FinslerKind::Busemann, Vec::Zero()) > 0.0);
}

TEST_CASE("Finsler surface area") {
  const HilbertDomain x(disk());
  CHECK(finsler_surface_area(Body::polytope(2, {vec2(-0.2, -0.2), vec2(0.2, -0.2), vec2(0, 0.3)}), x,
                             FinslerKind::Busemann) == 0.0);
  const HilbertDomain huge(disk(1e3));
  const double phi0 = huge.density(FinslerKind::Busemann, Vec::Zero());
  CHECK(finsler_surface_area(disk(), huge, FinslerKind::Busemann) ==
        doctest::Approx(std::cbrt(phi0) * 2 * oracle::pi).epsilon(1e-2));
  CHECK_THROWS_AS(finsler_surface_area(disk(1.0), x, FinslerKind::Busemann), Error);
}
