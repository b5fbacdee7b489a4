#include "oracles.hpp"

#include "illume/appendix.hpp"
#include "illume/illumination.hpp"
#include "illume/projective.hpp"

#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

using namespace illume;

TEST_CASE("wedge radius") {
  const auto w = wedge_illumination_radius(0.5, 0.3, 2);
  CHECK(w.radius == doctest::Approx(0.65).epsilon(1e-15));
  CHECK(w.convex);
  CHECK(wedge_illumination_radius(0.5, 1e-12, 2).radius == doctest::Approx(0.5));
  const double da = w.delta_alpha;
  CHECK(wedge_illumination_radius(0.5, 0.49 * da, 2).convex);
  CHECK_FALSE(wedge_illumination_radius(0.5, 0.51 * da, 2).convex);
  CHECK_THROWS_AS(wedge_illumination_radius(0.5, da, 2), Error);
}

TEST_CASE("wedge cap volumes") {
  const SphericalWedge w(0.5);
  CHECK(w.volume_intrinsic() == doctest::Approx(4 * 0.5).epsilon(1e-6));
  CHECK(w.cap_volume_formula(Vec(1, 0, 0)) == 0.0);
  // Points seen across one face only: region 2 at negative angles, region 3 at positive ones; +-2.4 lie past -q, -p.
  for (double ang : {-2.4, -1.2, -0.9, 0.9, 1.2, 2.4}) {
    const Vec z = Vec(std::cos(ang), std::sin(ang), 0.1).normalized();
    CHECK(w.region(z) == (ang < 0 ? 2 : 3));
    CHECK(std::abs(w.cap_volume_formula(z) - w.cap_volume_intrinsic(z)) <= 1e-4);
  }
  const Vec back = Vec(-1, 0.1, 0.2).normalized();
  CHECK(w.region(back) == 1);
  CHECK(w.cap_volume_formula(back) == doctest::Approx(4 * oracle::pi - 4 * 0.5));
}

TEST_CASE("horoball threshold") {
  const auto h2 = horoball_threshold(2);
  CHECK(h2.direct == doctest::Approx(oracle::pi - 2).epsilon(1e-10));
  CHECK(h2.substituted == doctest::Approx(h2.direct).epsilon(1e-10));
  CHECK(h2.direct < h2.bound);
  const auto h3 = horoball_threshold(3);
  CHECK(std::abs(h3.direct - h3.substituted) <= 1e-8);
  // pi int_0^1 h^{-3} (1 - sqrt(1 - h^2))^2 dh, rewritten without the 0/0 at h = 0.
  boost::math::quadrature::tanh_sinh<double> ts;
  const double ref = oracle::pi * ts.integrate([](double h) {
    const double d = 1 + std::sqrt(1 - h * h);
    return h / (d * d);
  }, 0.0, 1.0);
  CHECK(h3.direct == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("ideal triangle") {
  CHECK(ideal_triangle_level(oracle::pi / 2) == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(ideal_triangle_level(1e-9) == doctest::Approx(0.0));
  CHECK(ideal_triangle_level(oracle::pi - 1e-9) == doctest::Approx(1.0));
  CHECK(ideal_triangle_area() == doctest::Approx(oracle::pi).epsilon(1e-8));
  for (double delta : {0.5, 1.0, 2.0}) {
    const auto chk = ideal_triangle_level_check(delta);
    CHECK(chk.points.size() == 20);
    CHECK(chk.max_error <= 1e-5);
    CHECK(chk.max_angle_error <= 1e-5);
  }
  CHECK(ideal_triangle_cap_volume({0.0, 0.5}) > 0.0);
}

TEST_CASE("spherical square witness") {
  const auto w = spherical_square_witness(1.5);
  CHECK(w.margin >= 1e-4);
  CHECK(w.v_mid > w.v_corner);
  const auto near = spherical_square_witness(1.0001);
  CHECK(near.v_mid < 1e-3);
  CHECK(near.v_corner < 1e-3);
  // Midpoint cap: triangle (r,0), (1,1), (1,-1) under (1 + x^2 + y^2)^{-3/2}.
  const Body sq = Body::polytope(2, {vec2(-1, -1), vec2(1, -1), vec2(1, 1), vec2(-1, 1)});
  CHECK(cap_volume(sq, space_form_density(1, 2), vec2(1.5, 0)) == doctest::Approx(w.v_mid).epsilon(1e-8));
  CHECK(cap_volume(sq, space_form_density(1, 2), vec2(1.5, 1)) == doctest::Approx(w.v_corner).epsilon(1e-8));
}

TEST_CASE("geodesic balls") {
  for (double lambda : {-1.0, 0.0, 1.0}) {
    CAPTURE(lambda);
    const double r = 0.4;
    CHECK(geodesic_ball_cap_volume(lambda, r, r) == doctest::Approx(0.0));
    CHECK(geodesic_ball_cap_volume(lambda, r, 0.9) > geodesic_ball_cap_volume(lambda, r, 0.6));
    // Compare against the chart cap volume of the same disk.
    const SpaceFormChart chart(lambda, 2);
    const double rho = chart.chart_radius(r);
    const double z = chart.chart_radius(0.7);
    const double v = cap_volume(Body::ball(2, Vec::Zero(), rho), space_form_density(lambda, 2), vec2(z, 0));
    CHECK(geodesic_ball_cap_volume(lambda, r, 0.7) == doctest::Approx(v).epsilon(1e-9));
  }
  CHECK(geodesic_ball_cap_volume(0, 1, 2) == doctest::Approx(oracle::disk_cap(2)));
  CHECK(geodesic_ball_saturation(1, 0.4) ==
        doctest::Approx(2 * oracle::pi - oracle::space_form_disk_area(1, 0.4)));
  CHECK_THROWS_AS(geodesic_ball_profile(1, 0.4, geodesic_ball_saturation(1, std::atan(0.4))), Error);

  double previous = 0.3;
  for (double delta : {0.01, 0.05, 0.2}) {
    const auto prof = geodesic_ball_profile(-1, 0.3, delta);
    CHECK(prof.chart_radius > previous);
    CHECK(prof.spread <= 1e-8);
    previous = prof.chart_radius;
  }
}

TEST_CASE("golden suite") {
  const auto cases = run_golden_suite();
  CHECK(cases.size() >= 10);
  for (const auto& c : cases) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
}
