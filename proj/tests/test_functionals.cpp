#include "oracles.hpp"

#include "illume/functionals.hpp"

#include <doctest.h>

using namespace illume;

namespace {

Body disk(double r = 1.0) { return Body::ball(2, Vec::Zero(), r); }
Body square() { return Body::polytope(2, {vec2(-1, -1), vec2(1, -1), vec2(1, 1), vec2(-1, 1)}); }

}  // namespace

TEST_CASE("c_n") {
  CHECK(c_n(2) == doctest::Approx(0.5 * std::pow(3.0, 2.0 / 3.0)));
  CHECK(c_n(2) == doctest::Approx(1.040042).epsilon(1e-6));
  CHECK(c_n(3) == doctest::Approx(0.5 * std::sqrt(12 / oracle::pi)));
  CHECK(c_n(3) == doctest::Approx(0.977205).epsilon(1e-6));
  CHECK(c_n(2) * 2 * oracle::pi == doctest::Approx(oracle::pi * std::pow(3.0, 2.0 / 3.0)));
}

TEST_CASE("weighted limit integral") {
  const Density one = uniform_density(2);
  CHECK(weighted_limit_integral(disk(), one, one) == doctest::Approx(oracle::pi * std::cbrt(9.0)).epsilon(1e-6));
  CHECK(weighted_limit_integral(square(), one, one) == 0.0);
  // H = 1/r and dH = r dt on a circle of radius r.
  CHECK(weighted_limit_integral(disk(2), one, one) == doctest::Approx(c_n(2) * 2 * oracle::pi * std::pow(2.0, 2.0 / 3.0)));
  const Body ball3 = Body::ball(3, Vec::Zero(), 1.0);
  CHECK(weighted_limit_integral(ball3, uniform_density(3), uniform_density(3)) ==
        doctest::Approx(c_n(3) * 4 * oracle::pi).epsilon(1e-8));
}

TEST_CASE("Lp affine surface area") {
  CHECK(affine_surface_area_p(disk(), 1) == doctest::Approx(2 * oracle::pi).epsilon(1e-10));
  CHECK(affine_surface_area_p(square(), 0) == doctest::Approx(8.0).epsilon(1e-10));
  for (double p : {0.5, 2.0, 7.0}) CHECK(affine_surface_area_p(disk(), p) == doctest::Approx(2 * oracle::pi).epsilon(1e-10));
  // as_p(rB) = r^{n(n-p)/(n+p)} as_p(B); for n = 2, p = 1 that is r^{2/3}.
  CHECK(affine_surface_area_p(disk(2), 1) == doctest::Approx(2 * oracle::pi * std::pow(2.0, 2.0 / 3.0)).epsilon(1e-10));
  Mat m = Mat::Identity();
  m(0, 0) = 2.0;
  m(1, 1) = 0.5;
  m(0, 1) = 0.3;
  CHECK(affine_surface_area_p(disk().linear_image(m), 1) == doctest::Approx(2 * oracle::pi).epsilon(1e-6));
}

TEST_CASE("Lp weight and limit") {
  const Density psi = lp_weight(disk(), 1);
  CHECK(psi(vec2(1.1, 0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(lp_weight(square(), 1), Error);
  const auto res = lp_limit_check(disk(), 1, {1e-3, 1e-4, 1e-5}, 128);
  CHECK(res.target == doctest::Approx(oracle::pi * std::cbrt(9.0)).epsilon(1e-6));
  CHECK(res.quotients.back() == doctest::Approx(res.target).epsilon(0.02));
}

TEST_CASE("dual volumes") {
  CHECK(dual_volume(disk(), 2) == doctest::Approx(oracle::pi));
  CHECK(dual_volume(disk(2), -1) == doctest::Approx(oracle::pi / 2));
  CHECK(dual_derivative_integral(disk(), 2) == doctest::Approx(oracle::pi * std::cbrt(9.0)).epsilon(1e-6));
  CHECK(dual_derivative_integral(disk(), 1) == doctest::Approx(oracle::pi * std::cbrt(9.0) / 2).epsilon(1e-6));
  CHECK(dual_derivative_integral(square(), 1) == 0.0);
}
