#pragma once

// Closed forms and brute-force integrals used as references. Nothing here
// calls into the library.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// Area of conv({(R,0)} u B(o,1)) minus the unit disk.
inline double disk_cap(double R) { return std::sqrt(R * R - 1.0) - std::acos(1.0 / R); }

/// Inverse of disk_cap by bisection.
inline double disk_radius(double delta) {
  double lo = 1.0;
  double hi = 2.0;
  while (disk_cap(hi) < delta) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (disk_cap(mid) < delta ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double shoelace(const std::vector<Eigen::Vector2d>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % p.size()];
    s += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * std::abs(s);
}

/// Hyperbolic distance between points of the Klein unit disk.
inline double klein_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
  const double c = (1.0 - p.dot(q)) / std::sqrt((1.0 - p.squaredNorm()) * (1.0 - q.squaredNorm()));
  return std::acosh(std::max(1.0, c));
}

/// Spherical excess from the solid-angle formula on unit vectors.
inline double solid_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  Eigen::Matrix3d m;
  m << a, b, c;
  return 2.0 * std::atan2(std::abs(m.determinant()), 1.0 + a.dot(b) + b.dot(c) + c.dot(a));
}

/// Height of the upper half-plane geodesic through a and b at abscissa x, or
/// NaN outside the x-range of the arc.
inline double geodesic_height(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double x) {
  const double lo = std::min(a.x(), b.x());
  const double hi = std::max(a.x(), b.x());
  if (x < lo || x > hi || hi - lo < 1e-14) return std::nan("");
  const double c = (b.squaredNorm() - a.squaredNorm()) / (2.0 * (b.x() - a.x()));
  const double r2 = (a.x() - c) * (a.x() - c) + a.y() * a.y();
  return std::sqrt(std::max(0.0, r2 - (x - c) * (x - c)));
}

/// int int dx dy / y^2 over the geodesic triangle abc, by vertical slices
/// split at the vertex abscissae.
inline double uhp_triangle_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  const Eigen::Vector2d v[3] = {a, b, c};
  std::vector<double> xs = {a.x(), b.x(), c.x()};
  std::sort(xs.begin(), xs.end());
  auto slice = [&](double x) {
    double lo = INFINITY;
    double hi = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double y = geodesic_height(v[i], v[(i + 1) % 3], x);
      if (std::isnan(y)) continue;
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
    return hi > lo ? 1.0 / lo - 1.0 / hi : 0.0;
  };
  double total = 0.0;
  for (int k = 0; k < 2; ++k) {
    if (xs[k + 1] - xs[k] < 1e-15) continue;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(slice, xs[k], xs[k + 1], 20, 1e-13);
  }
  return total;
}

/// Area of the geodesic disk of radius r in the plane of curvature lambda.
inline double space_form_disk_area(double lambda, double r) {
  if (lambda == 0.0) return pi * r * r;
  if (lambda > 0.0) return 2.0 * pi * (1.0 - std::cos(std::sqrt(lambda) * r)) / lambda;
  return 2.0 * pi * (std::cosh(std::sqrt(-lambda) * r) - 1.0) / (-lambda);
}

/// Area of a chart disk of radius rho under (1 + lambda |x|^2)^{-3/2}.
inline double chart_disk_mass(double lambda, double rho) {
  if (lambda == 0.0) return pi * rho * rho;
  return 2.0 * pi * (1.0 - 1.0 / std::sqrt(1.0 + lambda * rho * rho)) / lambda;
}

/// Unit-disk Hilbert (Klein) Busemann density at radius r.
inline double klein_density(double r) { return std::pow(1.0 - r * r, -1.5); }

/// Perimeter of the ellipse with semi-axes a, b by adaptive arc-length quadrature.
inline double ellipse_perimeter(double a, double b) {
  auto f = [&](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 2.0 * pi, 20, 1e-14);
}

}  // namespace oracle
