#include "illume/functionals.hpp"

#include "illume/quadrature.hpp"

#include <cmath>
#include <limits>

namespace illume {

namespace {

int default_resolution(int dim) { return dim == 2 ? 1024 : 64; }

struct Projection {
  Vec x;
  Vec normal;
};

// Nearest boundary point of a ball or ellipsoid.
Projection project_to_boundary(const Body& body, const Vec& p) {
  const int n = body.dim();
  if (const auto* b = std::get_if<Ball>(&body.shape())) {
    Vec d = p - b->center;
    if (n == 2) d.z() = 0.0;
    if (d.norm() == 0.0) d = Vec::UnitX();
    d.normalize();
    return {b->center + b->radius * d, d};
  }
  const auto& e = std::get<Ellipsoid>(body.shape());
  const Vec y = e.rotation.transpose() * (p - e.center);
  const Vec a = e.semi_axes;
  double amin = a(0);
  for (int i = 1; i < n; ++i) amin = std::min(amin, a(i));
  auto g = [&](double t) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = a(i) * y(i) / (t + a(i) * a(i));
      s += v * v;
    }
    return s - 1.0;
  };
  double lo = -amin * amin * (1.0 - 1e-15);
  double hi = a.head(n).maxCoeff() * std::max(y.head(n).norm(), 1e-300);
  double t = lo;
  if (g(lo) > 0.0) {
    for (int it = 0; it < 200 && hi - lo > 1e-16 * (std::abs(hi) + std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) > 0.0 ? lo : hi) = mid;
    }
    t = 0.5 * (lo + hi);
  }
  Vec xl = Vec::Zero();
  Vec nl = Vec::Zero();
  for (int i = 0; i < n; ++i) {
    xl(i) = a(i) * a(i) * y(i) / (t + a(i) * a(i));
    nl(i) = xl(i) / (a(i) * a(i));
  }
  if (nl.norm() == 0.0) {
    xl = Vec::Zero();
    nl = Vec::Zero();
    int k = 0;
    for (int i = 1; i < n; ++i) {
      if (a(i) < a(k)) k = i;
    }
    xl(k) = a(k);
    nl(k) = 1.0;
  }
  // Rescale onto the surface to remove bisection residue.
  double q = 0.0;
  for (int i = 0; i < n; ++i) q += (xl(i) / a(i)) * (xl(i) / a(i));
  xl /= std::sqrt(q);
  return {e.center + e.rotation * xl, (e.rotation * nl).normalized()};
}

}  // namespace

double c_n(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "c_n needs n >= 2");
  return 0.5 * std::pow(n * (n + 1.0) / unit_ball_volume(n - 1), 2.0 / (n + 1));
}

double weighted_limit_integral(const Body& body, const Density& phi, const Density& psi, int resolution) {
  const int n = body.dim();
  const auto nodes = body.sample_boundary(resolution > 0 ? resolution : default_resolution(n));
  std::vector<double> terms(nodes.size(), 0.0);
  parallel_for(nodes.size(), [&](std::size_t i) {
    const double H = nodes[i].curvature.value_or(0.0);
    if (H <= 0.0) return;
    terms[i] = nodes[i].weight * std::pow(H, 1.0 / (n + 1)) * std::pow(phi(nodes[i].x), -2.0 / (n + 1)) *
               psi(nodes[i].x);
  });
  CompensatedSum sum;
  for (double t : terms) sum += t;
  return c_n(n) * sum.value();
}

double affine_surface_area_p(const Body& body, double p, int resolution) {
  const int n = body.dim();
  if (p == -n) throw Error(ErrorCode::InvalidParameter, "p = -n is excluded");
  if (!body.origin_interior()) throw Error(ErrorCode::OriginNotInterior, "o must be interior");
  const double e = p / (n + p);
  CompensatedSum sum;
  for (const BoundaryPoint& bp : body.sample_boundary(resolution > 0 ? resolution : default_resolution(n))) {
    if (!bp.curvature) continue;
    const double h = bp.x.dot(bp.normal);
    const double H = *bp.curvature;
    double f;
    if (H > 0.0) {
      f = std::pow(H / std::pow(h, n + 1), e);
    } else if (e > 0.0) {
      f = 0.0;
    } else if (e == 0.0) {
      f = 1.0;
    } else {
      return std::numeric_limits<double>::infinity();
    }
    sum += bp.weight * f * h;
  }
  return sum.value();
}

Density lp_weight(const Body& body, double p) {
  const int n = body.dim();
  if (p == -n) throw Error(ErrorCode::InvalidParameter, "p = -n is excluded");
  if (!std::holds_alternative<Ball>(body.shape()) && !std::holds_alternative<Ellipsoid>(body.shape())) {
    throw Error(ErrorCode::UnsupportedBody, "the L_p limit check needs a ball or an ellipsoid");
  }
  if (!body.origin_interior()) throw Error(ErrorCode::OriginNotInterior, "o must be interior");
  const double eh = p / (n + p) - 1.0 / (n + 1);
  const double ex = -n * (p - 1.0) / (n + p);
  auto shared = std::make_shared<const Body>(body);
  Density::Field f = [shared, eh, ex](const Vec& x) {
    const Projection pr = project_to_boundary(*shared, x);
    const double H = shared->gauss_kronecker(pr.x).value_or(0.0);
    return std::pow(H, eh) * std::pow(pr.x.dot(pr.normal), ex);
  };
  return Density(n, Domain::all(n), f, "lp(" + std::to_string(p) + ")", std::nullopt, 0);
}

LpLimitResult lp_limit_check(const Body& body, double p, const std::vector<double>& deltas, int grid_size) {
  const int n = body.dim();
  const Density psi = lp_weight(body, p);
  const Density phi = uniform_density(n);
  LpLimitResult out;
  out.p = p;
  out.deltas = deltas;
  out.target = c_n(n) * affine_surface_area_p(body, p);
  const DirectionGrid grid =
      n == 2 ? DirectionGrid::uniform_angle(grid_size > 0 ? grid_size : 256) : DirectionGrid::icosphere(grid_size > 0 ? grid_size : 3);
  for (double delta : deltas) {
    const RadialProfile prof = illumination_body(body, phi, delta, grid);
    out.quotients.push_back(weighted_volume_difference(body, prof, psi) / std::pow(delta, 2.0 / (n + 1)));
  }
  return out;
}

double dual_volume(const RadialProfile& profile, double q) {
  if (q == 0.0) throw Error(ErrorCode::InvalidParameter, "q must be nonzero");
  if (!profile.all_finite()) throw Error(ErrorCode::ProfileUnbounded, "profile has unbounded directions");
  const int n = profile.grid.dim();
  CompensatedSum sum;
  for (std::size_t i = 0; i < profile.grid.size(); ++i) sum += profile.grid.weights()[i] * std::pow(profile.rho[i], q);
  return sum.value() / n;
}

double dual_volume(const Body& body, double q, int resolution) {
  if (q == 0.0) throw Error(ErrorCode::InvalidParameter, "q must be nonzero");
  const int n = body.dim();
  const DirectionGrid grid = n == 2 ? DirectionGrid::uniform_angle(resolution > 0 ? resolution : 4096)
                                    : DirectionGrid::icosphere(resolution > 0 ? resolution : 5);
  CompensatedSum sum;
  for (std::size_t i = 0; i < grid.size(); ++i) sum += grid.weights()[i] * std::pow(body.radial(grid.unit(i)), q);
  return sum.value() / n;
}

double dual_derivative_integral(const Body& body, double q, int resolution) {
  if (q == 0.0) throw Error(ErrorCode::InvalidParameter, "q must be nonzero");
  if (!body.origin_interior()) throw Error(ErrorCode::OriginNotInterior, "o must be interior");
  const int n = body.dim();
  CompensatedSum sum;
  for (const BoundaryPoint& bp : body.sample_boundary(resolution > 0 ? resolution : default_resolution(n))) {
    const double H = bp.curvature.value_or(0.0);
    if (H <= 0.0) continue;
    sum += bp.weight * std::pow(H, 1.0 / (n + 1)) * std::pow(bp.x.norm(), q - n);
  }
  return c_n(n) * q / n * sum.value();
}

}  // namespace illume
