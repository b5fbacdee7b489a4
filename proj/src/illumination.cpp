#include "illume/illumination.hpp"

#include "illume/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace illume {

namespace {

int default_resolution(int dim, int requested) {
  if (requested > 0) return requested;
  return dim == 2 ? 256 : 48;
}

double cross2(const Vec& a, const Vec& b) { return a.x() * b.y() - a.y() * b.x(); }

double side_sum(const std::vector<BoundaryPoint>& nodes, const Density& phi, const Vec& z, int n, double tol) {
  CompensatedSum sum;
  for (const BoundaryPoint& bp : nodes) {
    const double h = std::abs((z - bp.x).dot(bp.normal));
    if (h == 0.0) continue;
    sum += bp.weight * h * segment_moment(phi, z, bp.x, n - 1, tol);
  }
  return sum.value();
}

CapEstimate monte_carlo_hull(const Body& body, const Density& phi, const Vec& z, const CapOptions& opts) {
  const int n = body.dim();
  auto [lo, hi] = body.bounding_box();
  lo = lo.cwiseMin(z);
  hi = hi.cwiseMax(z);
  double box = 1.0;
  for (int k = 0; k < n; ++k) box *= hi(k) - lo(k);
  const std::uint64_t N = std::max<std::uint64_t>(1, opts.samples);
  std::vector<double> values(N);
  parallel_for(N, [&](std::size_t i) {
    Vec y = Vec::Zero();
    for (int k = 0; k < n; ++k) {
      y(k) = lo(k) + (hi(k) - lo(k)) * counter_uniform(opts.seed, i, static_cast<std::uint32_t>(k + 16));
    }
    values[i] = 0.0;
    if (body.contains(y)) return;
    const auto c = body.chord(z, y - z);
    if (c && c->t_out >= 1.0) values[i] = phi(y);
  });
  CompensatedSum s1;
  CompensatedSum s2;
  for (double v : values) {
    s1 += v;
    s2 += v * v;
  }
  const double mean = s1.value() / static_cast<double>(N);
  const double var = std::max(0.0, s2.value() / static_cast<double>(N) - mean * mean);
  return {box * mean, box * std::sqrt(var / static_cast<double>(N))};
}

}  // namespace

const char* to_string(RadiusFlag flag) {
  switch (flag) {
    case RadiusFlag::Finite: return "finite";
    case RadiusFlag::Unbounded: return "unbounded";
    case RadiusFlag::ChartOverflow: return "chart-overflow";
  }
  return "unknown";
}

CapEstimate cap_volume_estimate(const Body& body, const Density& phi, const Vec& z, const CapOptions& opts) {
  if (phi.dim() != body.dim()) throw Error(ErrorCode::InvalidParameter, "density and body dimensions differ");
  if (body.contains(z)) return {};
  const int n = body.dim();
  const int res = default_resolution(n, opts.resolution);
  switch (opts.method) {
    case CapMethod::FrontsideIntegral:
      return {side_sum(body.sample_side(z, Side::Front, res), phi, z, n, opts.inner_tol), 0.0};
    case CapMethod::BoundaryIntegral: {
      const double front = side_sum(body.sample_side(z, Side::Front, res), phi, z, n, opts.inner_tol);
      const double back = side_sum(body.sample_side(z, Side::Back, res), phi, z, n, opts.inner_tol);
      QuadratureSpec spec;
      spec.resolution = res;
      spec.target_tol = opts.inner_tol;
      const double vol = weighted_volume(body, phi, spec).value;
      return {std::max(0.0, -0.5 * vol + 0.5 * (front + back)), 0.0};
    }
    case CapMethod::MonteCarloHull: return monte_carlo_hull(body, phi, z, opts);
  }
  return {};
}

double cap_volume(const Body& body, const Density& phi, const Vec& z, const CapOptions& opts) {
  return cap_volume_estimate(body, phi, z, opts).value;
}

double uniform_cap_volume(const Body& body, const Vec& z, int resolution) {
  if (body.contains(z)) return 0.0;
  const int n = body.dim();
  const int res = default_resolution(n, resolution);
  CompensatedSum sum;
  for (Side side : {Side::Front, Side::Back}) {
    for (const BoundaryPoint& bp : body.sample_side(z, side, res)) sum += bp.weight * std::abs((z - bp.x).dot(bp.normal));
  }
  return std::max(0.0, -0.5 * body.volume() + sum.value() / (2.0 * n));
}

double ray_limit_mass(const Body& body, const Density& phi, const Vec& u, int resolution) {
  const int n = body.dim();
  const Vec d = u.normalized();
  const Vec far = body.interior_point() + 1e9 * body.diameter() * d;
  const double reach = 1e12 * body.diameter();
  CompensatedSum sum;
  for (const BoundaryPoint& bp : body.sample_side(far, Side::Front, default_resolution(n, resolution))) {
    const double c = d.dot(bp.normal);
    if (c <= 0.0) continue;
    const auto range = phi.domain().clip(bp.x, d, 0.0, reach);
    if (!range) continue;
    double len = 0.0;
    if (const auto k = phi.constant()) {
      len = *k * (range->t_out - range->t_in);
    } else {
      // Stop just short of the domain boundary, where chart densities blow up.
      const double t1 = range->t_out - 1e-9 * (range->t_out - range->t_in);
      try {
        len = integrate_adaptive([&](double s) { return phi.raw(bp.x + s * d); }, range->t_in, t1, 1e-10);
      } catch (const std::exception&) {
        len = std::numeric_limits<double>::infinity();
      }
    }
    sum += bp.weight * c * len;
  }
  return sum.value();
}

RadiusResult illumination_radius(const Body& body, const Density& phi, double delta, const Vec& u,
                                 const RadiusOptions& opts) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidParameter, "delta must be positive");
  if (!body.origin_interior()) throw Error(ErrorCode::OriginNotInterior, "illumination radius needs o in int K");
  const Vec d = u.normalized();
  const double t0 = body.radial(d);
  const double diam = body.diameter();
  RadiusResult res;
  auto V = [&](double t) {
    ++res.evaluations;
    return cap_volume(body, phi, t * d, opts.cap);
  };
  double t_cap = t0 + opts.r_max_factor * diam;
  const double margin = 1e-6 * delta;
  // For a bounded density domain the ray mass is only needed when no bracket
  // exists up to the exit point of the domain.
  bool mass_pending = false;
  double t_lim = t_cap;
  if (const auto cutoff = phi.chart_cutoff()) {
    t_cap = std::max(t0, *cutoff);
    t_lim = t_cap;
    const double M = V(t_cap);
    res.ray_mass = M;
    if (M < delta) {
      res.flag = RadiusFlag::ChartOverflow;
      res.rho = t_cap;
      return res;
    }
  } else if (phi.domain().bounded()) {
    mass_pending = true;
    if (const auto c = phi.domain().clip(Vec::Zero(), d, 0.0, t_cap)) t_lim = std::max(t0, std::min(c->t_out, t_cap));
  } else {
    const double M = V(t_cap);
    res.ray_mass = M;
    if (M <= delta) {
      res.flag = RadiusFlag::Unbounded;
      res.rho = std::numeric_limits<double>::infinity();
      return res;
    }
  }

  // Exponential bracket search from the boundary of K.
  double a = t0;
  double fa = -delta;
  double step = 0.1 * diam;
  double b = std::min(t0 + step, t_lim);
  double fb = b > t0 ? V(b) - delta : -delta;
  while (fb < 0.0) {
    if (b >= t_lim && mass_pending) {
      mass_pending = false;
      const double M = ray_limit_mass(body, phi, d, opts.cap.resolution);
      res.ray_mass = M;
      if (M <= delta) {
        res.flag = RadiusFlag::Unbounded;
        res.rho = std::numeric_limits<double>::infinity();
        res.near_threshold = M >= delta - margin;
        return res;
      }
      res.near_threshold = M <= delta + margin;
      t_lim = t_cap;
    }
    if (b >= t_lim) {
      res.flag = res.near_threshold ? RadiusFlag::Finite : RadiusFlag::Unbounded;
      res.rho = res.near_threshold ? t_cap : std::numeric_limits<double>::infinity();
      res.near_threshold = true;
      return res;
    }
    a = b;
    fa = fb;
    step *= 2.0;
    b = std::min(t0 + step, t_lim);
    fb = V(b) - delta;
  }
  if (std::abs(fb) <= opts.tol * delta) {
    res.rho = b;
    return res;
  }
  // Illinois-modified regula falsi with a bisection guard.
  int last = 0;
  for (int it = 0; it < 300; ++it) {
    double c = (a * fb - b * fa) / (fb - fa);
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    const double fc = V(c) - delta;
    if (std::abs(fc) <= opts.tol * delta || b - a <= 4e-16 * b) {
      res.rho = c;
      return res;
    }
    if (fc < 0.0) {
      a = c;
      fa = fc;
      if (last == -1) fb *= 0.5;
      last = -1;
    } else {
      b = c;
      fb = fc;
      if (last == 1) fa *= 0.5;
      last = 1;
    }
  }
  throw Error(ErrorCode::NumericalFailure, "illumination radius did not converge");
}

bool RadialProfile::all_finite() const {
  return std::all_of(flags.begin(), flags.end(), [](RadiusFlag f) { return f == RadiusFlag::Finite; });
}

double RadialProfile::mesh_radial(const Vec& u) const {
  const Vec d = u.normalized();
  if (grid.scheme() == GridScheme::UniformAngle) {
    const std::size_t m = grid.size();
    double t = std::atan2(d.y(), d.x());
    if (t < 0.0) t += 2.0 * kPi;
    const std::size_t i = static_cast<std::size_t>(std::floor(t / (2.0 * kPi) * m)) % m;
    const std::size_t j = (i + 1) % m;
    const Vec P = rho[i] * grid.unit(i);
    const Vec D = rho[j] * grid.unit(j) - P;
    return cross2(P, D) / cross2(d, D);
  }
  const auto [k, lam] = grid.locate(d);
  const auto& tri = grid.triangles()[k];
  const Vec A = rho[tri[0]] * grid.unit(tri[0]);
  const Vec B = rho[tri[1]] * grid.unit(tri[1]);
  const Vec C = rho[tri[2]] * grid.unit(tri[2]);
  const Vec N = (B - A).cross(C - A);
  return N.dot(A) / N.dot(d);
}

RadialProfile illumination_body(const Body& body, const Density& phi, double delta, const DirectionGrid& grid,
                                const RadiusOptions& opts) {
  if (grid.dim() != body.dim()) throw Error(ErrorCode::InvalidParameter, "grid and body dimensions differ");
  if (!body.origin_interior()) throw Error(ErrorCode::OriginNotInterior, "illumination body needs o in int K");
  RadialProfile p{grid, std::vector<double>(grid.size()), std::vector<RadiusFlag>(grid.size()),
                  std::vector<bool>(grid.size()), delta, body.kind(), phi.label()};
  parallel_for(grid.size(), [&](std::size_t i) {
    const RadiusResult r = illumination_radius(body, phi, delta, grid.unit(i), opts);
    p.rho[i] = r.rho;
    p.flags[i] = r.flag;
    p.warnings[i] = r.near_threshold;
  });
  return p;
}

ConvexityReport convexity_check(const RadialProfile& profile, double rel_tol) {
  if (!profile.all_finite()) throw Error(ErrorCode::ProfileUnbounded, "convexity check needs a finite profile");
  const std::size_t m = profile.grid.size();
  std::vector<Vec> pts(m);
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    pts[i] = profile.rho[i] * profile.grid.unit(i);
    scale = std::max(scale, profile.rho[i]);
  }
  ConvexityReport report;
  report.margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Vec mid = 0.5 * (pts[i] + pts[j]);
      const double r = mid.norm();
      if (r <= 1e-12 * scale) continue;
      const double margin = r - profile.mesh_radial(mid);
      if (margin > report.margin) {
        report.margin = margin;
        report.i = static_cast<int>(i);
        report.j = static_cast<int>(j);
        report.midpoint = mid;
      }
    }
  }
  report.convex = report.margin <= rel_tol * scale;
  return report;
}

double weighted_volume_difference(const Body& body, const RadialProfile& profile, const Density& psi, int resolution) {
  if (!profile.all_finite()) throw Error(ErrorCode::ProfileUnbounded, "profile has unbounded directions");
  if (!body.origin_interior()) throw Error(ErrorCode::OriginNotInterior, "shell integral needs o in int K");
  const int n = body.dim();
  std::vector<double> gap(profile.grid.size());
  for (std::size_t i = 0; i < gap.size(); ++i) gap[i] = profile.rho[i] - body.radial(profile.grid.unit(i));
  const int res = resolution > 0 ? resolution : (n == 2 ? 1024 : 64);
  const auto nodes = body.sample_boundary(res);
  std::vector<double> terms(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t k) {
    const BoundaryPoint& bp = nodes[k];
    const double r = bp.x.norm();
    const Vec d = bp.x / r;
    const double outer = r + profile.grid.interpolate(gap, d);
    double shell = 0.0;
    if (outer > r) {
      if (const auto c = psi.constant(); c && !psi.domain().bounded()) {
        shell = *c * (std::pow(outer, n) - std::pow(r, n)) / n;
      } else if (const auto range = psi.domain().clip(Vec::Zero(), d, r, outer)) {
        // Shells are thin and the integrand smooth: fixed Gauss-Legendre panels of width <= 5% of r.
        const double width = range->t_out - range->t_in;
        const int panels = std::max(1, static_cast<int>(std::ceil(width / (0.05 * r))));
        shell = integrate_composite([&](double t) { return psi.raw(t * d) * std::pow(t, n - 1); }, range->t_in,
                                    range->t_out, 16, panels);
      }
    }
    terms[k] = bp.weight * bp.x.dot(bp.normal) / std::pow(r, n) * shell;
  });
  CompensatedSum sum;
  for (double t : terms) sum += t;
  return sum.value();
}

}  // namespace illume
