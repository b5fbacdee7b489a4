#include "illume/projective.hpp"

#include "illume/quadrature.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <unordered_map>

namespace illume {

namespace {

int default_resolution(int dim) { return dim == 2 ? 1024 : 64; }

double golden_max(const std::function<double(double)>& f, double a, double b, int iters = 60) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-14; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::max(fc, fd);
}

// Minimal Nelder-Mead on R^2.
std::array<double, 2> nelder_mead(const std::function<double(const std::array<double, 2>&)>& f,
                                  std::array<double, 2> x0, double step, int iters = 400) {
  using P = std::array<double, 2>;
  std::array<P, 3> s{x0, P{x0[0] + step, x0[1]}, P{x0[0], x0[1] + step}};
  std::array<double, 3> v{f(s[0]), f(s[1]), f(s[2])};
  auto lerp = [](const P& a, const P& b, double t) { return P{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])}; };
  for (int it = 0; it < iters; ++it) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
    const int lo = idx[0], mid = idx[1], hi = idx[2];
    if (std::abs(v[hi] - v[lo]) <= 1e-15 * (std::abs(v[lo]) + 1e-300) &&
        std::hypot(s[hi][0] - s[lo][0], s[hi][1] - s[lo][1]) < 1e-12) {
      break;
    }
    const P c{0.5 * (s[lo][0] + s[mid][0]), 0.5 * (s[lo][1] + s[mid][1])};
    const P r = lerp(s[hi], c, 2.0);
    const double fr = f(r);
    if (fr < v[lo]) {
      const P e = lerp(s[hi], c, 3.0);
      const double fe = f(e);
      if (fe < fr) {
        s[hi] = e;
        v[hi] = fe;
      } else {
        s[hi] = r;
        v[hi] = fr;
      }
    } else if (fr < v[mid]) {
      s[hi] = r;
      v[hi] = fr;
    } else {
      const P k = fr < v[hi] ? lerp(s[hi], c, 1.5) : lerp(s[hi], c, 0.5);
      const double fk = f(k);
      if (fk < std::min(fr, v[hi])) {
        s[hi] = k;
        v[hi] = fk;
      } else {
        for (int j : {mid, hi}) {
          s[j] = lerp(s[lo], s[j], 0.5);
          v[j] = f(s[j]);
        }
      }
    }
  }
  int best = 0;
  for (int j = 1; j < 3; ++j) {
    if (v[j] < v[best]) best = j;
  }
  return s[best];
}

struct KeyHash {
  std::size_t operator()(const std::array<std::uint64_t, 3>& k) const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : k) h = (h ^ w) * 1099511628211ull ^ (w >> 29);
    return h;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Space-form chart

SpaceFormChart::SpaceFormChart(double lambda, int dim) : lambda_(lambda), dim_(dim) {
  if (!std::isfinite(lambda)) throw Error(ErrorCode::InvalidParameter, "curvature must be finite");
  if (dim != 2 && dim != 3) throw Error(ErrorCode::UnsupportedDimension, "chart dimension must be 2 or 3");
}

double SpaceFormChart::model_radius() const {
  return lambda_ < 0.0 ? 1.0 / std::sqrt(-lambda_) : std::numeric_limits<double>::infinity();
}

bool SpaceFormChart::contains(const Vec& x) const { return x.head(dim_).norm() < model_radius(); }

void SpaceFormChart::require_inside(const Body& body) const {
  if (body.dim() != dim_) throw Error(ErrorCode::InvalidParameter, "body and chart dimensions differ");
  if (lambda_ >= 0.0) return;
  const double R = model_radius();
  double reach = 0.0;
  if (dim_ == 2) {
    for (const Vec& u : DirectionGrid::uniform_angle(720).units()) reach = std::max(reach, body.support(u));
  } else {
    for (const Vec& u : DirectionGrid::icosphere(4).units()) reach = std::max(reach, body.support(u));
  }
  if (!(reach < R * (1.0 - 1e-9))) throw Error(ErrorCode::OutOfChart, "body is not inside the hyperbolic chart");
}

Density SpaceFormChart::density(double chart_cutoff) const { return space_form_density(lambda_, dim_, chart_cutoff); }

double SpaceFormChart::boundary_measure_factor(const Vec& x, const Vec& normal) const {
  if (!contains(x)) throw Error(ErrorCode::OutOfChart, "point outside the chart");
  const double nx = normal.dot(x);
  return std::sqrt((1.0 + lambda_ * nx * nx) / std::pow(1.0 + lambda_ * x.squaredNorm(), dim_));
}

double SpaceFormChart::curvature_transform(const Vec& x, const Vec& normal, double h_euclid) const {
  if (!contains(x)) throw Error(ErrorCode::OutOfChart, "point outside the chart");
  const double nx = normal.dot(x);
  return h_euclid * std::pow((1.0 + lambda_ * x.squaredNorm()) / (1.0 + lambda_ * nx * nx), 0.5 * (dim_ + 1));
}

double SpaceFormChart::intrinsic_radius(double rho) const {
  if (rho < 0.0) throw Error(ErrorCode::InvalidParameter, "radius must be nonnegative");
  if (lambda_ == 0.0) return rho;
  if (lambda_ > 0.0) {
    const double s = std::sqrt(lambda_);
    return std::atan(s * rho) / s;
  }
  const double s = std::sqrt(-lambda_);
  if (!(s * rho < 1.0)) throw Error(ErrorCode::OutOfChart, "radius outside the chart");
  return std::atanh(s * rho) / s;
}

double SpaceFormChart::chart_radius(double r) const {
  if (r < 0.0) throw Error(ErrorCode::InvalidParameter, "radius must be nonnegative");
  if (lambda_ == 0.0) return r;
  if (lambda_ > 0.0) {
    const double s = std::sqrt(lambda_);
    if (!(s * r < 0.5 * kPi)) throw Error(ErrorCode::OutOfChart, "distance reaches the chart horizon");
    return std::tan(s * r) / s;
  }
  const double s = std::sqrt(-lambda_);
  return std::tanh(s * r) / s;
}

double floating_area(const Body& body, const SpaceFormChart& chart, int resolution) {
  chart.require_inside(body);
  const int n = chart.dim();
  const Density phi = chart.density();
  CompensatedSum sum;
  for (const BoundaryPoint& bp : body.sample_boundary(resolution > 0 ? resolution : default_resolution(n))) {
    const double H = bp.curvature.value_or(0.0);
    if (H <= 0.0) continue;
    sum += bp.weight * std::pow(H, 1.0 / (n + 1)) * std::pow(phi.raw(bp.x), double(n - 1) / (n + 1));
  }
  return sum.value();
}

double floating_area_factored(const Body& body, const SpaceFormChart& chart, int resolution) {
  chart.require_inside(body);
  const int n = chart.dim();
  CompensatedSum sum;
  for (const BoundaryPoint& bp : body.sample_boundary(resolution > 0 ? resolution : default_resolution(n))) {
    const double H = bp.curvature.value_or(0.0);
    if (H <= 0.0) continue;
    const double h_int = chart.curvature_transform(bp.x, bp.normal, H);
    sum += bp.weight * chart.boundary_measure_factor(bp.x, bp.normal) * std::pow(h_int, 1.0 / (n + 1));
  }
  return sum.value();
}

// ---------------------------------------------------------------------------
// Triangles

double spherical_excess(const Vec& A, const Vec& B, const Vec& C) {
  for (const Vec* v : {&A, &B, &C}) {
    if (std::abs(v->norm() - 1.0) > 1e-9) throw Error(ErrorCode::InvalidParameter, "vertices must be unit vectors");
  }
  const double det = std::abs(A.dot(B.cross(C)));
  const double den = 1.0 + A.dot(B) + B.dot(C) + C.dot(A);
  if (det < 1e-15 && den <= 1e-15) throw Error(ErrorCode::DegenerateTriangle, "triangle area is undefined");
  return 2.0 * std::atan2(det, den);
}

SphericalTriangleProfile::SphericalTriangleProfile(double phi, double theta) : phi_(phi), theta_(theta) {
  if (!(phi > 0.0 && phi < 0.5 * kPi)) throw Error(ErrorCode::InvalidParameter, "phi must lie in (0, pi/2)");
  if (!(theta > 0.0 && theta < kPi - phi)) throw Error(ErrorCode::InvalidParameter, "theta must lie in (0, pi - phi)");
}

double SphericalTriangleProfile::operator()(double t) const {
  const double num = std::sin(phi_) * std::sin(theta_) * std::cos(t);
  const double den = std::cos(phi_) + std::cos(theta_) * std::cos(t);
  return 2.0 * std::atan2(std::abs(num), den);
}

Vec SphericalTriangleProfile::p() const {
  return {std::cos(theta_) * std::cos(phi_), std::sin(phi_), std::sin(theta_) * std::cos(phi_)};
}

Vec SphericalTriangleProfile::q() const {
  return {std::cos(theta_) * std::cos(phi_), -std::sin(phi_), std::sin(theta_) * std::cos(phi_)};
}

Vec SphericalTriangleProfile::gamma(double t) const { return {std::cos(t), std::sin(t), 0.0}; }

bool SphericalTriangleProfile::strict_local_max_at_zero(double h0, int levels) const {
  const double a0 = at_zero();
  double h = h0;
  for (int k = 0; k < levels; ++k, h *= 0.5) {
    if (!((*this)(h) < a0 && (*this)(-h) < a0)) return false;
  }
  return true;
}

HyperbolicTriangleTau::HyperbolicTriangleTau(double x1, double y1, double x0) : x1_(x1), y1_(y1), x0_(x0) {
  if (!(y1 > 0.0)) throw Error(ErrorCode::InvalidParameter, "p must lie in the upper half-plane");
}

double HyperbolicTriangleTau::alpha(double s) const {
  return x1_ * (x0_ * x0_ + 1.0) - x0_ * (x1_ * x1_ + y1_ * y1_) + (x0_ - x1_) * s * s;
}

double HyperbolicTriangleTau::beta(double s) const {
  const double c = (x0_ - x1_) * (x0_ - x1_) + (1.0 + y1_) * (1.0 + y1_);
  return y1_ * (x0_ * x0_ + 1.0) + x1_ * x1_ + y1_ * y1_ + c * s + (1.0 + y1_) * s * s;
}

double HyperbolicTriangleTau::mu(double s) const {
  return (x0_ - x1_) * s * s + 2.0 * (x0_ * y1_ - x1_) * s - x1_ * (x0_ * x0_ + 1.0) + x0_ * (x1_ * x1_ + y1_ * y1_);
}

double HyperbolicTriangleTau::tau_prime(double s) const {
  const double c = (x0_ - x1_) * (x0_ - x1_) + (1.0 + y1_) * (1.0 + y1_);
  const double b = beta(s);
  return c * mu(s) / (b * b);
}

double HyperbolicTriangleTau::tau_second(double s) const {
  const double c = (x0_ - x1_) * (x0_ - x1_) + (1.0 + y1_) * (1.0 + y1_);
  const double dmu = 2.0 * (x0_ - x1_) * s + 2.0 * (x0_ * y1_ - x1_);
  const double dbeta = c + 2.0 * (1.0 + y1_) * s;
  const double b = beta(s);
  return c * (dmu * b - 2.0 * mu(s) * dbeta) / (b * b * b);
}

double HyperbolicTriangleTau::area(double t) const { return 2.0 * std::atan(std::abs(tau(std::exp(t)))); }

std::vector<double> HyperbolicTriangleTau::mu_roots() const {
  const double a = x0_ - x1_;
  const double b = 2.0 * (x0_ * y1_ - x1_);
  const double c = -x1_ * (x0_ * x0_ + 1.0) + x0_ * (x1_ * x1_ + y1_ * y1_);
  std::vector<double> roots;
  if (a == 0.0) {
    if (b != 0.0) roots.push_back(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      if (q != 0.0) {
        roots.push_back(q / a);
        roots.push_back(c / q);
      } else {
        roots.push_back(0.0);
      }
    }
  }
  std::vector<double> positive;
  for (double r : roots) {
    if (r > 0.0) positive.push_back(r);
  }
  std::sort(positive.begin(), positive.end());
  return positive;
}

bool HyperbolicTriangleTau::no_local_max(double t0, double t1, int samples) const {
  if (samples < 3 || !(t1 > t0)) throw Error(ErrorCode::InvalidParameter, "bad scan range");
  std::vector<double> a(samples);
  for (int i = 0; i < samples; ++i) a[i] = area(t0 + (t1 - t0) * i / (samples - 1));
  for (int i = 1; i + 1 < samples; ++i) {
    const double eps = 1e-13 * std::max(1.0, std::abs(a[i]));
    if (a[i] > a[i - 1] + eps && a[i] > a[i + 1] + eps) return false;
  }
  return true;
}

HullScan hull_volume_along_geodesic(const Body& body, const Density& phi, const Vec& a, const Vec& b,
                                    const std::vector<double>& ts, const CapOptions& opts) {
  HullScan out;
  out.t = ts;
  out.values.resize(ts.size());
  for (double t : ts) {
    const Vec z = (1.0 - t) * a + t * b;
    if (body.contains(z)) throw Error(ErrorCode::GeodesicMeetsBody, "the geodesic meets the body");
  }
  QuadratureSpec spec;
  spec.resolution = body.dim() == 2 ? 1024 : 64;
  const double base = weighted_volume(body, phi, spec).value;
  parallel_for(ts.size(), [&](std::size_t i) {
    const Vec z = (1.0 - ts[i]) * a + ts[i] * b;
    out.values[i] = base + cap_volume(body, phi, z, opts);
  });
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    if (out.values[i] > out.values[i - 1] && out.values[i] > out.values[i + 1]) {
      out.local_maxima.push_back(static_cast<int>(i));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hilbert geometry

const char* to_string(FinslerKind kind) {
  switch (kind) {
    case FinslerKind::Busemann: return "busemann";
    case FinslerKind::HolmesThompson: return "holmes-thompson";
    case FinslerKind::GromovMass: return "gromov-mass";
    case FinslerKind::GromovComass: return "gromov-comass";
  }
  return "?";
}

FinslerKind finsler_kind_from_string(const std::string& name) {
  for (FinslerKind k : {FinslerKind::Busemann, FinslerKind::HolmesThompson, FinslerKind::GromovMass,
                        FinslerKind::GromovComass}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown Finsler volume '" + name + "'");
}

HilbertDomain::HilbertDomain(Body domain, int directions)
    : body_(std::make_shared<const Body>(std::move(domain))),
      directions_(directions),
      grid_(body_->dim() == 2 ? DirectionGrid::uniform_angle(directions) : DirectionGrid::icosphere(3)) {
  if (directions < 8) throw Error(ErrorCode::InvalidParameter, "too few directions");
}

void HilbertDomain::require_interior(const Vec& p) const {
  if (!body_->contains(p)) throw Error(ErrorCode::InvalidParameter, "point lies outside the Hilbert domain");
  if (!body_->contains_strict(p)) throw Error(ErrorCode::PointOnBoundary, "point lies on the boundary");
}

std::pair<double, double> HilbertDomain::exit_parameters(const Vec& p, const Vec& v) const {
  const auto c = body_->chord(p, v);
  if (!c || !(c->t_out > 0.0) || !(c->t_in < 0.0)) throw Error(ErrorCode::PointOnBoundary, "point is not interior");
  return {c->t_out, -c->t_in};
}

double HilbertDomain::norm(const Vec& p, const Vec& v) const {
  if (v.squaredNorm() == 0.0) return 0.0;
  const auto [tp, tm] = exit_parameters(p, v);
  return 0.5 * (1.0 / tp + 1.0 / tm);
}

double HilbertDomain::distance(const Vec& p, const Vec& q) const {
  require_interior(p);
  require_interior(q);
  if ((p - q).norm() == 0.0) return 0.0;
  const auto c = body_->chord(p, q - p);
  if (!c) throw Error(ErrorCode::NumericalFailure, "chord through interior points not found");
  const double ti = c->t_in;
  const double to = c->t_out;
  return 0.5 * std::log((1.0 - ti) * to / ((-ti) * (to - 1.0)));
}

double HilbertDomain::busemann(const Vec& p) const {
  const int n = dim();
  CompensatedSum vol;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    vol += grid_.weights()[i] * std::pow(unit_ball_radius(p, grid_.unit(i)), n) / n;
  }
  return unit_ball_volume(n) / vol.value();
}

double HilbertDomain::support_of_unit_ball(const Vec& p, const std::vector<double>& radii, const Vec& u) const {
  std::size_t best = 0;
  double hb = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const double v = radii[i] * grid_.unit(i).dot(u);
    if (v > hb) {
      hb = v;
      best = i;
    }
  }
  if (dim() == 3) return hb;
  const double step = 2.0 * kPi / grid_.size();
  const double t = std::atan2(grid_.unit(best).y(), grid_.unit(best).x());
  auto f = [&](double s) {
    const Vec w = vec2(std::cos(s), std::sin(s));
    return unit_ball_radius(p, w) * w.dot(u);
  };
  return std::max(hb, golden_max(f, t - step, t + step));
}

double HilbertDomain::holmes_thompson(const Vec& p) const {
  const int n = dim();
  std::vector<double> radii(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) radii[i] = unit_ball_radius(p, grid_.unit(i));
  CompensatedSum vol;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const double h = support_of_unit_ball(p, radii, grid_.unit(i));
    vol += grid_.weights()[i] * std::pow(h, -n) / n;
  }
  return vol.value() / unit_ball_volume(n);
}

double HilbertDomain::gromov_mass(const Vec& p) const {
  if (dim() != 2) throw Error(ErrorCode::UnsupportedDimension, "Gromov volumes are implemented in the plane");
  auto r = [&](double s) { return unit_ball_radius(p, vec2(std::cos(s), std::sin(s))); };
  // Inscribed centred parallelogram conv{+-a1, +-a2} with a_i on the unit sphere.
  auto neg_area = [&](const std::array<double, 2>& x) {
    return -2.0 * std::abs(r(x[0]) * r(x[1]) * std::sin(x[1] - x[0]));
  };
  const int coarse = 32;
  std::vector<std::array<double, 2>> starts;
  double best = 0.0;
  std::array<double, 2> arg{0.0, 0.5 * kPi};
  for (int i = 0; i < coarse; ++i) {
    for (int j = 0; j < coarse; ++j) {
      const std::array<double, 2> x{kPi * i / coarse, kPi * j / coarse};
      const double v = neg_area(x);
      if (v < best) {
        best = v;
        arg = x;
      }
    }
  }
  double top = 0.0;
  for (double shift : {0.0, 0.5 * kPi / coarse}) {
    const auto x = nelder_mead(neg_area, {arg[0] + shift, arg[1] - shift}, kPi / coarse);
    top = std::max(top, -neg_area(x));
  }
  top = std::max(top, -best);
  return 2.0 / top;
}

double HilbertDomain::gromov_comass(const Vec& p) const {
  if (dim() != 2) throw Error(ErrorCode::UnsupportedDimension, "Gromov volumes are implemented in the plane");
  std::vector<double> radii(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) radii[i] = unit_ball_radius(p, grid_.unit(i));
  auto h = [&](double s) { return support_of_unit_ball(p, radii, vec2(std::cos(s), std::sin(s))); };
  // Circumscribed centred parallelogram {|<n_i, x>| <= h(n_i)}.
  auto area = [&](const std::array<double, 2>& x) {
    const double s = std::abs(std::sin(x[0] - x[1]));
    if (s < 1e-6) return 1e12;
    return 4.0 * h(x[0]) * h(x[1]) / s;
  };
  const int coarse = 24;
  std::vector<double> hs(coarse);
  for (int i = 0; i < coarse; ++i) hs[i] = h(kPi * i / coarse);
  double best = std::numeric_limits<double>::infinity();
  std::array<double, 2> arg{0.0, 0.5 * kPi};
  for (int i = 0; i < coarse; ++i) {
    for (int j = 0; j < coarse; ++j) {
      const double s = std::abs(std::sin(kPi * (i - j) / coarse));
      if (s < 1e-6) continue;
      const double v = 4.0 * hs[i] * hs[j] / s;
      if (v < best) {
        best = v;
        arg = {kPi * i / coarse, kPi * j / coarse};
      }
    }
  }
  const auto x = nelder_mead(area, arg, 0.5 * kPi / coarse, 200);
  best = std::min(best, area(x));
  return 4.0 / best;
}

double HilbertDomain::density(FinslerKind kind, const Vec& p) const {
  require_interior(p);
  switch (kind) {
    case FinslerKind::Busemann: return busemann(p);
    case FinslerKind::HolmesThompson: return holmes_thompson(p);
    case FinslerKind::GromovMass: return gromov_mass(p);
    case FinslerKind::GromovComass: return gromov_comass(p);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown Finsler kind");
}

Density HilbertDomain::finsler_density(FinslerKind kind) const {
  if (dim() == 3 && (kind == FinslerKind::GromovMass || kind == FinslerKind::GromovComass)) {
    throw Error(ErrorCode::UnsupportedDimension, "Gromov volumes are implemented in the plane");
  }
  struct Cache {
    std::mutex mutex;
    std::unordered_map<std::array<std::uint64_t, 3>, double, KeyHash> values;
  };
  auto cache = std::make_shared<Cache>();
  auto self = std::make_shared<const HilbertDomain>(*this);
  Density::Field f = [cache, self, kind](const Vec& x) {
    const std::array<std::uint64_t, 3> key{std::bit_cast<std::uint64_t>(x.x()), std::bit_cast<std::uint64_t>(x.y()),
                                           std::bit_cast<std::uint64_t>(x.z())};
    {
      std::lock_guard<std::mutex> lock(cache->mutex);
      const auto it = cache->values.find(key);
      if (it != cache->values.end()) return it->second;
    }
    const double v = self->density(kind, x);
    std::lock_guard<std::mutex> lock(cache->mutex);
    cache->values.emplace(key, v);
    return v;
  };
  return Density(dim(), Domain::body_interior(*body_), f, std::string("hilbert-") + to_string(kind), std::nullopt, 0);
}

double finsler_surface_area(const Body& body, const Density& phi_f, int resolution) {
  const int n = body.dim();
  const auto nodes = body.sample_boundary(resolution > 0 ? resolution : default_resolution(n));
  for (const BoundaryPoint& bp : nodes) {
    if (!phi_f.domain().contains(bp.x)) throw Error(ErrorCode::BodyTouchesDomain, "body meets the domain boundary");
  }
  std::vector<double> terms(nodes.size(), 0.0);
  parallel_for(nodes.size(), [&](std::size_t i) {
    const double H = nodes[i].curvature.value_or(0.0);
    if (H <= 0.0) return;
    terms[i] = nodes[i].weight * std::pow(H, 1.0 / (n + 1)) * std::pow(phi_f(nodes[i].x), double(n - 1) / (n + 1));
  });
  CompensatedSum sum;
  for (double t : terms) sum += t;
  return sum.value();
}

double finsler_surface_area(const Body& body, const HilbertDomain& domain, FinslerKind kind, int resolution) {
  if (body.dim() != domain.dim()) throw Error(ErrorCode::InvalidParameter, "dimension mismatch");
  return finsler_surface_area(body, domain.finsler_density(kind), resolution);
}

}  // namespace illume
