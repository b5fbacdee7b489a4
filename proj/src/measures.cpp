#include "illume/measures.hpp"

#include "illume/quadrature.hpp"

#include <cmath>
#include <limits>

namespace illume {

namespace {

constexpr unsigned kPrimes[3] = {2, 3, 5};

}  // namespace

// ---------------------------------------------------------------------------
// Domain

Domain Domain::all(int dim) {
  Domain d;
  d.dim_ = dim;
  d.kind_ = DomainKind::All;
  return d;
}

Domain Domain::ball(int dim, double radius, const Vec& center) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidParameter, "domain radius must be positive");
  Domain d;
  d.dim_ = dim;
  d.kind_ = DomainKind::Ball;
  d.radius_ = radius;
  d.center_ = center;
  return d;
}

Domain Domain::box(int dim, const Vec& lo, const Vec& hi) {
  for (int i = 0; i < dim; ++i) {
    if (!(hi(i) > lo(i))) throw Error(ErrorCode::InvalidParameter, "box must have positive extent");
  }
  Domain d;
  d.dim_ = dim;
  d.kind_ = DomainKind::Box;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

Domain Domain::body_interior(const Body& body) {
  Domain d;
  d.dim_ = body.dim();
  d.kind_ = DomainKind::BodyInterior;
  d.body_ = std::make_shared<const Body>(body);
  return d;
}

bool Domain::contains(const Vec& x) const {
  switch (kind_) {
    case DomainKind::All: return true;
    case DomainKind::Ball: return (x - center_).head(dim_).norm() < radius_;
    case DomainKind::Box:
      for (int i = 0; i < dim_; ++i) {
        if (!(x(i) > lo_(i) && x(i) < hi_(i))) return false;
      }
      return true;
    case DomainKind::BodyInterior: return body_->contains_strict(x);
  }
  return false;
}

std::optional<Chord> Domain::clip(const Vec& p, const Vec& d, double t0, double t1) const {
  double lo = t0;
  double hi = t1;
  switch (kind_) {
    case DomainKind::All: break;
    case DomainKind::Ball: {
      const Vec q = (p - center_) / radius_;
      const Vec e = d / radius_;
      const double A = e.head(dim_).squaredNorm();
      const double B = q.head(dim_).dot(e.head(dim_));
      const double C = q.head(dim_).squaredNorm() - 1.0;
      if (A == 0.0) {
        if (C >= 0.0) return std::nullopt;
        break;
      }
      const double disc = B * B - A * C;
      if (disc <= 0.0) return std::nullopt;
      const double sq = std::sqrt(disc);
      const double qq = -(B + std::copysign(sq, B));
      double r1 = qq / A;
      double r2 = qq != 0.0 ? C / qq : r1;
      if (r1 > r2) std::swap(r1, r2);
      lo = std::max(lo, r1);
      hi = std::min(hi, r2);
      break;
    }
    case DomainKind::Box:
      for (int i = 0; i < dim_; ++i) {
        if (d(i) == 0.0) {
          if (!(p(i) > lo_(i) && p(i) < hi_(i))) return std::nullopt;
          continue;
        }
        double a = (lo_(i) - p(i)) / d(i);
        double b = (hi_(i) - p(i)) / d(i);
        if (a > b) std::swap(a, b);
        lo = std::max(lo, a);
        hi = std::min(hi, b);
      }
      break;
    case DomainKind::BodyInterior: {
      const auto c = body_->chord(p, d);
      if (!c) return std::nullopt;
      lo = std::max(lo, c->t_in);
      hi = std::min(hi, c->t_out);
      break;
    }
  }
  if (!(hi > lo)) return std::nullopt;
  return Chord{lo, hi};
}

std::pair<Vec, Vec> Domain::bounds(double fallback) const {
  Vec lo = Vec::Constant(-fallback);
  Vec hi = Vec::Constant(fallback);
  switch (kind_) {
    case DomainKind::All: break;
    case DomainKind::Ball:
      lo = center_ - Vec::Constant(radius_);
      hi = center_ + Vec::Constant(radius_);
      break;
    case DomainKind::Box:
      lo = lo_;
      hi = hi_;
      break;
    case DomainKind::BodyInterior: std::tie(lo, hi) = body_->bounding_box(); break;
  }
  if (dim_ == 2) lo.z() = hi.z() = 0.0;
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// Density

Density::Density(int dim, Domain domain, Field field, std::string label, std::optional<double> constant, int checks)
    : dim_(dim), domain_(std::move(domain)), field_(std::move(field)), label_(std::move(label)), constant_(constant) {
  if (dim != 2 && dim != 3) throw Error(ErrorCode::UnsupportedDimension, "density dimension must be 2 or 3");
  if (domain_.dim() != dim) throw Error(ErrorCode::InvalidParameter, "domain dimension mismatch");
  const auto [lo, hi] = domain_.bounds();
  for (int i = 1; i <= checks; ++i) {
    Vec x = Vec::Zero();
    for (int k = 0; k < dim; ++k) x(k) = lo(k) + (hi(k) - lo(k)) * halton(static_cast<std::uint64_t>(i), kPrimes[k]);
    if (!domain_.contains(x)) continue;
    const double v = field_(x);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidParameter, "density '" + label_ + "' is not positive on its domain");
    }
  }
}

Density Density::with_chart_cutoff(double radius) const {
  Density d = *this;
  d.chart_cutoff_ = radius;
  return d;
}

Density Density::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorCode::InvalidParameter, "scale factor must be positive");
  Density d = *this;
  Field f = field_;
  d.field_ = [f, factor](const Vec& x) { return factor * f(x); };
  if (constant_) d.constant_ = factor * *constant_;
  return d;
}

Density uniform_density(int dim) { return uniform_density(dim, Domain::all(dim)); }

Density uniform_density(int dim, const Domain& domain) {
  return Density(dim, domain, [](const Vec&) { return 1.0; }, "uniform", 1.0, 0);
}

Density space_form_density(double lambda, int dim, double chart_cutoff) {
  if (!std::isfinite(lambda)) throw Error(ErrorCode::InvalidParameter, "curvature must be finite");
  if (lambda == 0.0) return uniform_density(dim);
  const double expo = -0.5 * (dim + 1);
  Density::Field f = [lambda, expo](const Vec& p) { return std::pow(1.0 + lambda * p.squaredNorm(), expo); };
  const std::string label = "space_form(" + std::to_string(lambda) + ")";
  if (lambda > 0.0) return Density(dim, Domain::all(dim), f, label).with_chart_cutoff(chart_cutoff);
  return Density(dim, Domain::ball(dim, 1.0 / std::sqrt(-lambda)), f, label);
}

Density dual_weight(double q, double rho_floor, int dim) {
  if (q == 0.0 || !std::isfinite(q)) throw Error(ErrorCode::InvalidParameter, "q must be nonzero");
  if (!(rho_floor > 0.0)) throw Error(ErrorCode::InvalidParameter, "rho_floor must be positive");
  const double c = std::abs(q) / dim;
  const double e = q - dim;
  Density::Field f = [c, e, rho_floor](const Vec& x) { return c * std::pow(std::max(x.norm(), rho_floor), e); };
  std::optional<double> constant;
  if (e == 0.0) constant = c;
  return Density(dim, Domain::all(dim), f, "dual(" + std::to_string(q) + ")", constant);
}

Density custom_density(int dim, const Domain& domain, Density::Field field, std::string label) {
  return Density(dim, domain, std::move(field), std::move(label));
}

Density translated_density(const Density& phi, const Vec& shift) {
  const int n = phi.dim();
  const Domain& d = phi.domain();
  Domain moved = Domain::all(n);
  switch (d.kind()) {
    case DomainKind::All: break;
    case DomainKind::Ball: moved = Domain::ball(n, d.radius(), d.center() + shift); break;
    case DomainKind::Box: moved = Domain::box(n, d.lo() + shift, d.hi() + shift); break;
    case DomainKind::BodyInterior: moved = Domain::body_interior(d.body()->translated(shift)); break;
  }
  Density::Field f = [phi, shift](const Vec& x) { return phi.raw(x - shift); };
  Density out(n, moved, f, phi.label(), phi.constant(), 0);
  if (const auto c = phi.chart_cutoff()) out = out.with_chart_cutoff(*c + shift.norm());
  return out;
}

double segment_moment(const Density& phi, const Vec& a, const Vec& b, int power, double tol) {
  const auto range = phi.domain().clip(a, b - a, 0.0, 1.0);
  if (!range) return 0.0;
  const double s0 = range->t_in;
  const double s1 = range->t_out;
  if (const auto c = phi.constant()) {
    return *c * (std::pow(s1, power + 1) - std::pow(s0, power + 1)) / (power + 1);
  }
  const Vec d = b - a;
  auto f = [&](double s) { return phi.raw(a + s * d) * std::pow(s, power); };
  return integrate_adaptive(f, s0, s1, tol);
}

VolumeEstimate weighted_volume(const Body& body, const Density& phi, const QuadratureSpec& spec) {
  const int n = body.dim();
  if (spec.method == QuadratureSpec::Method::Tensor) {
    const Vec c = body.interior_point();
    CompensatedSum sum;
    for (const BoundaryPoint& bp : body.sample_boundary(spec.resolution)) {
      const double h = (bp.x - c).dot(bp.normal);
      sum += bp.weight * h * segment_moment(phi, c, bp.x, n - 1, spec.target_tol);
    }
    return {sum.value(), 0.0};
  }
  if (spec.samples < 1) throw Error(ErrorCode::InvalidParameter, "sample count must be positive");
  const auto [lo, hi] = body.bounding_box();
  double box = 1.0;
  for (int k = 0; k < n; ++k) box *= hi(k) - lo(k);
  std::vector<double> values(spec.samples);
  parallel_for(spec.samples, [&](std::size_t i) {
    Vec x = Vec::Zero();
    for (int k = 0; k < n; ++k) {
      x(k) = lo(k) + (hi(k) - lo(k)) * counter_uniform(spec.seed, i, static_cast<std::uint32_t>(k));
    }
    values[i] = body.contains(x) ? phi(x) : 0.0;
  });
  CompensatedSum s1;
  CompensatedSum s2;
  for (double v : values) {
    s1 += v;
    s2 += v * v;
  }
  const double N = static_cast<double>(spec.samples);
  const double mean = s1.value() / N;
  const double var = std::max(0.0, s2.value() / N - mean * mean);
  return {box * mean, box * std::sqrt(var / N)};
}

}  // namespace illume
