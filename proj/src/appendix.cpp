#include "illume/appendix.hpp"

#include "illume/geometry.hpp"
#include "illume/illumination.hpp"
#include "illume/measures.hpp"
#include "illume/projective.hpp"
#include "illume/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace illume {

namespace {

using Interval = std::pair<double, double>;

// Parameters s in [lo, hi] where a cos s + b sin s >= 0, as a list of intervals.
std::vector<Interval> half_circle_cut(double a, double b, const std::vector<Interval>& in) {
  if (a == 0.0 && b == 0.0) return in;
  const double th = std::atan2(b, a);
  std::vector<Interval> out;
  for (const Interval& iv : in) {
    for (int k = -1; k <= 1; ++k) {
      const double lo = std::max(iv.first, th - 0.5 * kPi + 2.0 * kPi * k);
      const double hi = std::min(iv.second, th + 0.5 * kPi + 2.0 * kPi * k);
      if (hi >= lo) out.emplace_back(lo, hi);
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Wedge

WedgeRadius wedge_illumination_radius(double alpha, double delta, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "n must be at least 2");
  if (!(alpha > 0.0 && alpha < 0.5 * kPi)) throw Error(ErrorCode::InvalidParameter, "alpha must lie in (0, pi/2)");
  const double kappa = unit_ball_volume(n - 1);
  WedgeRadius out;
  out.delta_alpha = (kPi - 2.0 * alpha) * kappa;
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidParameter, "delta must be positive");
  if (delta >= out.delta_alpha) throw Error(ErrorCode::DeltaOutOfRange, "the illumination body saturates");
  out.radius = alpha + delta / kappa;
  out.convex = !(delta > 0.5 * out.delta_alpha);
  return out;
}

SphericalWedge::SphericalWedge(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5 * kPi)) throw Error(ErrorCode::InvalidParameter, "alpha must lie in (0, pi/2]");
}

Vec SphericalWedge::p() const { return {std::sin(alpha_), -std::cos(alpha_), 0.0}; }
Vec SphericalWedge::q() const { return {std::sin(alpha_), std::cos(alpha_), 0.0}; }

bool SphericalWedge::contains(const Vec& x) const { return x.dot(p()) >= 0.0 && x.dot(q()) >= 0.0; }

int SphericalWedge::region(const Vec& z) const {
  const bool ip = z.dot(p()) >= 0.0;
  const bool iq = z.dot(q()) >= 0.0;
  if (ip && iq) return 4;
  if (ip) return 2;
  if (iq) return 3;
  return 1;
}

double SphericalWedge::cap_volume_formula(const Vec& z) const {
  const double kappa = 2.0;
  const Vec proj = Vec(z.x(), z.y(), 0.0).normalized();
  switch (region(z)) {
    case 4: return 0.0;
    case 1: return 2.0 * kPi * kappa - 2.0 * alpha_ * kappa;
    // The hull is a wedge reaching from proj z across W, so the extra width is
    // measured through W: d(proj z, centre) - alpha. This equals d(proj z, q) - pi/2
    // (resp. p) as long as that geodesic runs through W, and stays valid past -q.
    default: return kappa * (std::acos(std::clamp(proj.x(), -1.0, 1.0)) - alpha_);
  }
}

bool SphericalWedge::in_hull(const Vec& z, const Vec& x) const {
  const double c = std::clamp(z.dot(x), -1.0, 1.0);
  const double sx = std::acos(c);
  if (sx < 1e-15) return true;
  if (sx > kPi - 1e-12) return false;
  const Vec v = (x - c * z).normalized();
  std::vector<Interval> iv{{sx, kPi - 1e-12}};
  iv = half_circle_cut(z.dot(p()), v.dot(p()), iv);
  iv = half_circle_cut(z.dot(q()), v.dot(q()), iv);
  return !iv.empty();
}

double SphericalWedge::indicator_area(const std::function<bool(const Vec&)>& in, int latitudes, int scan) const {
  auto point = [](double th, double ph) {
    return Vec(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
  };
  auto length = [&](double th) {
    std::vector<char> v(scan);
    std::vector<double> ph(scan);
    for (int k = 0; k < scan; ++k) {
      ph[k] = -kPi + 2.0 * kPi * (k + 0.5) / scan;
      v[k] = in(point(th, ph[k]));
    }
    struct Edge {
      double at;
      bool enter;
    };
    std::vector<Edge> edges;
    for (int k = 0; k < scan; ++k) {
      const int k1 = (k + 1) % scan;
      if (v[k] == v[k1]) continue;
      double lo = ph[k];
      double hi = k1 == 0 ? ph[0] + 2.0 * kPi : ph[k1];
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (in(point(th, mid)) == static_cast<bool>(v[k]) ? lo : hi) = mid;
      }
      edges.push_back({0.5 * (lo + hi), !v[k]});
    }
    if (edges.empty()) return v[0] ? 2.0 * kPi : 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!edges[i].enter) continue;
      const Edge& out = edges[(i + 1) % edges.size()];
      double len = out.at - edges[i].at;
      while (len < 0.0) len += 2.0 * kPi;
      total += len;
    }
    return total;
  };
  const int panels = std::max(1, latitudes / 8);
  return integrate_composite([&](double th) { return std::sin(th) * length(th); }, 0.0, kPi, 8, panels);
}

double SphericalWedge::cap_volume_intrinsic(const Vec& z, int latitudes, int scan) const {
  if (std::abs(z.norm() - 1.0) > 1e-12) throw Error(ErrorCode::InvalidParameter, "z must be a unit vector");
  return indicator_area([&](const Vec& x) { return !contains(x) && in_hull(z, x); }, latitudes, scan);
}

double SphericalWedge::volume_intrinsic(int latitudes, int scan) const {
  return indicator_area([&](const Vec& x) { return contains(x); }, latitudes, scan);
}

// ---------------------------------------------------------------------------
// Horoball

HoroballThreshold horoball_threshold(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "n must be at least 2");
  const double kappa = unit_ball_volume(n - 1);
  HoroballThreshold out;
  // 1 - sqrt(1 - h^2) = h^2 / (1 + sqrt(1 - h^2)) avoids cancellation near h = 0.
  auto direct = [n](double h) { return std::pow(h, n - 2) / std::pow(1.0 + std::sqrt(1.0 - h * h), n - 1); };
  boost::math::quadrature::tanh_sinh<double> ts;
  out.direct = kappa * ts.integrate(direct, 0.0, 1.0, 1e-14);
  auto sub = [n](double t) {
    const double c = std::cos(t);
    return std::pow(std::sin(t), n - 2) * c / std::pow(1.0 + c, n - 1);
  };
  out.substituted = kappa * integrate_adaptive(sub, 0.0, 0.5 * kPi, 1e-14);
  out.bound = kappa / (n - 1);
  return out;
}

// ---------------------------------------------------------------------------
// Ideal triangle

double ideal_triangle_level(double delta) {
  if (!(delta > 0.0 && delta < kPi)) throw Error(ErrorCode::DeltaOutOfRange, "delta must lie in (0, pi)");
  return std::sin(0.5 * delta);
}

double ideal_triangle_area() {
  // int_{-1}^{1} dx / sqrt(1 - x^2) with 1 + x = w^2 on each half.
  const double half = integrate_adaptive([](double w) { return 2.0 / std::sqrt(2.0 - w * w); }, 0.0, 1.0, 1e-14);
  return 2.0 * half;
}

double ideal_triangle_cap_volume(std::complex<double> z) {
  const double x = z.real();
  const double y = z.imag();
  if (!(y > 0.0) || std::abs(z) >= 1.0) {
    throw Error(ErrorCode::InvalidParameter, "z must lie below the side joining -1 and 1");
  }
  const double m = x * x + y * y - 1.0;
  // Geodesic through -1 and z: centre c, radius c + 1; through z and 1: centre c2, radius 1 - c2.
  const double rl = m / (2.0 * (x + 1.0)) + 1.0;
  const double rr = 1.0 - m / (2.0 * (x - 1.0));
  // With 1 + x = w^2 (left) and 1 - x = w^2 (right) the integrand 1/y_lo - 1/y_hi becomes smooth.
  auto left = [rl](double w) { return 2.0 / std::sqrt(2.0 * rl - w * w) - 2.0 / std::sqrt(2.0 - w * w); };
  auto right = [rr](double w) { return 2.0 / std::sqrt(2.0 * rr - w * w) - 2.0 / std::sqrt(2.0 - w * w); };
  return integrate_adaptive(left, 0.0, std::sqrt(1.0 + x), 1e-14) +
         integrate_adaptive(right, 0.0, std::sqrt(1.0 - x), 1e-14);
}

IdealLevelCheck ideal_triangle_level_check(double delta, int count) {
  if (count < 1) throw Error(ErrorCode::InvalidParameter, "count must be positive");
  IdealLevelCheck out;
  out.delta = delta;
  out.lambda = ideal_triangle_level(delta);
  out.distance = std::atanh(out.lambda);
  out.angle = 2.0 * std::asin(1.0 / std::cosh(out.distance));
  const std::complex<double> base(0.0, std::exp(-out.distance));
  for (int k = 0; k < count; ++k) {
    const double s = count == 1 ? 0.0 : -2.0 + 4.0 * k / (count - 1);
    const double ch = std::cosh(0.5 * s);
    const double sh = std::sinh(0.5 * s);
    const std::complex<double> z = (base * ch + sh) / (base * sh + ch);
    const double v = ideal_triangle_cap_volume(z);
    out.points.push_back(z);
    out.volumes.push_back(v);
    out.max_error = std::max(out.max_error, std::abs(v - delta));
    out.max_angle_error = std::max(out.max_angle_error, std::abs(v - (kPi - out.angle)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spherical square

SquareWitness spherical_square_witness(double r) {
  if (!(r > 1.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidParameter, "r must exceed 1");
  // int (a^2 + t^2)^{-3/2} dt = t / (a^2 sqrt(a^2 + t^2)) with a^2 = 1 + s^2.
  auto inner = [](double s, double lo, double hi) {
    const double a2 = 1.0 + s * s;
    auto prim = [a2](double t) { return t / (a2 * std::sqrt(a2 + t * t)); };
    return prim(hi) - prim(lo);
  };
  SquareWitness out;
  out.r = r;
  out.v_mid = integrate_adaptive(
      [&](double s) {
        const double w = (r - s) / (r - 1.0);
        return inner(s, -w, w);
      },
      1.0, r, 1e-13);
  out.v_corner = integrate_adaptive(
      [&](double s) { return inner(s, (2.0 * s - (r + 1.0)) / (r - 1.0), 1.0); }, 1.0, r, 1e-13);
  out.margin = out.v_mid - out.v_corner;
  return out;
}

// ---------------------------------------------------------------------------
// Geodesic balls

double geodesic_ball_cap_volume(double lambda, double r, double d) {
  if (!(r > 0.0) || !(d >= r)) throw Error(ErrorCode::InvalidParameter, "need 0 < r <= d");
  if (lambda == 0.0) return r * std::sqrt(d * d - r * r) - r * r * std::acos(r / d);
  if (lambda > 0.0) {
    const double s = std::sqrt(lambda);
    const double a = s * r;
    const double c = s * d;
    if (!(a < 0.5 * kPi) || !(c < kPi - a)) throw Error(ErrorCode::InvalidParameter, "distance out of range");
    const double beta = std::acos(std::clamp(std::tan(a) / std::tan(c), -1.0, 1.0));
    const double gamma = std::asin(std::clamp(std::sin(a) / std::sin(c), -1.0, 1.0));
    return (2.0 * gamma + 2.0 * beta * std::cos(a) - kPi) / lambda;
  }
  const double s = std::sqrt(-lambda);
  const double a = s * r;
  const double c = s * d;
  const double beta = std::acos(std::clamp(std::tanh(a) / std::tanh(c), -1.0, 1.0));
  const double gamma = std::asin(std::clamp(std::sinh(a) / std::sinh(c), -1.0, 1.0));
  return (kPi - 2.0 * gamma - 2.0 * beta * std::cosh(a)) / (-lambda);
}

double geodesic_ball_saturation(double lambda, double r) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidParameter, "saturation needs lambda > 0");
  return 2.0 * kPi * std::cos(std::sqrt(lambda) * r) / lambda;
}

GeodesicBallProfile geodesic_ball_profile(double lambda, double r_k, double delta) {
  if (!(r_k > 0.0)) throw Error(ErrorCode::InvalidParameter, "radius must be positive");
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidParameter, "delta must be positive");
  const SpaceFormChart chart(lambda, 2);
  const double r = chart.intrinsic_radius(r_k);
  if (lambda > 0.0 && delta >= geodesic_ball_saturation(lambda, r)) {
    throw Error(ErrorCode::Saturated, "delta reaches the saturation threshold");
  }
  const Body ball = Body::ball(2, Vec::Zero(), r_k);
  const Density phi = chart.density();
  GeodesicBallProfile out;
  std::vector<double> radii;
  bool overflow = false;
  for (int k = 0; k < 8; ++k) {
    const double t = 2.0 * kPi * k / 8.0 + 0.1;
    const RadiusResult res = illumination_radius(ball, phi, delta, vec2(std::cos(t), std::sin(t)));
    if (res.flag == RadiusFlag::ChartOverflow) {
      overflow = true;
      break;
    }
    if (res.flag == RadiusFlag::Unbounded) throw Error(ErrorCode::ProfileUnbounded, "the illumination body is unbounded");
    radii.push_back(res.rho);
  }
  if (!overflow) {
    const auto [lo, hi] = std::minmax_element(radii.begin(), radii.end());
    double mean = 0.0;
    for (double v : radii) mean += v / radii.size();
    out.chart_radius = mean;
    out.intrinsic_radius = chart.intrinsic_radius(mean);
    out.spread = (*hi - *lo) / mean;
    return out;
  }
  // Past the chart horizon: solve the intrinsic closed form.
  const double s = std::sqrt(lambda);
  double lo = r;
  double hi = (kPi - 1e-15) / s - r;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (geodesic_ball_cap_volume(lambda, r, mid) < delta ? lo : hi) = mid;
  }
  out.via_chart = false;
  out.intrinsic_radius = 0.5 * (lo + hi);
  out.chart_radius = s * out.intrinsic_radius < 0.5 * kPi ? chart.chart_radius(out.intrinsic_radius)
                                                          : std::numeric_limits<double>::infinity();
  return out;
}

// ---------------------------------------------------------------------------
// Golden suite

std::vector<GoldenCase> run_golden_suite() {
  std::vector<GoldenCase> cases;
  auto add = [&](std::string name, double expected, double computed, double tol, std::string note = {}) {
    GoldenCase c;
    c.name = std::move(name);
    c.expected = expected;
    c.computed = computed;
    c.error = std::abs(computed - expected);
    c.tolerance = tol;
    c.pass = c.error <= tol;
    c.note = std::move(note);
    cases.push_back(std::move(c));
  };
  auto less = [&](std::string name, double bound, double computed, double margin, std::string note = {}) {
    GoldenCase c;
    c.name = std::move(name);
    c.relation = "less";
    c.expected = bound;
    c.computed = computed;
    c.error = computed - bound;
    c.tolerance = margin;
    c.pass = computed < bound - margin;
    c.note = std::move(note);
    cases.push_back(std::move(c));
  };

  const HoroballThreshold h2 = horoball_threshold(2);
  add("horoball threshold n=2", kPi - 2.0, h2.direct, 1e-8, "2 - pi/2 = 0.429204 is the Euclidean area of the same region");
  less("horoball bound n=2", h2.bound, h2.direct, 0.0);
  const HoroballThreshold h3 = horoball_threshold(3);
  add("horoball threshold n=3 (two quadratures)", h3.substituted, h3.direct, 1e-8);

  add("wedge radius alpha=0.5 delta=0.3", 0.65, wedge_illumination_radius(0.5, 0.3, 2).radius, 1e-12);
  const SphericalWedge wedge(0.5);
  add("wedge area alpha=0.5", 2.0, wedge.volume_intrinsic(), 1e-6);
  const Vec z2 = Vec(std::cos(-1.2), std::sin(-1.2), 0.4).normalized();
  add("wedge one-face law", wedge.cap_volume_formula(z2), wedge.cap_volume_intrinsic(z2), 1e-6);
  const double da = wedge_illumination_radius(0.5, 0.1, 2).delta_alpha;
  add("wedge non-convex past delta_alpha/2", 1.0,
      wedge_illumination_radius(0.5, 0.5 * da * 1.01, 2).convex ? 0.0 : 1.0, 0.0);

  add("ideal triangle area", kPi, ideal_triangle_area(), 1e-6);
  add("ideal triangle level delta=pi/2", std::sqrt(0.5), ideal_triangle_level(0.5 * kPi), 1e-12);
  for (double d : {0.5, 1.0, 2.0}) {
    const IdealLevelCheck chk = ideal_triangle_level_check(d);
    add("ideal triangle level curve delta=" + std::to_string(d).substr(0, 3), 0.0, chk.max_error, 1e-5);
  }

  const SquareWitness sq = spherical_square_witness(1.5);
  less("spherical square V(z') < V(z), r=1.5", sq.v_mid, sq.v_corner, 1e-4);

  const double r_int = std::atan(0.5);
  bool saturated = false;
  try {
    geodesic_ball_profile(1.0, 0.5, geodesic_ball_saturation(1.0, r_int));
  } catch (const Error& e) {
    saturated = e.code() == ErrorCode::Saturated;
  }
  add("geodesic ball saturation lambda=1", 1.0, saturated ? 1.0 : 0.0, 0.0);
  return cases;
}

}  // namespace illume
