#pragma once

#include "illume/geometry.hpp"
#include "illume/illumination.hpp"
#include "illume/measures.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace illume {

// ---------------------------------------------------------------------------
// Space forms in the projective (gnomonic / Beltrami-Klein) chart

class SpaceFormChart {
 public:
  SpaceFormChart(double lambda, int dim);

  double lambda() const { return lambda_; }
  int dim() const { return dim_; }
  /// Chart radius 1/sqrt(-lambda) for lambda < 0, infinity otherwise.
  double model_radius() const;
  bool contains(const Vec& x) const;
  /// Throws OutOfChart unless K sits in the chart with a positive margin.
  void require_inside(const Body& body) const;
  Density density(double chart_cutoff = 1e3) const;

  /// Converts Euclidean dH^{n-1} at a boundary point to the intrinsic boundary measure.
  double boundary_measure_factor(const Vec& x, const Vec& normal) const;
  /// Intrinsic Gauss-Kronecker curvature from the Euclidean one.
  double curvature_transform(const Vec& x, const Vec& normal, double h_euclid) const;

  /// Geodesic distance from o of a chart point at Euclidean radius rho, and back.
  double intrinsic_radius(double rho) const;
  double chart_radius(double r) const;

 private:
  double lambda_;
  int dim_;
};

/// Floating area from the composed integrand H^{1/(n+1)} phi_lambda^{(n-1)/(n+1)}.
double floating_area(const Body& body, const SpaceFormChart& chart, int resolution = 0);
/// Same quantity assembled from the intrinsic curvature and boundary measure.
double floating_area_factored(const Body& body, const SpaceFormChart& chart, int resolution = 0);

// ---------------------------------------------------------------------------
// Spherical and hyperbolic triangle toolkit

/// Area of the spherical triangle with unit vertices A, B, C.
double spherical_excess(const Vec& A, const Vec& B, const Vec& C);

class SphericalTriangleProfile {
 public:
  /// phi is half the distance between p and q, theta the tilt of their great circle.
  SphericalTriangleProfile(double phi, double theta);

  double operator()(double t) const;
  double at_zero() const { return (*this)(0.0); }
  Vec p() const;
  Vec q() const;
  Vec gamma(double t) const;
  /// A(+-h) < A(0) for h = h0 / 2^k, k = 0..levels-1.
  bool strict_local_max_at_zero(double h0 = 0.5, int levels = 16) const;

 private:
  double phi_;
  double theta_;
};

/// Triangle with vertices gamma(t) = (0, e^t), p = (x1, y1), q = (x0, 1) in the upper half-plane.
class HyperbolicTriangleTau {
 public:
  HyperbolicTriangleTau(double x1, double y1, double x0);

  double alpha(double s) const;
  double beta(double s) const;
  double mu(double s) const;
  double tau(double s) const { return alpha(s) / beta(s); }
  /// Via tau' = ((x0-x1)^2 + (1+y1)^2) mu / beta^2.
  double tau_prime(double s) const;
  /// Second derivative from the quotient rule applied to tau'.
  double tau_second(double s) const;
  double area(double t) const;
  /// Positive roots of mu.
  std::vector<double> mu_roots() const;
  /// True if A has no strict interior local maximum on the sampled grid over [t0, t1].
  bool no_local_max(double t0, double t1, int samples = 2001) const;

 private:
  double x1_;
  double y1_;
  double x0_;
};

struct HullScan {
  std::vector<double> t;
  std::vector<double> values;
  std::vector<int> local_maxima;  // interior grid indices
};

/// B(t) = vol^phi(K) + V_K^phi(gamma(t)) along the chart segment gamma(t) = (1-t)a + t b.
HullScan hull_volume_along_geodesic(const Body& body, const Density& phi, const Vec& a, const Vec& b,
                                    const std::vector<double>& ts, const CapOptions& opts = {});

// ---------------------------------------------------------------------------
// Hilbert geometries

enum class FinslerKind { Busemann, HolmesThompson, GromovMass, GromovComass };

const char* to_string(FinslerKind kind);
FinslerKind finsler_kind_from_string(const std::string& name);

class HilbertDomain {
 public:
  explicit HilbertDomain(Body domain, int directions = 512);

  const Body& body() const { return *body_; }
  int dim() const { return body_->dim(); }
  /// The smoothness hypotheses on F fail for polytope domains; results are still evaluable.
  bool polygonal() const { return body_->kind() == "polytope"; }

  /// Distances t_+ and t_- from p to the boundary along +-v, in units of |v|.
  std::pair<double, double> exit_parameters(const Vec& p, const Vec& v) const;
  double norm(const Vec& p, const Vec& v) const;
  double distance(const Vec& p, const Vec& q) const;
  /// Volume density of the given kind at p (uncached).
  double density(FinslerKind kind, const Vec& p) const;
  /// Density object on int X with a thread-safe memo cache.
  Density finsler_density(FinslerKind kind) const;

 private:
  void require_interior(const Vec& p) const;
  double unit_ball_radius(const Vec& p, const Vec& u) const { return 1.0 / norm(p, u); }
  double busemann(const Vec& p) const;
  double holmes_thompson(const Vec& p) const;
  double gromov_mass(const Vec& p) const;
  double gromov_comass(const Vec& p) const;
  double support_of_unit_ball(const Vec& p, const std::vector<double>& radii, const Vec& u) const;

  std::shared_ptr<const Body> body_;
  int directions_;
  DirectionGrid grid_;
};

double finsler_surface_area(const Body& body, const HilbertDomain& domain, FinslerKind kind, int resolution = 0);
/// Same integral with a precomputed density object.
double finsler_surface_area(const Body& body, const Density& phi_f, int resolution = 0);

}  // namespace illume
