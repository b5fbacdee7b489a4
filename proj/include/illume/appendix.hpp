#pragma once

#include "illume/types.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace illume {

// ---------------------------------------------------------------------------
// Spherical wedge W(alpha) = H+(p) cap H+(q) on S^2, lune axis e3, centred on e1.

struct WedgeRadius {
  double radius = 0.0;
  double delta_alpha = 0.0;
  /// False when the illumination body leaves the closed half-sphere (R > pi/2).
  bool convex = true;
};

/// R(delta, alpha) = alpha + delta / kappa_{n-1}; throws DeltaOutOfRange for delta >= delta_alpha.
WedgeRadius wedge_illumination_radius(double alpha, double delta, int n);

class SphericalWedge {
 public:
  explicit SphericalWedge(double alpha);

  double alpha() const { return alpha_; }
  Vec p() const;
  Vec q() const;
  bool contains(const Vec& x) const;
  /// Case label (1..4) matching the regions of the case analysis: 1 outside both
  /// half-spheres, 2 in H+(p) only, 3 in H+(q) only, 4 inside W.
  int region(const Vec& z) const;
  /// Cap volume from the case formulas.
  double cap_volume_formula(const Vec& z) const;
  /// Area of [z, W] \ W by quadrature of the hull indicator in spherical coordinates.
  double cap_volume_intrinsic(const Vec& z, int latitudes = 32, int scan = 720) const;
  /// Area of W by the same quadrature.
  double volume_intrinsic(int latitudes = 32, int scan = 720) const;

 private:
  bool in_hull(const Vec& z, const Vec& x) const;
  double indicator_area(const std::function<bool(const Vec&)>& in, int latitudes, int scan) const;

  double alpha_;
};

// ---------------------------------------------------------------------------

struct HoroballThreshold {
  double direct = 0.0;       // adaptive quadrature in h
  double substituted = 0.0;  // h = sin(theta)
  double bound = 0.0;        // kappa_{n-1} / (n - 1)
};

HoroballThreshold horoball_threshold(int n);

// ---------------------------------------------------------------------------
// Ideal triangle with vertices -1, 1, infinity in the upper half-plane.

/// lambda = sin(delta / 2).
double ideal_triangle_level(double delta);
/// Hyperbolic area of T_infinity by quadrature.
double ideal_triangle_area();
/// V(z) for z below the side joining -1 and 1, by quadrature of dx dy / y^2.
double ideal_triangle_cap_volume(std::complex<double> z);

struct IdealLevelCheck {
  double delta = 0.0;
  double lambda = 0.0;
  double distance = 0.0;      // h with tanh h = lambda
  double angle = 0.0;         // theta with cosh(h) sin(theta/2) = 1
  std::vector<std::complex<double>> points;
  std::vector<double> volumes;
  double max_error = 0.0;     // max |V - delta|
  double max_angle_error = 0.0;  // max |V - (pi - theta)|
};

IdealLevelCheck ideal_triangle_level_check(double delta, int count = 20);

// ---------------------------------------------------------------------------

struct SquareWitness {
  double r = 0.0;
  double v_mid = 0.0;     // V at z = (r, 0)
  double v_corner = 0.0;  // V at z' = (r, 1)
  double margin = 0.0;    // v_mid - v_corner
};

/// Cap volumes of the square [-1, 1]^2 in the gnomonic chart of S^2.
SquareWitness spherical_square_witness(double r);

// ---------------------------------------------------------------------------
// Geodesic balls B_r(o) in the plane space form of curvature lambda.

/// V at intrinsic distance d from the centre of a ball of intrinsic radius r.
double geodesic_ball_cap_volume(double lambda, double r, double d);
/// delta_r for lambda > 0: half the sphere area minus the ball area.
double geodesic_ball_saturation(double lambda, double r);

struct GeodesicBallProfile {
  double chart_radius = 0.0;      // infinity past the chart horizon
  double intrinsic_radius = 0.0;
  double spread = 0.0;            // relative spread over 8 directions
  bool via_chart = true;
};

/// r_K is the chart radius of K. Throws Saturated for lambda > 0 and delta >= delta_r.
GeodesicBallProfile geodesic_ball_profile(double lambda, double r_k, double delta);

// ---------------------------------------------------------------------------

struct GoldenCase {
  std::string name;
  /// "abs": |computed - expected| <= tolerance; "less": computed < expected - tolerance.
  std::string relation = "abs";
  double expected = 0.0;
  double computed = 0.0;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

std::vector<GoldenCase> run_golden_suite();

}  // namespace illume
