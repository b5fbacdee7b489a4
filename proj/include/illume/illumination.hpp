#pragma once

#include "illume/geometry.hpp"
#include "illume/measures.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace illume {

enum class CapMethod { BoundaryIntegral, FrontsideIntegral, MonteCarloHull };

struct CapOptions {
  CapMethod method = CapMethod::FrontsideIntegral;
  int resolution = 0;  // 0 picks 256 in the plane, 48 in space
  double inner_tol = 1e-12;
  std::uint64_t samples = 400000;
  std::uint64_t seed = 1;
};

struct CapEstimate {
  double value = 0.0;
  double std_error = 0.0;  // Monte Carlo only
};

/// vol^phi([z, K] \ K).
CapEstimate cap_volume_estimate(const Body& body, const Density& phi, const Vec& z, const CapOptions& opts = {});
double cap_volume(const Body& body, const Density& phi, const Vec& z, const CapOptions& opts = {});
/// Unweighted cap volume: the inner s-integral collapses to 1/n.
double uniform_cap_volume(const Body& body, const Vec& z, int resolution = 0);

enum class RadiusFlag { Finite, Unbounded, ChartOverflow };

const char* to_string(RadiusFlag flag);

struct RadiusResult {
  RadiusFlag flag = RadiusFlag::Finite;
  double rho = 0.0;
  /// Set when the ray mass is within the safety margin of delta.
  bool near_threshold = false;
  double ray_mass = 0.0;
  int evaluations = 0;
};

struct RadiusOptions {
  double tol = 1e-10;  // |V - delta| <= tol * delta
  double r_max_factor = 1e6;
  CapOptions cap;
};

RadiusResult illumination_radius(const Body& body, const Density& phi, double delta, const Vec& u,
                                 const RadiusOptions& opts = {});

/// Mass of the cylinder swept from the front side of K in direction u: the
/// limit of V along the ray for a bounded density domain.
double ray_limit_mass(const Body& body, const Density& phi, const Vec& u, int resolution = 0);

struct RadialProfile {
  DirectionGrid grid;
  std::vector<double> rho;
  std::vector<RadiusFlag> flags;
  std::vector<bool> warnings;
  double delta = 0.0;
  std::string body_kind;
  std::string weight_label;

  bool all_finite() const;
  /// Radial function of the sampled polyline (n=2) or flat-faced mesh (n=3).
  double mesh_radial(const Vec& u) const;
};

RadialProfile illumination_body(const Body& body, const Density& phi, double delta, const DirectionGrid& grid,
                                const RadiusOptions& opts = {});

struct ConvexityReport {
  bool convex = true;
  int i = -1;
  int j = -1;
  Vec midpoint = Vec::Zero();
  /// |m| - rho_mesh(m / |m|) for the worst pair; positive means a violation.
  double margin = 0.0;
};

/// Midpoint test over all pairs of profile points against the star-shaped mesh.
ConvexityReport convexity_check(const RadialProfile& profile, double rel_tol = 1e-9);

/// vol^psi(L) - vol^psi(K) as a radial shell integral over the boundary of K.
double weighted_volume_difference(const Body& body, const RadialProfile& profile, const Density& psi,
                                  int resolution = 0);

}  // namespace illume
