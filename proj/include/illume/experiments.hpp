#pragma once

#include "illume/geometry.hpp"
#include "illume/illumination.hpp"
#include "illume/measures.hpp"
#include "illume/projective.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace illume {

struct GeometrySpec {
  enum class Kind { Euclidean, SpaceForm, Hilbert };
  Kind kind = Kind::Euclidean;
  double lambda = 0.0;
  std::optional<Body> domain;  // Hilbert only
  FinslerKind volume = FinslerKind::Busemann;

  static GeometrySpec euclidean() { return {}; }
  static GeometrySpec space_form(double lambda);
  static GeometrySpec hilbert(const Body& domain, FinslerKind volume);

  std::string label() const;
  /// Natural volume density of the geometry in dimension n.
  Density density(int n) const;
};

/// delta_k = first * 10^{-k/2}, k = 0..count-1.
std::vector<double> default_delta_sequence(double first = 1e-1, int count = 12);

struct ConvergenceConfig {
  Body body = Body::ball(2, Vec::Zero(), 1.0);
  GeometrySpec geometry;
  std::optional<Density> phi;  // defaults to the geometry density
  std::optional<Density> psi;  // defaults to phi
  std::vector<double> deltas = default_delta_sequence();
  int grid = 0;        // directions (n=2) or icosphere levels (n=3); 0 picks 256 / 3
  int resolution = 0;  // cap-volume boundary resolution; 0 picks the engine default
  double tol = 1e-10;
  std::uint64_t seed = 1;
};

struct ConvergenceReport {
  int schema_version = 1;
  std::string body_kind;
  std::string geometry;
  std::string phi_label;
  std::string psi_label;
  Vec recentred_by = Vec::Zero();
  std::vector<double> deltas;
  std::vector<double> quotients;
  std::vector<double> rel_errors;
  double target = 0.0;
  /// Geometry-specific second formula for the target (floating area or Finsler area), if any.
  std::optional<double> target_cross;
  std::string target_cross_label;
  bool monotone_tail = false;
};

ConvergenceReport run_convergence(const ConvergenceConfig& config);

}  // namespace illume
