#include "illume/experiments.hpp"

#include "illume/functionals.hpp"

#include <cmath>
#include <sstream>

namespace illume {

GeometrySpec GeometrySpec::space_form(double lambda) {
  GeometrySpec g;
  g.kind = lambda == 0.0 ? Kind::Euclidean : Kind::SpaceForm;
  g.lambda = lambda;
  return g;
}

GeometrySpec GeometrySpec::hilbert(const Body& domain, FinslerKind volume) {
  GeometrySpec g;
  g.kind = Kind::Hilbert;
  g.domain = domain;
  g.volume = volume;
  return g;
}

std::string GeometrySpec::label() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Euclidean: return "euclidean";
    case Kind::SpaceForm: os << "space_form(" << lambda << ")"; return os.str();
    case Kind::Hilbert: os << "hilbert(" << domain->kind() << "," << to_string(volume) << ")"; return os.str();
  }
  return "?";
}

Density GeometrySpec::density(int n) const {
  switch (kind) {
    case Kind::Euclidean: return uniform_density(n);
    case Kind::SpaceForm: return space_form_density(lambda, n);
    case Kind::Hilbert:
      if (!domain || domain->dim() != n) throw Error(ErrorCode::InvalidParameter, "Hilbert domain dimension mismatch");
      return HilbertDomain(*domain).finsler_density(volume);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown geometry");
}

std::vector<double> default_delta_sequence(double first, int count) {
  if (!(first > 0.0) || count < 1) throw Error(ErrorCode::InvalidParameter, "bad delta sequence");
  std::vector<double> d(count);
  for (int k = 0; k < count; ++k) d[k] = first * std::pow(10.0, -0.5 * k);
  return d;
}

ConvergenceReport run_convergence(const ConvergenceConfig& cfg) {
  for (std::size_t k = 0; k < cfg.deltas.size(); ++k) {
    if (!(cfg.deltas[k] > 0.0) || (k > 0 && !(cfg.deltas[k] < cfg.deltas[k - 1]))) {
      throw Error(ErrorCode::InvalidParameter, "delta sequence must be positive and strictly decreasing");
    }
  }
  Body body = cfg.body;
  ConvergenceReport rep;
  const int n = body.dim();
  Density phi = cfg.phi ? *cfg.phi : cfg.geometry.density(n);
  Density psi = cfg.psi ? *cfg.psi : phi;
  if (!body.origin_interior()) {
    // Radial constructions need o in int K; body and weights move together.
    rep.recentred_by = -body.interior_point();
    body = body.translated(rep.recentred_by);
    phi = translated_density(phi, rep.recentred_by);
    psi = translated_density(psi, rep.recentred_by);
  }
  rep.body_kind = body.kind();
  rep.geometry = cfg.geometry.label();
  rep.phi_label = phi.label();
  rep.psi_label = psi.label();
  rep.deltas = cfg.deltas;

  rep.target = weighted_limit_integral(body, phi, psi);
  if (!cfg.phi && !cfg.psi) {
    if (cfg.geometry.kind == GeometrySpec::Kind::SpaceForm) {
      rep.target_cross = c_n(n) * floating_area_factored(cfg.body, SpaceFormChart(cfg.geometry.lambda, n));
      rep.target_cross_label = "c_n * floating area";
    } else if (cfg.geometry.kind == GeometrySpec::Kind::Hilbert) {
      rep.target_cross = c_n(n) * finsler_surface_area(body, phi);
      rep.target_cross_label = "c_n * Finsler surface area";
    }
  }

  const DirectionGrid grid = n == 2 ? DirectionGrid::uniform_angle(cfg.grid > 0 ? cfg.grid : 256)
                                    : DirectionGrid::icosphere(cfg.grid > 0 ? cfg.grid : 3);
  RadiusOptions ro;
  ro.tol = cfg.tol;
  ro.cap.resolution = cfg.resolution;
  ro.cap.seed = cfg.seed;
  for (double delta : cfg.deltas) {
    const RadialProfile prof = illumination_body(body, phi, delta, grid, ro);
    if (!prof.all_finite()) {
      std::ostringstream os;
      os << "illumination body is unbounded at delta = " << delta;
      throw Error(ErrorCode::ProfileUnbounded, os.str());
    }
    const double q = weighted_volume_difference(body, prof, psi) / std::pow(delta, 2.0 / (n + 1));
    rep.quotients.push_back(q);
    rep.rel_errors.push_back(rep.target != 0.0 ? std::abs(q - rep.target) / std::abs(rep.target) : std::abs(q));
  }
  const std::size_t m = rep.rel_errors.size();
  rep.monotone_tail = m >= 4;
  for (std::size_t k = m >= 4 ? m - 4 : 0; k + 1 < m; ++k) {
    if (rep.rel_errors[k + 1] > rep.rel_errors[k]) rep.monotone_tail = false;
  }
  return rep;
}

}  // namespace illume
