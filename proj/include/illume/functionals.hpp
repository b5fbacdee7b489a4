#pragma once

#include "illume/geometry.hpp"
#include "illume/illumination.hpp"
#include "illume/measures.hpp"

#include <string>
#include <vector>

namespace illume {

/// c_n = 1/2 (n(n+1) / vol_{n-1}(B^{n-1}))^{2/(n+1)}.
double c_n(int n);

/// c_n int_{dK} H^{1/(n+1)} phi^{-2/(n+1)} psi dH^{n-1}.
double weighted_limit_integral(const Body& body, const Density& phi, const Density& psi, int resolution = 0);

/// L_p affine surface area; p = 1 is the classical affine surface area.
double affine_surface_area_p(const Body& body, double p, int resolution = 0);

/// psi_p with phi_p = 1: the boundary value H^{p/(n+p)-1/(n+1)} (x.n)^{-n(p-1)/(n+p)}
/// carried off the boundary along normals (nearest-point projection).
Density lp_weight(const Body& body, double p);

struct LpLimitResult {
  double p = 1.0;
  std::vector<double> deltas;
  std::vector<double> quotients;
  double target = 0.0;
  std::string extension = "constant along normals";
};

LpLimitResult lp_limit_check(const Body& body, double p, const std::vector<double>& deltas, int grid_size = 0);

/// (1/n) int_{S^{n-1}} rho^q over the profile grid.
double dual_volume(const RadialProfile& profile, double q);
double dual_volume(const Body& body, double q, int resolution = 0);

/// c_n (q/n) int_{dK} H^{1/(n+1)} |x|^{q-n} dH^{n-1}.
double dual_derivative_integral(const Body& body, double q, int resolution = 0);

}  // namespace illume
