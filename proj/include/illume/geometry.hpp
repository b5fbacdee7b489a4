#pragma once

#include "illume/types.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace illume {

/// Quadrature node on the boundary of a convex body.
struct BoundaryPoint {
  Vec x;
  Vec normal;                       // outward unit normal
  std::optional<double> curvature;  // Gauss-Kronecker curvature; empty on ridges
  double weight = 0.0;              // carries the surface element dH^{n-1}
};

enum class GridScheme { UniformAngle, Icosphere };

/// Direction sample of S^{n-1} with quadrature weights summing to |S^{n-1}|.
class DirectionGrid {
 public:
  static DirectionGrid uniform_angle(int count);
  static DirectionGrid icosphere(int levels);

  int dim() const { return scheme_ == GridScheme::UniformAngle ? 2 : 3; }
  GridScheme scheme() const { return scheme_; }
  std::size_t size() const { return units_.size(); }
  const std::vector<Vec>& units() const { return units_; }
  const Vec& unit(std::size_t i) const { return units_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  /// Largest angular distance between neighbouring directions.
  double mesh_width() const { return mesh_width_; }

  /// Piecewise-linear in angle (n=2) or barycentric on the mesh (n=3).
  double interpolate(const std::vector<double>& values, const Vec& u) const;
  /// Icosphere triangle containing u and its barycentric weights (summing to 1).
  std::pair<int, Vec> locate(const Vec& u) const;

 private:
  GridScheme scheme_ = GridScheme::UniformAngle;
  std::vector<Vec> units_;
  std::vector<double> weights_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::vector<int>> vertex_triangles_;
  double mesh_width_ = 0.0;
};

struct Ball {
  Vec center;
  double radius;
};

/// x = center + rotation * diag(semi_axes) * u with |u| = 1.
struct Ellipsoid {
  Vec center;
  Vec semi_axes;
  Mat rotation;
};

struct Polytope {
  std::vector<Vec> vertices;
};

/// rho(t) = a0 + sum_k a[k-1] cos(k t) + b[k-1] sin(k t), a star body about the origin.
struct RadialFourier2D {
  double a0 = 1.0;
  std::vector<double> a;
  std::vector<double> b;

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;
};

using Shape = std::variant<Ball, Ellipsoid, Polytope, RadialFourier2D>;

/// Supporting hyperplane n.x = offset of a polytope. `ring` lists the facet
/// vertices counter-clockwise seen from outside (two entries for an edge in 2D).
struct Facet {
  Vec normal;
  double offset;
  std::vector<int> ring;
};

struct Chord {
  double t_in;
  double t_out;
};

enum class Side { Front, Back };

/// Convex body in R^2 or R^3. Immutable after construction.
class Body {
 public:
  static Body ball(int dim, const Vec& center, double radius);
  static Body ellipsoid(int dim, const Vec& center, const Vec& semi_axes, const Mat& rotation = Mat::Identity());
  /// Keeps only the convex-hull vertices of `vertices`.
  static Body polytope(int dim, std::vector<Vec> vertices);
  /// Convexity is validated on a grid of 4 * `grid` angles.
  static Body radial_fourier(double a0, std::vector<double> a, std::vector<double> b, int grid = 256);

  int dim() const { return dim_; }
  const Shape& shape() const { return shape_; }
  std::string kind() const;

  bool contains(const Vec& x) const;
  bool contains_strict(const Vec& x) const;
  double support(const Vec& u) const;
  /// Radial function about the origin; throws OriginNotInterior.
  double radial(const Vec& u) const;
  /// Parameter interval of {p + t d} inside the body, if the line meets it.
  std::optional<Chord> chord(const Vec& p, const Vec& d) const;

  /// Boundary quadrature. In the plane `resolution` is the node count; in
  /// space it is the number of latitude nodes (twice as many longitudes).
  std::vector<BoundaryPoint> sample_boundary(int resolution) const;
  /// Boundary nodes split at the tangency set seen from z: the front side
  /// ((z - x).n > 0) or the back side. Requires z outside the body.
  std::vector<BoundaryPoint> sample_side(const Vec& z, Side side, int resolution) const;

  /// Throws NotOnBoundary when x is off the boundary by more than tolerance().
  std::optional<double> gauss_kronecker(const Vec& x) const;

  double diameter() const { return diameter_; }
  double tolerance() const { return 1e-9 * diameter_; }
  double volume() const;
  double surface_area() const;
  Vec interior_point() const;
  std::pair<Vec, Vec> bounding_box() const;
  bool origin_interior() const;

  Body translated(const Vec& shift) const;
  Body linear_image(const Mat& map) const;

  const std::vector<Facet>& facets() const { return facets_; }

 private:
  Body(int dim, Shape shape);
  void finish();

  int dim_;
  Shape shape_;
  std::vector<Facet> facets_;
  double diameter_ = 0.0;
  double max_radius_ = 0.0;
};

}  // namespace illume
