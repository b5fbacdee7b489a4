#pragma once

#include "illume/geometry.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace illume {

enum class DomainKind { All, Ball, Box, BodyInterior };

/// Open convex domain U on which a density is positive.
class Domain {
 public:
  static Domain all(int dim);
  static Domain ball(int dim, double radius, const Vec& center = Vec::Zero());
  static Domain box(int dim, const Vec& lo, const Vec& hi);
  static Domain body_interior(const Body& body);

  int dim() const { return dim_; }
  DomainKind kind() const { return kind_; }
  bool bounded() const { return kind_ != DomainKind::All; }
  bool contains(const Vec& x) const;
  /// Sub-interval of [t0, t1] where p + t d lies in the closure of U.
  std::optional<Chord> clip(const Vec& p, const Vec& d, double t0, double t1) const;
  /// Bounding box of a bounded domain; a box of half-width `fallback` otherwise.
  std::pair<Vec, Vec> bounds(double fallback = 10.0) const;

  double radius() const { return radius_; }
  const Vec& center() const { return center_; }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }
  const Body* body() const { return body_.get(); }

 private:
  int dim_ = 2;
  DomainKind kind_ = DomainKind::All;
  double radius_ = 0.0;
  Vec center_ = Vec::Zero();
  Vec lo_ = Vec::Zero();
  Vec hi_ = Vec::Zero();
  std::shared_ptr<const Body> body_;
};

/// Positive continuous weight on a domain, extended by zero outside it.
class Density {
 public:
  using Field = std::function<double(const Vec&)>;

  /// Checks positivity on `checks` Halton points of the domain.
  Density(int dim, Domain domain, Field field, std::string label, std::optional<double> constant = std::nullopt,
          int checks = 10000);

  double operator()(const Vec& x) const { return domain_.contains(x) ? field_(x) : 0.0; }
  /// Field value without the domain test.
  double raw(const Vec& x) const { return field_(x); }

  int dim() const { return dim_; }
  const Domain& domain() const { return domain_; }
  const std::string& label() const { return label_; }
  /// Set when the density is constant on its domain.
  std::optional<double> constant() const { return constant_; }
  /// Radius beyond which illumination queries report chart overflow.
  std::optional<double> chart_cutoff() const { return chart_cutoff_; }
  Density with_chart_cutoff(double radius) const;
  Density scaled(double factor) const;

 private:
  int dim_;
  Domain domain_;
  Field field_;
  std::string label_;
  std::optional<double> constant_;
  std::optional<double> chart_cutoff_;
};

Density uniform_density(int dim);
Density uniform_density(int dim, const Domain& domain);
/// phi_lambda(p) = (1 + lambda |p|^2)^{-(n+1)/2} on the projective chart.
Density space_form_density(double lambda, int dim, double chart_cutoff = 1e3);
/// (|q|/n) |x|^{q-n}, frozen at its value on |x| = rho_floor inside that radius.
Density dual_weight(double q, double rho_floor, int dim);
Density custom_density(int dim, const Domain& domain, Density::Field field, std::string label);
/// x -> phi(x - shift) on the shifted domain.
Density translated_density(const Density& phi, const Vec& shift);

/// int_0^1 phi((1 - s) a + s b) s^power ds with phi zero outside its domain.
double segment_moment(const Density& phi, const Vec& a, const Vec& b, int power, double tol = 1e-12);

struct QuadratureSpec {
  enum class Method { Tensor, MonteCarlo };
  Method method = Method::Tensor;
  int resolution = 512;
  std::uint64_t samples = 200000;
  std::uint64_t seed = 1;
  double target_tol = 1e-12;
};

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// vol^phi(K). The tensor route integrates cones from an interior point.
VolumeEstimate weighted_volume(const Body& body, const Density& phi, const QuadratureSpec& spec = {});

}  // namespace illume
