#pragma once

#include "illume/types.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace illume {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule of the given order (1..128).
const GaussRule& gauss_legendre(int order);

/// Composite Gauss-Legendre over [a, b] split into `panels` equal panels.
template <class F>
double integrate_composite(F&& f, double a, double b, int order, int panels) {
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    }
    total += 0.5 * h * panel;
  }
  return total;
}

/// Adaptive Gauss-Kronrod (7/15) with relative tolerance `tol`.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol = 1e-11, unsigned max_depth = 12) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, tol);
}

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Counter-based uniform variate in [0, 1): a pure function of
/// (seed, index, stream), so parallel sampling is schedule-independent.
double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint32_t stream);

/// Radical inverse in the given prime base (Halton component).
double halton(std::uint64_t index, unsigned base);

/// Runs body(i) for i in [0, count) across hardware threads. Each index is
/// handled exactly once; callers write results into per-index slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace illume
