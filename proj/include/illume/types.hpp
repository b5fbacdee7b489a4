#pragma once

#include <Eigen/Dense>

#include <numbers>
#include <stdexcept>
#include <string>

namespace illume {

/// Points and vectors in R^2 or R^3. Planar quantities keep the third
/// coordinate at zero; the owning body or density carries the dimension.
using Vec = Eigen::Vector3d;
using Mat = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

enum class ErrorCode {
  InvalidParameter,
  OriginNotInterior,
  NotOnBoundary,
  UnsupportedDimension,
  UnsupportedBody,
  ProfileUnbounded,
  OutOfChart,
  ChartOverflow,
  DegenerateTriangle,
  PointOnBoundary,
  BodyTouchesDomain,
  GeodesicMeetsBody,
  DeltaOutOfRange,
  Saturated,
  NumericalFailure,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Volume of the Euclidean unit ball in R^k (k may be 0).
double unit_ball_volume(int k);

inline Vec vec2(double x, double y) { return Vec(x, y, 0.0); }

}  // namespace illume
