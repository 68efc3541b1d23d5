#pragma once

#include <cmath>
#include <numbers>

namespace tvgp {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Wraps an angle into the half-open branch (-pi, pi].
inline double wrap_angle(double x) {
  double r = std::remainder(x, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

}  // namespace tvgp
