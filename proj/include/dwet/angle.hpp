#pragma once

#include <cmath>
#include <numbers>

namespace dwet {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Maps any finite angle onto the canonical range [-pi, pi).
inline double normalize_angle(double a) {
  double r = std::fmod(a + pi, two_pi);
  if (r < 0.0) r += two_pi;
  r -= pi;
  // fmod rounding can land exactly on +pi
  if (r >= pi) r -= two_pi;
  return r;
}

/// Shortest distance between two angles on the circle, in [0, pi].
inline double circular_distance(double a, double b) {
  return std::abs(normalize_angle(a - b));
}

}  // namespace dwet
