#pragma once

#include <cmath>
#include <numbers>

namespace qceq {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Default tolerance for comparing angles.
inline constexpr double kEpsAngle = 1e-9;

// Reduce into [0, 2pi). Values within eps of 2pi collapse to 0.
inline double wrap_2pi(double a, double eps = kEpsAngle) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi - eps) r = 0.0;
  if (r < 0) r = 0.0;
  return r;
}

// Reduce into [0, m) for an arbitrary positive modulus.
inline double wrap_mod(double a, double m, double eps = kEpsAngle) {
  double r = std::fmod(a, m);
  if (r < 0) r += m;
  if (r >= m - eps) r = 0.0;
  return r;
}

// Distance between a and b on the circle of circumference m.
inline double circ_dist(double a, double b, double m = kTwoPi) {
  double d = std::fmod(std::abs(a - b), m);
  return std::min(d, m - d);
}

inline bool angle_eq_mod(double a, double b, double m = kTwoPi, double eps = kEpsAngle) {
  return circ_dist(a, b, m) <= eps;
}

inline bool angle_eq(double a, double b, double eps = kEpsAngle) { return std::abs(a - b) <= eps; }

}  // namespace qceq
