#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace arcparam {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Point e^{i angle} on the unit circle.
inline cplx unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// e^{i x} - 1 without cancellation for small x.
inline cplx expm1_i(double x) {
  const double s = std::sin(0.5 * x);
  return {-2.0 * s * s, std::sin(x)};
}

/// Horner evaluation; coefficients in increasing degree.
template <class Coeffs>
cplx horner(const Coeffs& c, cplx z) {
  cplx acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace arcparam
