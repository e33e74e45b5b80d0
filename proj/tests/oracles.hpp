#pragma once

// Independent reference values for the unit tests: adaptive quadrature of the
// defining integrals, never the library's own AGM or Landen code.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

template <class F>
double integrate(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-15);
}

inline double K(double k) {
  return integrate([k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); },
                   0.0, std::numbers::pi / 2);
}

inline double E(double k) {
  return integrate([k](double t) { return std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); },
                   0.0, std::numbers::pi / 2);
}

inline double D(double k) {
  return integrate(
      [k](double t) {
        const double s = std::sin(t);
        return s * s / std::sqrt(1.0 - k * k * s * s);
      },
      0.0, std::numbers::pi / 2);
}

// Amplitude phi with F(phi, k) = z by Newton on the quadrature of F, then cn = cos(phi).
inline double cn(double z, double k) {
  auto F = [k](double phi) {
    return integrate([k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); },
                     0.0, phi);
  };
  double phi = z;
  for (int it = 0; it < 60; ++it) {
    const double s = std::sin(phi);
    const double step = (F(phi) - z) * std::sqrt(1.0 - k * k * s * s);
    phi -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return std::cos(phi);
}

}  // namespace oracle
