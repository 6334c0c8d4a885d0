#pragma once

#include <stdexcept>

namespace qnl::math {

// Lorentzian weight of half-width (g - 1), unit area; requires g > 1.
double lorentz_weight(double x, double g);

// I_mn = 8 (g^2+y^2)^m \int dx w(x-y) x^n / (1+x^2)^m for the tabulated
// (m, n) set; throws std::invalid_argument outside it.
double imn_closed(int m, int n, double g, double y);

// The same integral by adaptive quadrature (x = tan(theta) compactification,
// no truncation tail).
double imn_quadrature(int m, int n, double g, double y);

bool imn_supported(int m, int n);

// \int dx / (1 + x^2) evaluated numerically; equals pi.
double unit_lorentzian_integral();

// (1/pi) \int dx / ((1-a x^2)^2 + x^2)  and the companion with an a x^2
// numerator; both equal 1 for a > 0.
double lineshape_norm_quadrature(double a, bool weighted_numerator);

// (1/pi) \int_0^inf sqrt(x) / ((x+1)(x-a)) dx:
//   1/(1+sqrt(-a)) for a < 0, and 1/(1+a) in principal value for a > 0.
double sqrt_pole_integral_closed(double a);
double sqrt_pole_integral_quadrature(double a);

}  // namespace qnl::math
