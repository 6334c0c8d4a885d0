#include "qnl/integrals.hpp"

#include <cmath>

#include "qnl/quadrature.hpp"

namespace qnl::math {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

// \int_{-inf}^{inf} f(x) dx with x = tan(theta); integrands here decay at
// least as 1/x^2 so the transformed integrand is bounded.
template <class F>
double integrate_compactified(const F& f, double abs_tol = 1e-10) {
  auto g = [&f](double th) {
    double c = std::cos(th);
    if (std::abs(c) < 1e-18) return 0.0;
    double x = std::tan(th);
    double sec2 = 1.0 / (c * c);
    return f(x) * sec2;
  };
  return qnl::integrate(g, -0.5 * kPi, 0.0, 0.5 * abs_tol) +
         qnl::integrate(g, 0.0, 0.5 * kPi, 0.5 * abs_tol);
}

}  // namespace

double lorentz_weight(double x, double g) {
  if (g <= 1.0) throw std::invalid_argument("lorentz_weight: requires g > 1");
  double a = g - 1.0;
  return (a / kPi) / (a * a + x * x);
}

bool imn_supported(int m, int n) {
  if (m == 1 && (n == 0 || n == 2)) return true;
  if (m == 2 && (n == 0 || n == 1)) return true;
  if (m == 3 && n >= 0 && n <= 4) return true;
  return false;
}

double imn_closed(int m, int n, double g, double y) {
  if (g <= 1.0) throw std::invalid_argument("imn_closed: requires g > 1");
  const double y2 = y * y, y4 = y2 * y2, g2 = g * g, g3 = g2 * g;
  if (m == 1 && n == 0) return 8.0 * g;
  if (m == 1 && n == 2) return 8.0 * y2 + 8.0 * g * (g - 1.0);
  if (m == 2 && n == 0) return 4.0 * y2 * (g - 1.0) + 4.0 * g2 * (g + 1.0);
  if (m == 2 && n == 1) return 8.0 * g * y;
  if (m == 3 && n == 0)
    return 3.0 * (g - 1.0) * y4 + 6.0 * g * (g2 - 1.0) * y2 + g3 * (3.0 * g2 + 3.0 * g + 2.0);
  if (m == 3 && n == 1) return 2.0 * y * (y2 * (g - 1.0) + g2 * (g + 3.0));
  if (m == 3 && n == 2)
    return (g - 1.0) * y4 + 2.0 * g * (g2 + 3.0) * y2 + g3 * (g - 1.0) * (g + 2.0);
  if (m == 3 && n == 3) return 2.0 * y * ((3.0 * g + 1.0) * y2 + 3.0 * g2 * (g - 1.0));
  if (m == 3 && n == 4)
    return (3.0 * g + 5.0) * y4 + 6.0 * g * (g2 - 1.0) * y2 + g3 * (3.0 * g - 2.0) * (g - 1.0);
  throw std::invalid_argument("imn_closed: unsupported (m, n) index");
}

double imn_quadrature(int m, int n, double g, double y) {
  if (!imn_supported(m, n)) throw std::invalid_argument("imn_quadrature: unsupported (m, n) index");
  if (g <= 1.0) throw std::invalid_argument("imn_quadrature: requires g > 1");
  auto f = [=](double x) {
    return lorentz_weight(x - y, g) * std::pow(x, n) / std::pow(1.0 + x * x, m);
  };
  return 8.0 * std::pow(g * g + y * y, m) * integrate_compactified(f);
}

double unit_lorentzian_integral() {
  return integrate_compactified([](double x) { return 1.0 / (1.0 + x * x); });
}

double lineshape_norm_quadrature(double a, bool weighted_numerator) {
  if (a <= 0.0) throw std::invalid_argument("lineshape_norm: requires a > 0");
  auto f = [=](double x) {
    double u = 1.0 - a * x * x;
    double numer = weighted_numerator ? a * x * x : 1.0;
    return numer / (u * u + x * x);
  };
  return integrate_compactified(f) / kPi;
}

double sqrt_pole_integral_closed(double a) {
  if (a == 0.0) throw std::invalid_argument("sqrt_pole_integral: requires a != 0");
  if (a < 0.0) return 1.0 / (1.0 + std::sqrt(-a));
  return 1.0 / (1.0 + a);
}

double sqrt_pole_integral_quadrature(double a) {
  if (a == 0.0) throw std::invalid_argument("sqrt_pole_integral: requires a != 0");
  // substitute x = u^2 so the integrand decays as 1/u^2 and a > 0 leaves a
  // simple pole at u = sqrt(a)
  auto f = [=](double u) { return (2.0 / kPi) * u * u / ((u * u + 1.0) * (u * u - a)); };
  if (a < 0.0) {
    auto g = [&](double th) {
      double c = std::cos(th);
      if (std::abs(c) < 1e-18) return 0.0;
      return f(std::tan(th)) / (c * c);
    };
    return qnl::integrate(g, 0.0, 0.5 * kPi, 1e-10);
  }
  double u0 = std::sqrt(a);
  // fold the pole, then compactify the outer tail; the fold starts a little
  // off zero where the +-C/s cancellation still leaves ~8 good digits, and
  // the skipped strip enters at midpoint order
  auto folded = [&](double s) { return f(u0 + s) + f(u0 - s); };
  const double s0 = 1e-8 * u0;
  double core = qnl::integrate(folded, s0, 0.5 * u0, 1e-10) + s0 * folded(0.5 * s0);
  double left = qnl::integrate(f, 0.0, 0.5 * u0, 1e-10);
  double th0 = std::atan(1.5 * u0);
  auto outer = [&](double th) {
    double c = std::cos(th);
    if (std::abs(c) < 1e-18) return 0.0;
    return f(std::tan(th)) / (c * c);
  };
  double right = qnl::integrate(outer, th0, 0.5 * kPi, 1e-10);
  return left + core + right;
}

}  // namespace qnl::math
