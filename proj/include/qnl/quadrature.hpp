#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace qnl {

// Adaptive Simpson integration on a finite interval.
namespace detail {

template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double h = b - a;
  double left = h / 12.0 * (fa + 4.0 * flm + fm);
  double right = h / 12.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-9, int max_depth = 48) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

// Integral over the whole real axis.  The integrand must decay at least as
// 1/x^2; the domain is truncated where |f| has dropped below `floor_value`.
template <class F>
double integrate_real_axis(const F& f, double abs_tol = 1e-9, double floor_value = 1e-12) {
  double hi = 1.0;
  while (hi < 1e9 && (std::abs(f(hi)) > floor_value || std::abs(f(-hi)) > floor_value)) hi *= 2.0;
  // split at 0 so a central peak cannot be stepped over
  return integrate(f, -hi, 0.0, 0.5 * abs_tol) + integrate(f, 0.0, hi, 0.5 * abs_tol);
}

// Semi-infinite integral of a decaying integrand.
template <class F>
double integrate_half_axis(const F& f, double abs_tol = 1e-9, double floor_value = 1e-12) {
  double hi = 1.0;
  while (hi < 1e9 && std::abs(f(hi)) > floor_value) hi *= 2.0;
  return integrate(f, 0.0, hi, abs_tol);
}

// Cauchy principal value of \int_0^inf f(x) dx with a simple pole at x0 > 0.
// The pole is handled by folding: f(x0+s)+f(x0-s) is regular at s=0.
template <class F>
double integrate_half_axis_pv(const F& f, double x0, double abs_tol = 1e-9,
                              double floor_value = 1e-12) {
  if (x0 <= 0.0) throw std::invalid_argument("pv pole must be positive");
  double delta = 0.5 * x0;
  auto folded = [&](double s) { return f(x0 + s) + f(x0 - s); };
  // start the fold off-zero; closer in, the +-C/s cancellation dominates
  double s0 = 1e-8 * x0;
  double core = integrate(folded, s0, delta, abs_tol / 3.0) + s0 * folded(0.5 * s0);
  double left = integrate(f, 0.0, x0 - delta, abs_tol / 3.0);
  double hi = 2.0 * (x0 + delta);
  while (hi < 1e9 && std::abs(f(hi)) > floor_value) hi *= 2.0;
  double right = integrate(f, x0 + delta, hi, abs_tol / 3.0);
  return left + core + right;
}

}  // namespace qnl
