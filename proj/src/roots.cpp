#include "qnl/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnl::math {

namespace {

void sort_roots(std::vector<cplx>& r) {
  std::sort(r.begin(), r.end(), [](const cplx& u, const cplx& v) {
    if (u.real() != v.real()) return u.real() > v.real();
    return u.imag() > v.imag();
  });
}

cplx cbrt_principal(cplx z) {
  if (z == cplx(0.0)) return 0.0;
  return std::pow(z, 1.0 / 3.0);
}

}  // namespace

ComplexRoots solve_quadratic(cplx a, cplx b, cplx c) {
  if (std::abs(a) == 0.0) throw std::invalid_argument("solve_quadratic: leading coefficient is zero");
  cplx disc = std::sqrt(b * b - 4.0 * a * c);
  // pick the sign that avoids cancellation in b + disc
  if (std::real(std::conj(b) * disc) < 0.0) disc = -disc;
  cplx q = -0.5 * (b + disc);
  std::vector<cplx> r;
  if (std::abs(q) == 0.0) {
    r = {cplx(0.0), cplx(0.0)};
  } else {
    r = {q / a, c / q};
  }
  sort_roots(r);
  return {r};
}

ComplexRoots solve_cubic(double a2, double a1, double a0) {
  if (!(std::isfinite(a2) && std::isfinite(a1) && std::isfinite(a0)))
    throw std::invalid_argument("solve_cubic: non-finite coefficient");

  // depressed cubic t^3 + 3q t - 2r with p = t - a2/3
  const double q = a1 / 3.0 - a2 * a2 / 9.0;
  const double r = a1 * a2 / 6.0 - a0 / 2.0 - a2 * a2 * a2 / 27.0;
  const cplx s = std::sqrt(cplx(q * q * q + r * r, 0.0));

  // of the two Cardano cube roots pick the larger in magnitude; the other
  // follows from A*B = -q, which is stable against cancellation
  cplx A = cbrt_principal(std::abs(cplx(r) + s) >= std::abs(cplx(r) - s) ? cplx(r) + s
                                                                         : cplx(r) - s);
  cplx B;
  if (std::abs(A) == 0.0) {
    A = cbrt_principal(2.0 * r);
    B = 0.0;
  } else {
    B = -q / A;
  }

  const cplx w(-0.5, 0.8660254037844386467637231707529);  // exp(2*pi*i/3)
  const double shift = a2 / 3.0;
  std::vector<cplx> roots = {A + B - shift, w * A + std::conj(w) * B - shift,
                             std::conj(w) * A + w * B - shift};

  // one Newton polish per root to push back-substitution residuals to
  // machine level
  for (auto& p : roots) {
    for (int it = 0; it < 2; ++it) {
      cplx f = ((p + a2) * p + a1) * p + a0;
      cplx df = (3.0 * p + 2.0 * a2) * p + a1;
      if (std::abs(df) == 0.0) break;
      p -= f / df;
    }
    if (std::abs(p.imag()) < 1e-13 * (1.0 + std::abs(p.real()))) p = cplx(p.real(), 0.0);
  }

  // real coefficients: complex roots come in conjugate pairs; snap them so
  // the ordering convention cannot flip on roundoff ties
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      cplx &u = roots[std::size_t(i)], &v = roots[std::size_t(j)];
      if (u.imag() != 0.0 && v.imag() != 0.0 &&
          std::abs(u - std::conj(v)) < 1e-10 * (1.0 + std::abs(u))) {
        double re = 0.5 * (u.real() + v.real());
        double im = 0.5 * (std::abs(u.imag()) + std::abs(v.imag()));
        u = cplx(re, u.imag() > 0.0 ? im : -im);
        v = cplx(re, v.imag() > 0.0 ? im : -im);
      }
    }

  sort_roots(roots);
  return {roots};
}

}  // namespace qnl::math
