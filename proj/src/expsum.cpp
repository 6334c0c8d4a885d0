#include "qnl/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnl::math {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double real_checked(cplx z, double scale) {
  if (std::abs(z.imag()) > 1e-9 * std::max(1.0, scale))
    throw std::runtime_error("ExpSum: imaginary residual too large");
  return z.real();
}

// dense complex polynomials, ascending coefficients
using Poly = std::vector<cplx>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, cplx(0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

cplx poly_eval(const Poly& a, cplx p) {
  cplx acc(0.0);
  for (size_t i = a.size(); i-- > 0;) acc = acc * p + a[i];
  return acc;
}

Poly poly_derivative(const Poly& a) {
  if (a.size() <= 1) return {cplx(0.0)};
  Poly out(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * double(i);
  return out;
}

}  // namespace

double ExpSum::value(double t) const {
  cplx acc(0.0);
  double scale = 0.0;
  for (const auto& tm : terms_) {
    cplx v = tm.weight * std::exp(tm.pole * t);
    for (int k = 0; k < tm.power; ++k) v *= t;
    acc += v;
    scale = std::max(scale, std::abs(v));
  }
  return real_checked(acc, scale);
}

double ExpSum::integral() const {
  cplx acc(0.0);
  double scale = 0.0;
  for (const auto& tm : terms_) {
    cplx v = tm.weight * factorial(tm.power) / std::pow(-tm.pole, tm.power + 1);
    acc += v;
    scale = std::max(scale, std::abs(v));
  }
  return real_checked(acc, scale);
}

double ExpSum::mean_time() const {
  cplx acc(0.0);
  double scale = 0.0;
  for (const auto& tm : terms_) {
    cplx v = tm.weight * factorial(tm.power + 1) / std::pow(-tm.pole, tm.power + 2);
    acc += v;
    scale = std::max(scale, std::abs(v));
  }
  return real_checked(acc, scale);
}

double ExpSum::tail_integral(double t) const {
  // \int_t^inf s^k e^{ps} ds = e^{pt} sum_j (k!/j!) t^j / (-p)^(k+1-j)
  cplx acc(0.0);
  double scale = 0.0;
  for (const auto& tm : terms_) {
    cplx sum(0.0);
    double tj = 1.0;
    for (int j = 0; j <= tm.power; ++j) {
      sum += factorial(tm.power) / factorial(j) * tj / std::pow(-tm.pole, tm.power + 1 - j);
      tj *= t;
    }
    cplx v = tm.weight * std::exp(tm.pole * t) * sum;
    acc += v;
    scale = std::max(scale, std::abs(v));
  }
  return real_checked(acc, scale);
}

cplx ExpSum::laplace(cplx p) const {
  cplx acc(0.0);
  for (const auto& tm : terms_)
    acc += tm.weight * factorial(tm.power) / std::pow(p - tm.pole, tm.power + 1);
  return acc;
}

double ExpSum::slowest_decay() const {
  double worst = -1e300;
  for (const auto& tm : terms_) worst = std::max(worst, tm.pole.real());
  return worst;
}

bool ExpSum::simple_poles() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const ExpTerm& t) { return t.power == 0; });
}

ExpSum heaviside_invert(const ComplexRoots& denominator_roots, cplx numerator) {
  const auto& r = denominator_roots.roots;
  double scale = 0.0;
  for (const auto& p : r) scale = std::max(scale, std::abs(p));
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = i + 1; j < r.size(); ++j)
      if (std::abs(r[i] - r[j]) <= 1e-8 * std::max(scale, 1e-300))
        throw std::invalid_argument("heaviside_invert: repeated root");

  ExpSum out;
  for (size_t k = 0; k < r.size(); ++k) {
    cplx dfdp(1.0);
    for (size_t j = 0; j < r.size(); ++j)
      if (j != k) dfdp *= r[k] - r[j];
    out.add(numerator / dfdp, r[k]);
  }
  return out;
}

ExpSum renewal_correlation(const RenewalLaw& w) {
  if (!w.density.simple_poles())
    throw std::invalid_argument("renewal_correlation: law must have simple poles");
  const auto& terms = w.density.terms();
  const size_t n = terms.size();
  if (n == 0 || n > 3)
    throw std::invalid_argument("renewal_correlation: supported up to three poles");
  if (std::abs(w.density.integral() - 1.0) > 1e-6)
    throw std::invalid_argument("renewal_correlation: waiting-time law not normalized");

  // w(p) = N(p) / D(p) over the common denominator D = prod (p - b_k)
  Poly den = {cplx(1.0)};
  for (const auto& tm : terms) den = poly_mul(den, Poly{-tm.pole, cplx(1.0)});
  Poly num(n, cplx(0.0));
  for (size_t k = 0; k < n; ++k) {
    Poly part = {terms[k].weight};
    for (size_t j = 0; j < n; ++j)
      if (j != k) part = poly_mul(part, Poly{-terms[j].pole, cplx(1.0)});
    for (size_t i = 0; i < part.size(); ++i) num[i] += part[i];
  }

  // G(p) = N / (D - N); normalization puts one denominator root at p = 0
  Poly e(den);
  for (size_t i = 0; i < num.size(); ++i) e[i] -= num[i];
  e[0] = cplx(0.0);
  Poly q(e.begin() + 1, e.end());  // E(p) = p * Q(p), Q monic

  std::vector<cplx> qroots;
  if (q.size() == 3) {
    auto rr = solve_quadratic(q[2], q[1], q[0]);
    qroots = rr.roots;
  } else if (q.size() == 2) {
    qroots = {-q[0] / q[1]};
  }

  Poly eprime = poly_derivative(e);
  ExpSum g;
  g.add(poly_eval(num, 0.0) / poly_eval(q, 0.0), cplx(0.0));  // G(inf) at p = 0

  double scale = 1.0;
  for (const auto& p : qroots) scale = std::max(scale, std::abs(p));
  if (qroots.size() == 2 && std::abs(qroots[0] - qroots[1]) <= 1e-6 * scale) {
    // confluent pair: G = A/p + B/(p - rho) + C/(p - rho)^2
    cplx rho = 0.5 * (qroots[0] + qroots[1]);
    Poly nprime = poly_derivative(num);
    cplx c = poly_eval(num, rho) / rho;
    cplx b = (poly_eval(nprime, rho) * rho - poly_eval(num, rho)) / (rho * rho);
    g.add(b, rho);
    g.add(c, rho, 1);
  } else {
    for (const auto& p : qroots) g.add(poly_eval(num, p) / poly_eval(eprime, p), p);
  }
  return g;
}

double mean_waiting_time(const RenewalLaw& w) { return w.density.mean_time(); }

}  // namespace qnl::math
