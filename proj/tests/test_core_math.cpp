#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qnl/bicomplex.hpp"
#include "qnl/expsum.hpp"
#include "qnl/integrals.hpp"
#include "qnl/quadrature.hpp"
#include "qnl/random.hpp"
#include "qnl/roots.hpp"

using namespace qnl;
using math::BiComplex;
using math::cplx;

namespace {

cplx eval_quadratic(cplx a, cplx b, cplx c, cplx p) { return (a * p + b) * p + c; }

double cubic_residual(double a2, double a1, double a0, cplx p) {
  return std::abs(((p + a2) * p + a1) * p + a0);
}

double coeff_scale(double a2, double a1, double a0) {
  return std::max({1.0, std::abs(a2), std::abs(a1), std::abs(a0)});
}

}  // namespace

TEST_CASE("quadratic solver: fixed cases") {
  auto r1 = math::solve_quadratic(1.0, 0.0, 1.0);
  CHECK(r1.roots[0] == cplx(0.0, 1.0));
  CHECK(r1.roots[1] == cplx(0.0, -1.0));

  auto r2 = math::solve_quadratic(1.0, -3.0, 2.0);
  CHECK(r2.roots[0].real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r2.roots[1].real() == doctest::Approx(1.0).epsilon(1e-14));

  // damped-oscillator coefficients at the critically damped point
  double a = 0.5, g = 2.0;
  auto r3 = math::solve_quadratic(1.0, 2.0 * (1.0 + a) * g, 1.0 + 4.0 * a * g * g);
  for (auto p : r3.roots) CHECK(std::abs(eval_quadratic(1.0, 6.0, 9.0, p)) < 1e-12);

  CHECK_THROWS_AS(math::solve_quadratic(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("quadratic solver: random back-substitution") {
  Rng rng(7);
  for (int it = 0; it < 1000; ++it) {
    cplx a(rng.normal(), rng.normal());
    if (std::abs(a) < 1e-3) continue;
    cplx b(rng.normal(), rng.normal()), c(rng.normal(), rng.normal());
    auto r = math::solve_quadratic(a, b, c);
    double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
    for (auto p : r.roots) CHECK(std::abs(eval_quadratic(a, b, c, p)) < 1e-10 * scale);
  }
}

TEST_CASE("cubic solver: cube roots of unity") {
  auto r = math::solve_cubic(0.0, 0.0, -1.0);
  CHECK(r.roots[0].real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.roots[0].imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.roots[1].real() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(r.roots[1].imag() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK(r.roots[2].imag() == doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("cubic solver: waiting-law denominator at gamma = 2") {
  auto r = math::solve_cubic(6.0, 9.0, 2.0);
  // -2 + sqrt(3), -2, -2 - sqrt(3)
  CHECK(r.roots[0].real() == doctest::Approx(-2.0 + std::sqrt(3.0)).epsilon(1e-12));
  CHECK(r.roots[1].real() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(r.roots[2].real() == doctest::Approx(-2.0 - std::sqrt(3.0)).epsilon(1e-12));
  for (auto p : r.roots) CHECK(std::abs(p.imag()) == 0.0);
}

TEST_CASE("cubic solver: reconstructed from known roots") {
  Rng rng(11);
  for (int it = 0; it < 1000; ++it) {
    // one real root and either two real or a conjugate pair
    double p1 = 4.0 * rng.normal();
    cplx p2, p3;
    if (rng.bernoulli(0.5)) {
      p2 = cplx(2.0 * rng.normal(), 0.0);
      p3 = cplx(2.0 * rng.normal(), 0.0);
    } else {
      p2 = cplx(2.0 * rng.normal(), 2.0 * std::abs(rng.normal()) + 1e-3);
      p3 = std::conj(p2);
    }
    double a2 = -(p1 + p2 + p3).real();
    double a1 = (p1 * (p2 + p3) + p2 * p3).real();
    double a0 = -(p1 * p2 * p3).real();
    auto r = math::solve_cubic(a2, a1, a0);
    double scale = coeff_scale(a2, a1, a0);
    for (auto p : r.roots) CHECK(cubic_residual(a2, a1, a0, p) < 1e-10 * scale);

    // sorted recovery against the seeded multiset
    std::vector<cplx> want = {cplx(p1, 0.0), p2, p3};
    std::sort(want.begin(), want.end(), [](cplx u, cplx v) {
      return u.real() != v.real() ? u.real() > v.real() : u.imag() > v.imag();
    });
    for (int i = 0; i < 3; ++i) CHECK(std::abs(r.roots[std::size_t(i)] - want[std::size_t(i)]) < 1e-9 * scale);
  }
}

TEST_CASE("heaviside inversion: unit pole") {
  auto law = math::heaviside_invert({{cplx(-1.0, 0.0)}}, 1.0);
  for (double t : {0.0, 0.3, 2.0}) CHECK(law.value(t) == doctest::Approx(std::exp(-t)).epsilon(1e-14));
}

TEST_CASE("heaviside inversion: step response 1 - exp(-t)") {
  auto f = math::heaviside_invert({{cplx(0.0, 0.0), cplx(-1.0, 0.0)}}, 1.0);
  for (double t : {0.0, 0.5, 1.0, 4.0})
    CHECK(f.value(t) == doctest::Approx(1.0 - std::exp(-t)).epsilon(1e-13));
}

TEST_CASE("heaviside inversion: three-pole waiting law matches special form") {
  auto roots = math::solve_cubic(6.0, 9.0, 2.0);
  auto w = math::heaviside_invert(roots, 2.0);
  auto special = [](double t) {
    return (std::exp(-(2.0 - std::sqrt(3.0)) * t) + std::exp(-(2.0 + std::sqrt(3.0)) * t) -
            2.0 * std::exp(-2.0 * t)) / 3.0;
  };
  for (double t = 0.0; t < 8.0; t += 0.25) CHECK(w.value(t) == doctest::Approx(special(t)).epsilon(1e-11));
  CHECK(w.integral() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("heaviside inversion rejects repeated roots") {
  CHECK_THROWS_AS(math::heaviside_invert({{cplx(-1.0, 0.0), cplx(-1.0, 0.0)}}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("laplace round trip reproduces the rational function") {
  Rng rng(3);
  for (int it = 0; it < 50; ++it) {
    std::vector<cplx> roots = {cplx(-0.2 - std::abs(rng.normal()), 0.0)};
    cplx pair(-0.5 - std::abs(rng.normal()), 1.0 + std::abs(rng.normal()));
    roots.push_back(pair);
    roots.push_back(std::conj(pair));
    double numer = 0.5 + rng.uniform();
    auto f = math::heaviside_invert({roots}, numer);
    for (int k = 0; k < 20; ++k) {
      cplx p(rng.uniform() * 3.0, rng.normal());
      cplx denom(1.0, 0.0);
      for (auto r : roots) denom *= p - r;
      cplx direct = numer / denom;
      CHECK(std::abs(f.laplace(p) - direct) < 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("renewal correlation of the exponential law is flat") {
  math::ExpSum w;
  w.add(1.0, cplx(-1.0, 0.0));
  auto g = math::renewal_correlation({w});
  for (double t : {0.0, 0.7, 3.0, 10.0}) CHECK(g.value(t) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("renewal correlation handles the confluent laser law") {
  // gamma = 2, 2a = 1: correlation (2/9)(1 - (1 + 3t) e^{-3t})
  auto roots = math::solve_cubic(6.0, 9.0, 2.0);
  auto w = math::heaviside_invert(roots, 2.0);
  auto g = math::renewal_correlation({w});
  auto expect = [](double t) { return 2.0 * (1.0 - (1.0 + 3.0 * t) * std::exp(-3.0 * t)) / 9.0; };
  for (double t = 0.0; t < 6.0; t += 0.2) CHECK(g.value(t) == doctest::Approx(expect(t)).epsilon(1e-9));
}

TEST_CASE("renewal correlation: constant weight is the inverse mean") {
  Rng rng(17);
  for (int it = 0; it < 200; ++it) {
    // random mixture of two or three exponentials (always a valid law)
    int n = 2 + (rng.bernoulli(0.5) ? 1 : 0);
    std::vector<double> rates, weights;
    double wsum = 0.0;
    for (int i = 0; i < n; ++i) {
      rates.push_back(0.2 + 3.0 * rng.uniform());
      weights.push_back(0.1 + rng.uniform());
      wsum += weights.back();
    }
    math::ExpSum w;
    for (int i = 0; i < n; ++i)
      w.add(weights[std::size_t(i)] / wsum * rates[std::size_t(i)], cplx(-rates[std::size_t(i)], 0.0));
    math::RenewalLaw law{w};
    auto g = math::renewal_correlation(law);
    // the pole at zero is first by construction
    CHECK(g.terms().front().pole == cplx(0.0, 0.0));
    CHECK(g.terms().front().weight.real() ==
          doctest::Approx(1.0 / math::mean_waiting_time(law)).epsilon(1e-9));
    CHECK(std::abs(g.terms().front().weight.imag()) < 1e-12);
  }
}

TEST_CASE("renewal correlation rejects unnormalized laws") {
  math::ExpSum w;
  w.add(1.5, cplx(-1.0, 0.0));
  CHECK_THROWS_AS(math::renewal_correlation({w}), std::invalid_argument);
}

TEST_CASE("mean waiting time") {
  math::ExpSum unit;
  unit.add(1.0, cplx(-1.0, 0.0));
  CHECK(math::mean_waiting_time({unit}) == doctest::Approx(1.0).epsilon(1e-14));

  // synthetic three-pole law vs numerical quadrature of t w(t)
  auto roots = math::solve_cubic(6.0, 9.0, 2.0);
  auto w = math::heaviside_invert(roots, 2.0);
  double closed = math::mean_waiting_time({w});
  double quad = integrate_half_axis([&](double t) { return t * w.value(t); }, 1e-10, 1e-14);
  CHECK(closed == doctest::Approx(quad).epsilon(1e-6));
}

TEST_CASE("bi-complex algebra") {
  BiComplex id{1.0, 0.0, 0.0, 0.0};
  BiComplex u{0.3, -1.2, 0.7, 2.1};
  auto v = id * u;
  CHECK(v.a == u.a);
  CHECK(v.b == u.b);
  CHECK(v.c == u.c);
  CHECK(v.d == u.d);

  // i1 * i2 = j and j^2 = 1
  BiComplex i1{0.0, 1.0, 0.0, 0.0}, i2{0.0, 0.0, 1.0, 0.0};
  auto j = i1 * i2;
  CHECK(j.d == 1.0);
  auto j2 = j * j;
  CHECK(j2.a == 1.0);

  CHECK_FALSE(math::bicomplex_invertible({1.0, 0.0, 0.0, 1.0}));
  CHECK_THROWS_AS(math::bicomplex_invert({1.0, 0.0, 0.0, 1.0}), std::invalid_argument);

  Rng rng(23);
  for (int it = 0; it < 500; ++it) {
    BiComplex x{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    if (!math::bicomplex_invertible(x)) continue;
    auto inv = math::bicomplex_invert(x);
    auto p = inv * x;
    CHECK(std::abs(p.a - 1.0) < 1e-12);
    CHECK(std::abs(p.b) < 1e-12);
    CHECK(std::abs(p.c) < 1e-12);
    CHECK(std::abs(p.d) < 1e-12);
  }
}

TEST_CASE("bi-complex algebra is associative and commutative") {
  Rng rng(29);
  for (int it = 0; it < 500; ++it) {
    BiComplex x{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    BiComplex y{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    BiComplex z{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    auto lhs = (x * y) * z;
    auto rhs = x * (y * z);
    CHECK(std::abs(lhs.a - rhs.a) < 1e-12);
    CHECK(std::abs(lhs.b - rhs.b) < 1e-12);
    CHECK(std::abs(lhs.c - rhs.c) < 1e-12);
    CHECK(std::abs(lhs.d - rhs.d) < 1e-12);
    auto xy = x * y;
    auto yx = y * x;
    CHECK(std::abs(xy.a - yx.a) < 1e-12);
    CHECK(std::abs(xy.b - yx.b) < 1e-12);
    CHECK(std::abs(xy.c - yx.c) < 1e-12);
    CHECK(std::abs(xy.d - yx.d) < 1e-12);
  }
}

TEST_CASE("modulated response matches the time-domain circuit equation") {
  // parallel G-C: i = G v + C dv/dt, admittance Y(p) = G + C p
  double G = 0.8, C = 1.7;
  math::RationalFunction y{{G, C}, {1.0}};
  double omega = 5.0, Omega = 0.35;
  BiComplex V{0.4, -0.2, 0.9, 0.1};
  auto I = math::modulated_response(y, omega, Omega, V);
  for (double t : {0.0, 0.13, 0.77, 2.4}) {
    double i_pred = math::real_signal(I, omega, Omega, t);
    double h = 1e-6;
    double dv = (math::real_signal(V, omega, Omega, t + h) -
                 math::real_signal(V, omega, Omega, t - h)) / (2.0 * h);
    double i_direct = G * math::real_signal(V, omega, Omega, t) + C * dv;
    CHECK(i_pred == doctest::Approx(i_direct).epsilon(1e-6));
  }
}

TEST_CASE("reference integrals: closed forms against quadrature on a grid") {
  const int ms[] = {1, 1, 2, 2, 3, 3, 3, 3, 3};
  const int ns[] = {0, 2, 0, 1, 0, 1, 2, 3, 4};
  for (double g : {1.1, 1.8, 2.5, 3.2, 4.0}) {
    for (double y : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      for (int i = 0; i < 9; ++i) {
        double closed = math::imn_closed(ms[i], ns[i], g, y);
        double quad = math::imn_quadrature(ms[i], ns[i], g, y);
        CHECK(std::abs(quad - closed) < 1e-6 * std::max(1.0, std::abs(closed)));
      }
    }
  }
  CHECK_THROWS_AS(math::imn_closed(4, 0, 2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(math::imn_quadrature(2, 2, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("reference integrals: fixed values") {
  CHECK(math::unit_lorentzian_integral() == doctest::Approx(3.141592653589793).epsilon(1e-10));
  CHECK(math::imn_closed(1, 0, 2.0, 0.5) == doctest::Approx(16.0));
  CHECK(math::imn_closed(2, 1, 2.0, 0.5) == doctest::Approx(8.0));
  // lineshape normalization, both numerator choices
  for (double a : {0.5, 2.0}) {
    CHECK(math::lineshape_norm_quadrature(a, false) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(math::lineshape_norm_quadrature(a, true) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("sqrt-pole integral") {
  CHECK(math::sqrt_pole_integral_closed(-4.0) == doctest::Approx(1.0 / 3.0));
  CHECK(math::sqrt_pole_integral_quadrature(-4.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  for (double a : {-2.0, -0.5, 0.7, 3.0}) {
    CHECK(math::sqrt_pole_integral_quadrature(a) ==
          doctest::Approx(math::sqrt_pole_integral_closed(a)).epsilon(1e-7));
  }
  CHECK_THROWS_AS(math::sqrt_pole_integral_closed(0.0), std::invalid_argument);
}
