#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qnl::math {

// Number a + b*i1 + c*i2 + d*j with i1^2 = i2^2 = -1, i1*i2 = i2*i1 = j,
// j^2 = +1.  i1 tracks the optical carrier, i2 the modulation sideband.
struct BiComplex {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  friend BiComplex operator+(const BiComplex& u, const BiComplex& v) {
    return {u.a + v.a, u.b + v.b, u.c + v.c, u.d + v.d};
  }
  friend BiComplex operator-(const BiComplex& u, const BiComplex& v) {
    return {u.a - v.a, u.b - v.b, u.c - v.c, u.d - v.d};
  }
  friend BiComplex operator*(double s, const BiComplex& u) {
    return {s * u.a, s * u.b, s * u.c, s * u.d};
  }
  friend BiComplex operator*(const BiComplex& u, const BiComplex& v) {
    return {u.a * v.a - u.b * v.b - u.c * v.c + u.d * v.d,
            u.a * v.b + u.b * v.a - u.c * v.d - u.d * v.c,
            u.a * v.c + u.c * v.a - u.b * v.d - u.d * v.b,
            u.a * v.d + u.d * v.a + u.b * v.c + u.c * v.b};
  }
};

inline bool bicomplex_invertible(const BiComplex& u) {
  double A = u.a * u.a + u.b * u.b + u.c * u.c + u.d * u.d;
  double B = 2.0 * (u.a * u.d - u.b * u.c);
  return std::abs(A) != std::abs(B);
}

// (a - b i1 - c i2 + d j) * u = A + B j with real A, B; divide out A^2 - B^2.
inline BiComplex bicomplex_invert(const BiComplex& u) {
  double A = u.a * u.a + u.b * u.b + u.c * u.c + u.d * u.d;
  double B = 2.0 * (u.a * u.d - u.b * u.c);
  double det = A * A - B * B;
  if (det == 0.0 || std::abs(det) < 1e-300)
    throw std::invalid_argument("bicomplex_invert: non-invertible");
  BiComplex conj{u.a, -u.b, -u.c, u.d};
  BiComplex scaled = conj * BiComplex{A / det, 0.0, 0.0, -B / det};
  return scaled;
}

// Rational function with real coefficients (ascending), evaluated in
// bi-complex arithmetic so it can take p1 + p2 as argument.
struct RationalFunction {
  std::vector<double> num;
  std::vector<double> den;

  BiComplex eval(const BiComplex& p) const {
    auto horner = [&p](const std::vector<double>& c) {
      BiComplex acc{};
      for (size_t i = c.size(); i-- > 0;) acc = acc * p + BiComplex{c[i], 0.0, 0.0, 0.0};
      return acc;
    };
    return horner(num) * bicomplex_invert(horner(den));
  }
};

// Response of an admittance Y(p) to a modulated source V exp((p1+p2) t) with
// p1 = omega*i1, p2 = Omega*i2:  I = Y(p1 + p2) V.
inline BiComplex modulated_response(const RationalFunction& admittance, double omega, double Omega,
                                    const BiComplex& V) {
  BiComplex p{0.0, omega, Omega, 0.0};
  return admittance.eval(p) * V;
}

// exp((p1 + p2) t) = (cos wt + i1 sin wt)(cos Wt + i2 sin Wt)
inline BiComplex modulated_carrier(double omega, double Omega, double t) {
  BiComplex c1{std::cos(omega * t), std::sin(omega * t), 0.0, 0.0};
  BiComplex c2{std::cos(Omega * t), 0.0, std::sin(Omega * t), 0.0};
  return c1 * c2;
}

// The physical signal is the sum of V e^{(p1+p2)t} and its three sign-flipped
// companions, i.e. four times the scalar part.
inline double real_signal(const BiComplex& V, double omega, double Omega, double t) {
  return 4.0 * (V * modulated_carrier(omega, Omega, t)).a;
}

}  // namespace qnl::math
