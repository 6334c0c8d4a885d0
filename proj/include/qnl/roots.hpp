#pragma once

#include <complex>
#include <vector>

namespace qnl::math {

using cplx = std::complex<double>;

// Roots ordered by descending real part, ties broken by descending
// imaginary part, so solver output is deterministic.
struct ComplexRoots {
  std::vector<cplx> roots;
};

// Both roots of a*p^2 + b*p + c, a != 0.  Throws std::invalid_argument on
// a degenerate leading coefficient.
ComplexRoots solve_quadratic(cplx a, cplx b, cplx c);

// The three roots of p^3 + a2*p^2 + a1*p + a0 (real coefficients), via the
// depressed cubic and Cardano's formula evaluated in complex arithmetic,
// polished by a Newton step.
ComplexRoots solve_cubic(double a2, double a1, double a0);

}  // namespace qnl::math
