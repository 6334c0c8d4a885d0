#pragma once

#include <complex>
#include <vector>

#include "qnl/roots.hpp"

namespace qnl::math {

// One term weight * t^power * exp(pole * t).  power is 0 except where a
// confluent (repeated-pole) limit demands t*exp or a short power series.
struct ExpTerm {
  cplx weight;
  cplx pole;
  int power = 0;
};

// Finite sum of exponential terms on t >= 0, closed under the Laplace-domain
// algebra used by the renewal machinery.  Values are real up to roundoff;
// value() checks and discards the imaginary residual.
class ExpSum {
 public:
  ExpSum() = default;
  explicit ExpSum(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<ExpTerm>& terms() const { return terms_; }
  void add(cplx weight, cplx pole, int power = 0) { terms_.push_back({weight, pole, power}); }

  double value(double t) const;

  // \int_0^infty f(t) dt, in closed form.  Sum of -weight/pole for plain
  // exponential terms.
  double integral() const;

  // \int_0^infty t f(t) dt, in closed form.  Sum of weight/pole^2 for plain
  // exponential terms.
  double mean_time() const;

  // \int_t^infty f(s) ds
  double tail_integral(double t) const;

  // \int_0^infty exp(-p t) f(t) dt
  cplx laplace(cplx p) const;

  // largest real part over poles; controls decay
  double slowest_decay() const;

  bool simple_poles() const;

 private:
  std::vector<ExpTerm> terms_;
};

// Waiting-time density: a normalized ExpSum (integral 1 within 1e-6, real
// and non-negative).  Construction checks normalization; non-negativity is
// the caller's physics and is asserted by tests where it matters.
struct RenewalLaw {
  ExpSum density;

  double mean_waiting_time() const { return density.mean_time(); }
};

// Inverse Laplace transform of numerator / prod_k (p - p_k) with distinct
// roots; throws std::invalid_argument when two roots are closer than
// 1e-8 * max|root|.
ExpSum heaviside_invert(const ComplexRoots& denominator_roots, cplx numerator);

// Renewal correlation G(t) of a normalized waiting-time law, from the
// geometric series in the Laplace domain:  G(p) = w(p) / (1 - w(p)).
// Restricted to laws with at most three simple poles.  The constant pole at
// p = 0 carries weight G(infinity) = 1/<t>; a confluent pair in the
// remaining denominator is folded into a t*exp term.
ExpSum renewal_correlation(const RenewalLaw& w);

double mean_waiting_time(const RenewalLaw& w);

}  // namespace qnl::math
