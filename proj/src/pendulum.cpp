#include "qnl/pendulum.hpp"

#include <cmath>
#include <stdexcept>

namespace qnl::pendulum {

Derived derived_quantities(const Params& p) {
  if (p.weight_mass <= 0.0 || p.molecule_mass <= 0.0 || p.gravity <= 0.0 ||
      p.drop_per_period <= 0.0 || p.pickup_prob <= 0.0 || p.pickup_prob > 1.0)
    throw std::invalid_argument("pendulum: parameters must be positive, pr <= 1");
  Derived d;
  d.lifetime = p.weight_mass / (p.pickup_prob * p.molecule_mass);
  d.mean_height = p.weight_mass * p.drop_per_period / (p.pickup_prob * p.molecule_mass);
  d.event_energy = p.molecule_mass * p.gravity * d.mean_height;
  d.mean_power = p.weight_mass * p.gravity * p.drop_per_period;
  d.mean_energy = p.weight_mass * p.gravity * d.mean_height;
  return d;
}

points::EventSeries simulate(const Params& p, std::int64_t periods, Rng& rng) {
  if (periods < 1) throw std::invalid_argument("pendulum::simulate: need at least one period");
  const Derived d = derived_quantities(p);

  double h = d.mean_height;
  const std::int64_t burnin = std::int64_t(10.0 / p.pickup_prob);
  for (std::int64_t k = 0; k < burnin; ++k) {
    if (rng.uniform() < p.pickup_prob)
      h = height_after_pickup(h, p);
    else
      h += p.drop_per_period;
  }

  points::EventSeries rec;
  rec.horizon = double(periods);
  rec.times.reserve(std::size_t(double(periods) * p.pickup_prob * 1.1) + 16);
  rec.marks.reserve(rec.times.capacity());
  for (std::int64_t k = 1; k <= periods; ++k) {
    if (rng.uniform() < p.pickup_prob) {
      rec.times.push_back(double(k));
      rec.marks.push_back(dissipated_mark(h, p));
      h = height_after_pickup(h, p);
    } else {
      h += p.drop_per_period;
    }
  }
  return rec;
}

double analytic_spectrum(double omega, double tau_p, double event_energy, double mean_power) {
  if (omega < 0.0) throw std::invalid_argument("analytic_spectrum: omega must be >= 0");
  double x = omega * tau_p;
  return x * x / (1.0 + x * x) * event_energy * mean_power;
}

}  // namespace qnl::pendulum
