#pragma once

#include <cstdint>

#include "qnl/points.hpp"
#include "qnl/random.hpp"

namespace qnl::pendulum {

// Escapement-driven pendulum damped by rare molecule pick-ups.  One period
// is the time unit (1 s); heights in meters, energies in joules.
struct Params {
  double weight_mass = 1.0;      // M, kg (pendulum and drive weight)
  double molecule_mass = 1e-3;   // m, kg
  double pickup_prob = 0.01;     // pr, per period
  double drop_per_period = 1e-6; // delta z, m
  double gravity = 9.81;         // m/s^2
};

struct Derived {
  double mean_height;      // <h> = M dz / (pr m)
  double event_energy;     // eps = m g <h> = M g dz / pr
  double lifetime;         // tau_p = M / (pr m), in periods
  double mean_power;       // <P_d> = M g dz per period
  double mean_energy;      // <E> = M g <h>
};

Derived derived_quantities(const Params& p);

// Marked event record: event periods as times, dissipated energy as marks.
// Starts at <h> and discards a 10/pr burn-in.
points::EventSeries simulate(const Params& p, std::int64_t periods, Rng& rng);

// Lorentzian-suppressed shot plateau (omega tau_p)^2/(1+(omega tau_p)^2) * eps <P_d>.
double analytic_spectrum(double omega, double tau_p, double event_energy, double mean_power);

// Height map for one period; shared with tests so the mark recursion can be
// replayed bit for bit.
inline double height_after_pickup(double h, const Params& p) {
  return h / (1.0 + p.molecule_mass / p.weight_mass) + p.drop_per_period;
}
inline double dissipated_mark(double h, const Params& p) {
  return p.molecule_mass * p.gravity * h / (1.0 + p.molecule_mass / p.weight_mass);
}

}  // namespace qnl::pendulum
