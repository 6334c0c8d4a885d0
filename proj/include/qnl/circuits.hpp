#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "qnl/points.hpp"
#include "qnl/random.hpp"

namespace qnl::circuits {

using cplx = std::complex<double>;

constexpr double kBoltzmann = 1.380649e-23;  // J/K
constexpr double kHbar = 1.054571817e-34;    // J s

// ---- tuned circuit -------------------------------------------------------

struct TunedCircuit {
  double inductance;   // H
  double capacitance;  // F
  double conductance;  // S (net)

  double omega0() const;
  double photon_lifetime() const;  // C / G
};

// Y = G - i (C w - 1/(L w)); throws at w = 0
cplx admittance(const TunedCircuit& c, double omega);

// Power dissipated in G and stored energy for a current source of amplitude
// |C|; `exact` uses the full admittance, otherwise the small-loss Lorentzian.
double dissipated_power(const TunedCircuit& c, double source_amp, double omega, bool exact = false);
double stored_energy(const TunedCircuit& c, double source_amp, double omega, bool exact = false);

// Full width at half power found by bisection on the closed-form response.
double fwhp_numeric(const TunedCircuit& c);

// 1/tau_p = (T1 + T2) / roundtrip
double fabry_perot_lifetime(double t1, double t2, double roundtrip_time);

// ---- general two-terminal networks ----------------------------------------

// Composition tree of conductances, capacitances and inductances.
struct Network {
  enum class Kind { Conductance, Capacitance, Inductance, Series, Parallel };
  Kind kind = Kind::Conductance;
  double value = 0.0;
  std::vector<Network> children;

  static Network conductance(double g) { return {Kind::Conductance, g, {}}; }
  static Network capacitance(double c) { return {Kind::Capacitance, c, {}}; }
  static Network inductance(double l) { return {Kind::Inductance, l, {}}; }
  static Network series(std::vector<Network> parts) { return {Kind::Series, 0.0, std::move(parts)}; }
  static Network parallel(std::vector<Network> parts) { return {Kind::Parallel, 0.0, std::move(parts)}; }

  cplx admittance(double omega) const;
};

struct DerivativeIdentity {
  cplx lhs;  // i V^2 dY/dw by finite difference
  cplx rhs;  // sum_k C_k V_k^2 - L_k I_k^2
};

// Evaluates both sides of the reactive-energy form of dY/dw for a network
// driven by voltage V.
DerivativeIdentity admittance_derivative_identity(const Network& n, double omega, cplx v);

// ---- thermal-equilibrium evaluators ---------------------------------------

// (hbar w / 2) coth(hbar w / 2 kB T)
double average_oscillator_energy(double omega0, double temperature);

// residual of f' + f^2 = (hbar/2)^2 for f(x) = coth(x/2)/2 in hbar = 1 units
double riccati_residual(double x);

// <E> = (alpha/2)(R + 1)/(R - 1) for conductance ratio R = Ga/Ge; requires
// Ga > Ge > 0
double thermal_balance(double g_absorb, double g_emit, double alpha);

// alpha solving thermal_balance(exp(hbar w/kT) Ge, Ge, alpha) = Planck+vacuum
// energy; returns hbar w.
double infer_alpha(double omega0, double temperature);

// \int dw/2pi * C S_j / (2 (G^2 + C^2 w^2)) with S_j = 2 kB T G; equals kB T/2
double nyquist_classical_energy(double conductance, double capacitance, double temperature);

// ---- C-state Monte Carlo ---------------------------------------------------

struct CStateResult {
  points::EventSeries events;
  double clipped_fraction = 0.0;
  bool clip_warning = false;
  double mean_power = 0.0;  // G |V|^2
};

// Potential source V across a conductance G with white quadrature noise of
// density hbar_omega * G.  The sampled power converts to a detection rate
// P/hbar_omega that warps a regular unit stream, so the event spectrum
// carries exactly the rate-fluctuation noise.
CStateResult cstate_montecarlo(cplx v, double conductance, double hbar_omega, double duration,
                               double dt, Rng& rng);

// spectral density of the power fluctuation implied by the noise sources
double cstate_power_noise_density(cplx v, double conductance, double hbar_omega);

}  // namespace qnl::circuits
