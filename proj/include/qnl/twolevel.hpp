#pragma once

#include <functional>
#include <vector>

#include "qnl/expsum.hpp"
#include "qnl/random.hpp"

namespace qnl::twolevel {

// CODATA 2018 exact/recommended values
constexpr double kHbar = 1.054571817e-34;          // J s
constexpr double kElectronMass = 9.1093837015e-31; // kg
constexpr double kElementaryCharge = 1.602176634e-19;  // C

// ---- square well -------------------------------------------------------

struct SquareWell {
  double width;  // m
};

// E_n = pi^2 hbar^2 n^2 / (2 m d^2), n in {1, 2}
double level_energy(const SquareWell& w, int n);
double transition_frequency(const SquareWell& w);  // omega_o = omega_2 - omega_1
double transition_element(const SquareWell& w);    // x12 = 16 d / (9 pi^2)
double oscillator_strength();                      // 256 / (27 pi^2)

// hbar Omega_R = e sqrt(2) V x12 / d for an rms optical potential V
double rabi_frequency(const SquareWell& w, double v_rms);

// ---- resonant dynamics -------------------------------------------------

struct BlochState {
  double x = 0.0;
  double y = 0.0;
  double z = -1.0;  // lower state

  double purity() const { return x * x + y * y + z * z; }
};

// Driven lossless evolution from the lower state.
double pure_rabi_rho22(double t, double omega_r);
double pure_rabi_coherence_imag(double t, double omega_r);  // rho''_12 = -sin/2

// Power delivered by the optical potential; sign +1 selects the absorbing
// convention (electron starts low, energy flows into the electron).
double interaction_power(double t, const SquareWell& w, double v_rms, int sign = +1);
double interaction_energy(double tau, const SquareWell& w, double v_rms);
double smalltime_conductance(double t, const SquareWell& w);  // e^2 t / (2 m d^2)

// ---- generalized Rabi equations ----------------------------------------

struct RabiParams {
  double omega_r = 1.0;
  double gamma1 = 0.0;  // upward spontaneous rate
  double gamma2 = 0.0;  // downward spontaneous rate
  double a = 0.5;       // decoherence parameter (2a = 1 default)
};

struct Admissibility {
  bool admissible = false;
  double minimal_two_a = 0.0;  // (sqrt(g1) - sqrt(g2))^2 / (g1 + g2)
};

Admissibility admissibility(double gamma1, double gamma2, double a);

struct Trajectory {
  std::vector<double> t;
  std::vector<BlochState> state;
  std::vector<double> energy_in;   // omega_r * int y/2
  std::vector<double> upper_occupation_time;  // int rho22
};

// Adaptive RK integration of the three-variable system; trace is structural.
Trajectory integrate_generalized_rabi(const RabiParams& p, const BlochState& init,
                                      const std::vector<double>& t_grid);

// Closed-form upper-state population for gamma1 = 0, gamma2 = gamma,
// Omega_R = 1; stable across the critically damped point.
double rho22_closed(double t, double gamma, double a);
double event_density(double t, double gamma, double a);        // 2 gamma rho22
double event_density_infty(double gamma, double a);            // gamma / (1 + 4 a gamma^2)

// steady state (gamma1 = 0)
double coherence_infty(double gamma, double a);  // gamma / (1 + 4 a gamma^2)
double rho22_infty(double gamma, double a);      // 1 / (2 + 8 a gamma^2)

// ---- correlation, noise, conductance (2a = 1) ---------------------------

double g_closed(double tau, double gamma_o, double omega_r);
double noise_zero_freq(double gamma_o, double omega_r);  // -(1/w_r) 6 g /(1+2g^2)

struct SaturatedRate {
  double rate_infty;       // gamma_o w_r / (1 + 2 gamma_o^2)
  double rate_largegamma;  // w_r^2 / (2 gamma)
  double power_largegamma; // rate_largegamma * hbar_omega
  double saturation;       // 1 - 2 rho22(inf) = 2 g^2 / (1 + 2 g^2)
};

SaturatedRate saturated_conductance(double gamma_o, double omega_r, double hbar_omega);

// ---- waiting times -------------------------------------------------------

// Inhomogeneous-Poisson approximation W(t), valid for small gamma.
double waiting_density_smallrate(double t, double gamma, double omega_r = 1.0);

// Exact law from the Laplace-domain renewal algebra (Omega_R = 1).  Near the
// critically damped point of the 2a = 1 family the pole triple merges and a
// short power series in t^2 replaces the Heaviside expansion.
math::RenewalLaw waiting_law_exact(double gamma, double a);

// Inverse-CDF sampler over a precomputed survival table.
std::function<double(Rng&)> make_waiting_sampler(const math::RenewalLaw& law);

// 10^6 <tau> int (w - W)^2, the figure of merit ranking decoherence choices.
double waiting_distance(double gamma, double a);

// ---- equal spontaneous rates ---------------------------------------------

struct EqualGammaPoint {
  double y;
  double z;
  double density;  // varpi * z
};

EqualGammaPoint equal_gamma_dynamics(double varpi, double t);

// rate helper gamma_{1,2} = varpi exp(+-(eU - hbar w_o)/(hbar varpi))
void equal_bias_rates(double varpi, double eu_minus_hw, double hbar_varpi, double& gamma1,
                      double& gamma2);

}  // namespace qnl::twolevel
