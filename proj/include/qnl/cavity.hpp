#pragma once

#include <cstdint>
#include <vector>

#include "qnl/random.hpp"

namespace qnl::cavity {

// n excited atoms and m light quanta with n + m = N conserved.
struct CavityState {
  int quanta = 0;        // m
  int excited_atoms = 0; // n
};

struct JumpRates {
  double emission = 0.0;    // R_e = n (m + 1)
  double absorption = 0.0;  // R_a = (N - n) m
};

// binomial weight W(n) = N! / (n!(N-n)!), exact for N <= 60
std::uint64_t statistical_weight(int atoms, int excited);
std::uint64_t partition(int atoms);  // 2^N

// pr(m) = W(N - m) / 2^N
std::vector<double> stationary_distribution(int atoms);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments stationary_moments(int atoms);  // N/2, N/4

JumpRates jump_rates(const CavityState& s, int atoms);

struct SimResult {
  std::vector<double> occupancy;  // time-weighted empirical pr(m)
  Moments empirical;
  double total_time = 0.0;
  std::uint64_t jumps = 0;
};

// Event-driven jump simulation: exponential holding times at total rate
// R_e + R_a, branch chosen proportionally.  Starts at m = start_quanta
// (default empty cavity, all atoms excited); 10 N burn-in jumps dropped.
SimResult simulate(int atoms, std::uint64_t jumps, Rng& rng, int start_quanta = 0);

// total-variation distance between an empirical table and the exact law
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

// Linearized spectrum of the quanta fluctuation: (N^2/2) / (N^2 + Omega^2);
// integrates to the exact variance N/4.
double quanta_noise_spectrum(int atoms, double omega);
double quanta_noise_variance(int atoms);  // N/4

struct SpectrumSample {
  std::vector<double> frequencies;
  std::vector<double> values;
  std::vector<double> stderrs;
};

// Empirical spectrum of m(t) - <m>: trajectories sampled on a uniform grid,
// periodogram at harmonics n_list of 2 pi / duration, jackknifed over runs.
SpectrumSample empirical_quanta_spectrum(int atoms, double duration, double dt, int runs,
                                         std::uint64_t master_seed,
                                         const std::vector<int>& n_list);

}  // namespace qnl::cavity
