#pragma once

#include <cstdint>
#include <string>

#include "qnl/summary.hpp"

namespace qnl::experiments {

// Shared output options.  `out` empty suppresses the data artifact;
// format is "csv" or "json".
struct OutputSpec {
  std::string out;
  std::string format = "csv";
};

struct PendulumConfig {
  int runs = 100;
  std::int64_t periods = 10000000;
  std::uint64_t seed = 1;
  double weight_mass = 1.0;
  double molecule_mass = 1e-3;
  double pickup_prob = 0.01;
  double drop_per_period = 1e-6;
  double x_lo = 0.2;   // band edges in units of omega * tau_p
  double x_hi = 20.0;
  int band_min = 8;    // fewest harmonics allowed in one comparison band
};
report::Report run_pendulum(const PendulumConfig& cfg, const OutputSpec& out);

struct PointsConfig {
  std::string process = "poisson";  // poisson | renewal | darkroom
  int runs = 16;
  std::uint64_t seed = 1;
  double rate = 1.0;       // poisson
  double gamma = 2.0;      // renewal (exact two-level law, 2a = 1)
  double tau_r = 20.0;     // darkroom
  double horizon = 10000.0;
  std::int64_t events = 10000;  // darkroom comb length
  int n_max = 200;
  double thin_keep = 1.0;  // < 1 deletes events at random
  int superpose = 1;       // > 1 merges that many independent streams per run
};
report::Report run_points(const PointsConfig& cfg, const OutputSpec& out);

struct RabiConfig {
  double gamma = 2.0;
  double a = 0.5;
  double t_max = 25.0;
  int steps = 250;
};
report::Report run_rabi(const RabiConfig& cfg, const OutputSpec& out);

struct WaitingConfig {
  double gamma = 2.0;
  double a = 0.5;
  double t_max = 12.0;
  int steps = 240;
  bool distance_scan = false;  // rank 2a in {0.996, 0.998, 1, 1.04} by distance
};
report::Report run_waiting(const WaitingConfig& cfg, const OutputSpec& out);

struct CircuitConfig {
  double inductance = 1.0;
  double capacitance = 1.0;
  double conductance = 0.05;
  double source_amp = 1.0;
  double omega_lo = 0.0;  // defaults to a band around resonance when 0
  double omega_hi = 0.0;
  int points = 200;
};
report::Report run_circuit(const CircuitConfig& cfg, const OutputSpec& out);

struct CStateConfig {
  double v_amp = 2.0;
  double phase = 0.0;
  double conductance = 1000.0;
  double hbar_omega = 1.0;
  double duration = 50.0;
  double dt = 0.01;
  int runs = 12;
  int n_max = 100;
  std::uint64_t seed = 1;
};
report::Report run_cstate(const CStateConfig& cfg, const OutputSpec& out);

struct CavityConfig {
  int atoms = 20;
  std::uint64_t jumps = 1000000;
  std::uint64_t seed = 1;
};
report::Report run_cavity(const CavityConfig& cfg, const OutputSpec& out);

report::Report run_integrals(const OutputSpec& out);

}  // namespace qnl::experiments
