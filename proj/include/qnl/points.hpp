#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qnl/random.hpp"

namespace qnl::points {

// Ordered event times on (0, T], one run.  Marks are optional per-event
// weights (dissipated energies for the pendulum); empty means unweighted.
struct EventSeries {
  std::vector<double> times;
  std::vector<double> marks;
  double horizon = 0.0;

  bool has_marks() const { return !marks.empty(); }
  std::size_t size() const { return times.size(); }
  void validate() const;  // strictly increasing, inside (0, horizon]
};

struct Ensemble {
  std::vector<EventSeries> runs;
  std::uint64_t master_seed = 0;

  double horizon() const { return runs.empty() ? 0.0 : runs.front().horizon; }
  std::size_t total_events() const;
};

// ---- generators ------------------------------------------------------

EventSeries gen_poisson(double rate, double horizon, Rng& rng);

// Inhomogeneous Poisson process by rescaling time through the cumulative
// rate; rate(t) must be >= 0 and bounded on [0, horizon].
EventSeries gen_inhomogeneous(const std::function<double(double)>& rate, double horizon, Rng& rng);

// Ordinary renewal process from an inter-arrival sampler.  A stretch of
// 20 mean waits before t = 0 is discarded so the retained window is close
// to stationary.
EventSeries gen_renewal(const std::function<double(Rng&)>& waiting_sampler, double horizon,
                        Rng& rng, double mean_wait_hint = 1.0);

// Periodic unit-rate comb with departures delayed uniformly on [0, tau_r);
// wrapped circularly so the retained window is exactly stationary.
EventSeries gen_darkroom(double tau_r, std::int64_t n_events, Rng& rng);

EventSeries thin(const EventSeries& s, double keep_prob, Rng& rng);

EventSeries superpose(const std::vector<EventSeries>& parts);

// Generate `runs` independent runs from per-run seed streams; honors
// QNL_THREADS.  Run r sees the same stream no matter how many workers or
// how many total runs.
Ensemble make_ensemble(int runs, std::uint64_t master_seed,
                       const std::function<EventSeries(Rng&)>& gen);

// ---- estimators ------------------------------------------------------

// Periodograms at the Fourier grid Omega_n = 2 pi n / T, n >= 1.  Values
// are ensemble means of |sum_k w_k exp(j Omega t_k)|^2 / T; stderr is the
// jackknife standard error over runs.
struct SpectrumEstimate {
  std::vector<double> frequencies;
  std::vector<double> values;
  std::vector<double> stderrs;
  double mean_rate = 0.0;
  double horizon = 0.0;
  // retained for jackknifing derived quantities
  std::vector<std::vector<double>> per_run;
  std::vector<double> per_run_count;
};

SpectrumEstimate estimate_spectrum(const Ensemble& e, int n_max);
SpectrumEstimate estimate_spectrum_at(const Ensemble& e, const std::vector<int>& n_list);

struct CorrelationEstimate {
  std::vector<double> bin_edges;
  std::vector<double> g;
  std::vector<double> stderrs;
  std::vector<std::int64_t> counts;

  double bin_center(std::size_t i) const { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
};

// Pair-separation histogram normalized by rate^2 * usable time * bin width.
// Triggers beyond T - tau_max are dropped so every counted lag window is
// fully observed.
CorrelationEstimate estimate_g(const Ensemble& e, double bin_width, double tau_max);

struct VariancePoint {
  double window = 0.0;
  double value = 0.0;
  double stderr_ = 0.0;
};

// V(T') = var(count)/mean(count) - 1 over disjoint windows tiled across
// each run.
std::vector<VariancePoint> estimate_variance_curve(const Ensemble& e,
                                                   const std::vector<double>& windows);

struct NoisePoint {
  double omega = 0.0;
  double value = 0.0;
  double stderr_ = 0.0;
};

// N(Omega) = S/D^2 - 1/D, jackknifed over runs.
std::vector<NoisePoint> relative_noise(const SpectrumEstimate& s);

// ---- correlation <-> noise Fourier pair ------------------------------

struct TransformResult {
  std::vector<double> grid;
  std::vector<double> values;
  bool decay_warning = false;
};

// N(Omega) = 2 int_0^inf (g - 1) cos(Omega tau) dtau from a uniformly
// tabulated g; warns when the table does not reach its asymptote.
TransformResult noise_from_correlation(const std::vector<double>& tau,
                                       const std::vector<double>& g,
                                       const std::vector<double>& omega_out);

// g(tau) - 1 = (1/pi) int_0^inf N(Omega) cos(Omega tau) dOmega
TransformResult correlation_from_noise(const std::vector<double>& omega,
                                       const std::vector<double>& noise,
                                       const std::vector<double>& tau_out);

// ---- serialization ---------------------------------------------------

void write_events_csv(const Ensemble& e, const std::string& path);
Ensemble read_events_csv(const std::string& path, double horizon);
void write_spectrum_csv(const SpectrumEstimate& s, const std::string& path);

int worker_count();

}  // namespace qnl::points
