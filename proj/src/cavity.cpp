#include "qnl/cavity.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <thread>

#include "qnl/points.hpp"

namespace qnl::cavity {

namespace {
constexpr double kTwoPi = 6.28318530717958647692528676655900577;

void check_positive(int atoms) {
  if (atoms < 1) throw std::invalid_argument("cavity: need at least one atom");
}

// only the exact integer weights are range-limited
void check_atoms(int atoms) {
  check_positive(atoms);
  if (atoms > 60) throw std::invalid_argument("cavity: exact weights limited to N <= 60");
}
}  // namespace

std::uint64_t statistical_weight(int atoms, int excited) {
  check_atoms(atoms);
  if (excited < 0 || excited > atoms)
    throw std::invalid_argument("statistical_weight: excited count out of range");
  // multiplicative scheme, exact in 64 bits for N <= 60
  std::uint64_t acc = 1;
  int k = std::min(excited, atoms - excited);
  for (int i = 1; i <= k; ++i) acc = acc * std::uint64_t(atoms - k + i) / std::uint64_t(i);
  return acc;
}

std::uint64_t partition(int atoms) {
  check_atoms(atoms);
  return std::uint64_t(1) << atoms;
}

std::vector<double> stationary_distribution(int atoms) {
  check_atoms(atoms);
  std::vector<double> pr(std::size_t(atoms) + 1);
  const double z = double(partition(atoms));
  for (int m = 0; m <= atoms; ++m)
    pr[std::size_t(m)] = double(statistical_weight(atoms, atoms - m)) / z;
  return pr;
}

Moments stationary_moments(int atoms) {
  check_atoms(atoms);
  return {0.5 * atoms, 0.25 * atoms};
}

JumpRates jump_rates(const CavityState& s, int atoms) {
  check_positive(atoms);
  if (s.quanta < 0 || s.excited_atoms < 0 || s.quanta + s.excited_atoms != atoms)
    throw std::invalid_argument("jump_rates: state violates n + m = N");
  JumpRates r;
  r.emission = double(s.excited_atoms) * double(s.quanta + 1);
  r.absorption = double(atoms - s.excited_atoms) * double(s.quanta);
  return r;
}

namespace {

template <class OnHold>
void run_chain(int atoms, std::uint64_t jumps, Rng& rng, int start_quanta, const OnHold& on_hold) {
  int m = start_quanta;
  const std::uint64_t burnin = std::uint64_t(10) * std::uint64_t(atoms);
  for (std::uint64_t j = 0; j < jumps + burnin; ++j) {
    CavityState s{m, atoms - m};
    JumpRates r = jump_rates(s, atoms);
    double total = r.emission + r.absorption;
    double hold = rng.exponential(total);
    if (j >= burnin) on_hold(m, hold);
    m += rng.uniform() * total < r.emission ? 1 : -1;
  }
}

}  // namespace

SimResult simulate(int atoms, std::uint64_t jumps, Rng& rng, int start_quanta) {
  check_positive(atoms);
  if (start_quanta < 0 || start_quanta > atoms)
    throw std::invalid_argument("simulate: start quanta out of range");

  SimResult out;
  out.occupancy.assign(std::size_t(atoms) + 1, 0.0);
  out.jumps = jumps;
  run_chain(atoms, jumps, rng, start_quanta, [&](int m, double hold) {
    out.occupancy[std::size_t(m)] += hold;
    out.total_time += hold;
  });
  for (auto& o : out.occupancy) o /= out.total_time;

  for (int m = 0; m <= atoms; ++m) out.empirical.mean += m * out.occupancy[std::size_t(m)];
  for (int m = 0; m <= atoms; ++m) {
    double d = m - out.empirical.mean;
    out.empirical.variance += d * d * out.occupancy[std::size_t(m)];
  }
  return out;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("total_variation: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return 0.5 * acc;
}

double quanta_noise_spectrum(int atoms, double omega) {
  check_positive(atoms);
  double n2 = double(atoms) * double(atoms);
  return 0.5 * n2 / (n2 + omega * omega);
}

double quanta_noise_variance(int atoms) {
  check_positive(atoms);
  return 0.25 * atoms;
}

SpectrumSample empirical_quanta_spectrum(int atoms, double duration, double dt, int runs,
                                         std::uint64_t master_seed,
                                         const std::vector<int>& n_list) {
  check_positive(atoms);
  if (duration <= 0.0 || dt <= 0.0 || runs < 2)
    throw std::invalid_argument("empirical_quanta_spectrum: bad parameters");
  const std::size_t samples = std::size_t(duration / dt);
  const double t_total = double(samples) * dt;

  std::vector<std::vector<double>> per_run(static_cast<std::size_t>(runs));

  auto one_run = [&](int r) {
    Rng rng = Rng::stream(master_seed, std::uint64_t(r));
    // sample m(t) on the uniform grid; burn-in handled by run_chain
    std::vector<double> m_t(samples, 0.0);
    std::size_t idx = 0;
    double t = 0.0;
    int m = atoms / 2;  // start near the mode to shorten transients
    const std::uint64_t burnin = std::uint64_t(10) * std::uint64_t(atoms);
    std::uint64_t j = 0;
    while (idx < samples) {
      CavityState s{m, atoms - m};
      JumpRates rr = jump_rates(s, atoms);
      double total = rr.emission + rr.absorption;
      double hold = rng.exponential(total);
      if (j++ >= burnin) {
        double t1 = t + hold;
        while (idx < samples && double(idx) * dt < t1) {
          m_t[idx] = double(m);
          ++idx;
        }
        t = t1;
      }
      m += rng.uniform() * total < rr.emission ? 1 : -1;
    }
    // periodogram at the requested harmonics; the grid frequencies drop the
    // mean term exactly
    std::vector<double> vals(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      const double omega = kTwoPi * n_list[i] / t_total;
      const std::complex<double> step = std::polar(1.0, -omega * dt);
      std::complex<double> z(1.0, 0.0), acc(0.0, 0.0);
      for (std::size_t k = 0; k < samples; ++k) {
        acc += m_t[k] * z;
        z *= step;
      }
      vals[i] = std::norm(acc * dt) / t_total;
    }
    per_run[std::size_t(r)] = std::move(vals);
  };

  int workers = std::min(points::worker_count(), runs);
  if (workers <= 1) {
    for (int r = 0; r < runs; ++r) one_run(r);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w]() {
        for (int r = w; r < runs; r += workers) one_run(r);
      });
    for (auto& th : pool) th.join();
  }

  SpectrumSample out;
  out.frequencies.resize(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) out.frequencies[i] = kTwoPi * n_list[i] / t_total;
  out.values.assign(n_list.size(), 0.0);
  for (const auto& pr : per_run)
    for (std::size_t i = 0; i < pr.size(); ++i) out.values[i] += pr[i];
  for (auto& v : out.values) v /= runs;
  out.stderrs.assign(n_list.size(), 0.0);
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    double acc = 0.0;
    for (const auto& pr : per_run) {
      double d = pr[i] - out.values[i];
      acc += d * d;
    }
    out.stderrs[i] = std::sqrt(acc / (runs * (runs - 1.0)));
  }
  return out;
}

}  // namespace qnl::cavity
