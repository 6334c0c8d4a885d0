#include "qnl/points.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qnl::points {

namespace {
constexpr double kTwoPi = 6.28318530717958647692528676655900577;

double jackknife_stderr(const std::vector<double>& leave_one_out, double full) {
  const std::size_t m = leave_one_out.size();
  if (m < 2) return 0.0;
  double acc = 0.0;
  for (double v : leave_one_out) acc += (v - full) * (v - full);
  return std::sqrt((double(m) - 1.0) / double(m) * acc);
}
}  // namespace

void EventSeries::validate() const {
  if (horizon <= 0.0) throw std::invalid_argument("EventSeries: horizon must be positive");
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev)) throw std::invalid_argument("EventSeries: times must be strictly increasing and positive");
    if (t > horizon) throw std::invalid_argument("EventSeries: time beyond horizon");
    prev = t;
  }
  if (!marks.empty() && marks.size() != times.size())
    throw std::invalid_argument("EventSeries: marks size mismatch");
}

std::size_t Ensemble::total_events() const {
  std::size_t n = 0;
  for (const auto& r : runs) n += r.size();
  return n;
}

int worker_count() {
  if (const char* env = std::getenv("QNL_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

namespace {

// Run fn(run_index) for each run on a small indexed pool; results must be
// written into per-run slots by the callee so scheduling cannot reorder
// anything.
void parallel_runs(int runs, const std::function<void(int)>& fn) {
  int workers = std::min(worker_count(), runs);
  if (workers <= 1) {
    for (int r = 0; r < runs; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int r = w; r < runs; r += workers) fn(r);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

EventSeries gen_poisson(double rate, double horizon, Rng& rng) {
  if (rate <= 0.0 || horizon <= 0.0) throw std::invalid_argument("gen_poisson: rate and horizon must be positive");
  EventSeries s;
  s.horizon = horizon;
  double t = rng.exponential(rate);
  while (t <= horizon) {
    s.times.push_back(t);
    t += rng.exponential(rate);
  }
  return s;
}

EventSeries gen_inhomogeneous(const std::function<double(double)>& rate, double horizon, Rng& rng) {
  if (horizon <= 0.0) throw std::invalid_argument("gen_inhomogeneous: horizon must be positive");
  EventSeries s;
  s.horizon = horizon;

  // march the cumulative rate with Simpson panels; an exponential target in
  // rescaled time marks the next event, refined by bisection in the panel
  double t = 0.0;
  double cum = 0.0;
  double target = rng.exponential();
  double r0 = rate(0.0);
  if (r0 < 0.0) throw std::invalid_argument("gen_inhomogeneous: negative rate");
  double sup = std::max(r0, 1e-12);
  for (double probe = 0.0; probe <= horizon; probe += horizon / 64.0) {
    double rp = rate(probe);
    if (rp < 0.0) throw std::invalid_argument("gen_inhomogeneous: negative rate");
    sup = std::max(sup, rp);
  }
  const double step = std::min(horizon, 0.05 / sup);

  auto panel = [&rate](double a, double b) {
    double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (rate(a) + 4.0 * rate(m) + rate(b));
  };

  while (t < horizon) {
    double t1 = std::min(t + step, horizon);
    double inc = panel(t, t1);
    if (inc < -1e-12) throw std::invalid_argument("gen_inhomogeneous: negative rate");
    while (cum + inc >= target) {
      // locate the crossing inside [t, t1]
      double lo = t, hi = t1;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (cum + panel(t, mid) >= target)
          hi = mid;
        else
          lo = mid;
      }
      double tev = 0.5 * (lo + hi);
      if (tev <= horizon && (s.times.empty() || tev > s.times.back())) s.times.push_back(tev);
      target += rng.exponential();
    }
    cum += inc;
    t = t1;
  }
  return s;
}

EventSeries gen_renewal(const std::function<double(Rng&)>& waiting_sampler, double horizon,
                        Rng& rng, double mean_wait_hint) {
  if (horizon <= 0.0) throw std::invalid_argument("gen_renewal: horizon must be positive");
  EventSeries s;
  s.horizon = horizon;
  double burn = 20.0 * std::max(mean_wait_hint, 1e-12);
  double t = -burn;
  while (t <= horizon) {
    double w = waiting_sampler(rng);
    if (!(w > 0.0)) throw std::invalid_argument("gen_renewal: sampler must return positive durations");
    t += w;
    if (t > 0.0 && t <= horizon) s.times.push_back(t);
  }
  return s;
}

EventSeries gen_darkroom(double tau_r, std::int64_t n_events, Rng& rng) {
  if (tau_r < 0.0 || n_events < 1) throw std::invalid_argument("gen_darkroom: bad parameters");
  EventSeries s;
  const double horizon = double(n_events);
  s.horizon = horizon;
  s.times.reserve(std::size_t(n_events));
  for (std::int64_t k = 1; k <= n_events; ++k) {
    double t = double(k) + tau_r * rng.uniform();
    t = std::fmod(t, horizon);
    if (t == 0.0) t = horizon;
    s.times.push_back(t);
  }
  std::sort(s.times.begin(), s.times.end());
  return s;
}

EventSeries thin(const EventSeries& s, double keep_prob, Rng& rng) {
  if (!(keep_prob > 0.0 && keep_prob <= 1.0))
    throw std::invalid_argument("thin: keep probability must be in (0, 1]");
  EventSeries out;
  out.horizon = s.horizon;
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    if (rng.uniform() < keep_prob) {
      out.times.push_back(s.times[i]);
      if (s.has_marks()) out.marks.push_back(s.marks[i]);
    }
  }
  return out;
}

EventSeries superpose(const std::vector<EventSeries>& parts) {
  if (parts.empty()) throw std::invalid_argument("superpose: no inputs");
  EventSeries out;
  out.horizon = parts.front().horizon;
  std::size_t total = 0;
  for (const auto& p : parts) {
    if (std::abs(p.horizon - out.horizon) > 1e-12 * std::max(1.0, out.horizon))
      throw std::invalid_argument("superpose: horizon mismatch");
    if (p.has_marks()) throw std::invalid_argument("superpose: marked series not supported");
    total += p.size();
  }
  out.times.reserve(total);
  for (const auto& p : parts) out.times.insert(out.times.end(), p.times.begin(), p.times.end());
  std::sort(out.times.begin(), out.times.end());
  return out;
}

Ensemble make_ensemble(int runs, std::uint64_t master_seed,
                       const std::function<EventSeries(Rng&)>& gen) {
  if (runs < 1) throw std::invalid_argument("make_ensemble: need at least one run");
  Ensemble e;
  e.master_seed = master_seed;
  e.runs.resize(std::size_t(runs));
  parallel_runs(runs, [&](int r) {
    Rng rng = Rng::stream(master_seed, std::uint64_t(r));
    e.runs[std::size_t(r)] = gen(rng);
  });
  return e;
}

namespace {

// |sum_k w_k exp(j Omega_n t_k)|^2 / T for a list of harmonics n.  For a
// contiguous list the phasors are iterated by repeated multiplication, one
// complex multiply per (event, frequency).
std::vector<double> periodogram(const EventSeries& s, const std::vector<int>& n_list) {
  const double T = s.horizon;
  std::vector<std::complex<double>> acc(n_list.size(), {0.0, 0.0});
  bool contiguous = true;
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] != n_list[i - 1] + 1) contiguous = false;

  if (contiguous && !n_list.empty()) {
    const int n0 = n_list.front();
    for (std::size_t k = 0; k < s.times.size(); ++k) {
      const double w = s.has_marks() ? s.marks[k] : 1.0;
      const double phi = kTwoPi * s.times[k] / T;
      const std::complex<double> step = std::polar(1.0, phi);
      std::complex<double> z = std::polar(1.0, phi * n0);
      for (std::size_t i = 0; i < n_list.size(); ++i) {
        acc[i] += w * z;
        z *= step;
      }
    }
  } else {
    for (std::size_t k = 0; k < s.times.size(); ++k) {
      const double w = s.has_marks() ? s.marks[k] : 1.0;
      const double phi = kTwoPi * s.times[k] / T;
      for (std::size_t i = 0; i < n_list.size(); ++i) acc[i] += w * std::polar(1.0, phi * n_list[i]);
    }
  }

  std::vector<double> out(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) out[i] = std::norm(acc[i]) / T;
  return out;
}

}  // namespace

SpectrumEstimate estimate_spectrum_at(const Ensemble& e, const std::vector<int>& n_list) {
  if (e.runs.empty()) throw std::invalid_argument("estimate_spectrum: empty ensemble");
  for (int n : n_list)
    if (n < 1) throw std::invalid_argument("estimate_spectrum: harmonics start at n = 1");
  const double T = e.horizon();
  const int runs = int(e.runs.size());

  SpectrumEstimate out;
  out.horizon = T;
  out.frequencies.resize(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) out.frequencies[i] = kTwoPi * n_list[i] / T;
  out.per_run.assign(std::size_t(runs), {});
  out.per_run_count.assign(std::size_t(runs), 0.0);

  parallel_runs(runs, [&](int r) {
    out.per_run[std::size_t(r)] = periodogram(e.runs[std::size_t(r)], n_list);
    out.per_run_count[std::size_t(r)] = double(e.runs[std::size_t(r)].size());
  });

  out.values.assign(n_list.size(), 0.0);
  for (const auto& pr : out.per_run)
    for (std::size_t i = 0; i < pr.size(); ++i) out.values[i] += pr[i];
  for (auto& v : out.values) v /= runs;

  out.stderrs.assign(n_list.size(), 0.0);
  if (runs > 1) {
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      std::vector<double> loo(static_cast<std::size_t>(runs));
      for (int r = 0; r < runs; ++r)
        loo[std::size_t(r)] =
            (out.values[i] * runs - out.per_run[std::size_t(r)][i]) / (runs - 1);
      out.stderrs[i] = jackknife_stderr(loo, out.values[i]);
    }
  }

  double events = std::accumulate(out.per_run_count.begin(), out.per_run_count.end(), 0.0);
  out.mean_rate = events / (T * runs);
  return out;
}

SpectrumEstimate estimate_spectrum(const Ensemble& e, int n_max) {
  if (n_max < 1) throw std::invalid_argument("estimate_spectrum: n_max must be >= 1");
  std::vector<int> n_list(static_cast<std::size_t>(n_max));
  std::iota(n_list.begin(), n_list.end(), 1);
  return estimate_spectrum_at(e, n_list);
}

CorrelationEstimate estimate_g(const Ensemble& e, double bin_width, double tau_max) {
  if (bin_width <= 0.0 || tau_max <= bin_width)
    throw std::invalid_argument("estimate_g: need 0 < bin_width < tau_max");
  const double T = e.horizon();
  const int runs = int(e.runs.size());
  const std::size_t bins = std::size_t(std::ceil(tau_max / bin_width));
  // snap the lag window to whole bins so the last bin is not undercounted
  const double tau_eff = double(bins) * bin_width;
  const double usable = T - tau_eff;
  if (usable <= 0.0) throw std::invalid_argument("estimate_g: tau_max exceeds horizon");

  std::vector<std::vector<double>> counts(std::size_t(runs),
                                          std::vector<double>(bins, 0.0));
  parallel_runs(runs, [&](int r) {
    const auto& t = e.runs[std::size_t(r)].times;
    auto& c = counts[std::size_t(r)];
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] > usable) break;
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        double lag = t[j] - t[i];
        if (lag >= tau_eff) break;
        std::size_t b = std::size_t(lag / bin_width);
        c[b < bins ? b : bins - 1] += 1.0;
      }
    }
  });

  std::vector<double> events(static_cast<std::size_t>(runs));
  for (int r = 0; r < runs; ++r) events[std::size_t(r)] = double(e.runs[std::size_t(r)].size());

  auto estimate = [&](int skip, std::size_t b) {
    double c = 0.0, n = 0.0;
    int m = 0;
    for (int r = 0; r < runs; ++r) {
      if (r == skip) continue;
      c += counts[std::size_t(r)][b];
      n += events[std::size_t(r)];
      ++m;
    }
    double rate = n / (m * T);
    if (rate <= 0.0) return 0.0;
    return c / (m * rate * rate * usable * bin_width);
  };

  CorrelationEstimate out;
  out.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) out.bin_edges[b] = b * bin_width;
  out.g.resize(bins);
  out.stderrs.resize(bins);
  out.counts.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    double full = estimate(-1, b);
    out.g[b] = full;
    double total = 0.0;
    for (int r = 0; r < runs; ++r) total += counts[std::size_t(r)][b];
    out.counts[b] = std::int64_t(total);
    if (runs > 1) {
      std::vector<double> loo(static_cast<std::size_t>(runs));
      for (int r = 0; r < runs; ++r) loo[std::size_t(r)] = estimate(r, b);
      out.stderrs[b] = jackknife_stderr(loo, full);
    }
  }
  return out;
}

std::vector<VariancePoint> estimate_variance_curve(const Ensemble& e,
                                                   const std::vector<double>& windows) {
  const double T = e.horizon();
  const int runs = int(e.runs.size());
  std::vector<VariancePoint> out;
  out.reserve(windows.size());

  for (double w : windows) {
    if (w <= 0.0 || w > T) throw std::invalid_argument("estimate_variance_curve: window outside horizon");
    const std::size_t nw = std::size_t(T / w);
    // per-run window counts
    std::vector<double> sum(std::size_t(runs), 0.0), sumsq(std::size_t(runs), 0.0);
    parallel_runs(runs, [&](int r) {
      const auto& t = e.runs[std::size_t(r)].times;
      std::vector<double> c(nw, 0.0);
      for (double x : t) {
        std::size_t i = std::size_t(x / w);
        if (i < nw) c[i] += 1.0;
      }
      double s = 0.0, s2 = 0.0;
      for (double v : c) {
        s += v;
        s2 += v * v;
      }
      sum[std::size_t(r)] = s;
      sumsq[std::size_t(r)] = s2;
    });

    auto vstat = [&](int skip) {
      double s = 0.0, s2 = 0.0, n = 0.0;
      for (int r = 0; r < runs; ++r) {
        if (r == skip) continue;
        s += sum[std::size_t(r)];
        s2 += sumsq[std::size_t(r)];
        n += double(nw);
      }
      double mean = s / n;
      if (mean <= 0.0) return 0.0;
      double var = (s2 - n * mean * mean) / (n - 1.0);
      return var / mean - 1.0;
    };

    VariancePoint p;
    p.window = w;
    p.value = vstat(-1);
    if (runs > 1) {
      std::vector<double> loo(static_cast<std::size_t>(runs));
      for (int r = 0; r < runs; ++r) loo[std::size_t(r)] = vstat(r);
      p.stderr_ = jackknife_stderr(loo, p.value);
    }
    out.push_back(p);
  }
  return out;
}

std::vector<NoisePoint> relative_noise(const SpectrumEstimate& s) {
  if (s.mean_rate <= 0.0) throw std::invalid_argument("relative_noise: zero event rate");
  const int runs = int(s.per_run.size());
  const double T = s.horizon;

  auto noise = [&](int skip, std::size_t i) {
    double v = 0.0, n = 0.0;
    int m = 0;
    for (int r = 0; r < runs; ++r) {
      if (r == skip) continue;
      v += s.per_run[std::size_t(r)][i];
      n += s.per_run_count[std::size_t(r)];
      ++m;
    }
    double sval = v / m;
    double d = n / (m * T);
    return sval / (d * d) - 1.0 / d;
  };

  std::vector<NoisePoint> out(s.frequencies.size());
  for (std::size_t i = 0; i < s.frequencies.size(); ++i) {
    out[i].omega = s.frequencies[i];
    out[i].value = noise(-1, i);
    if (runs > 1) {
      std::vector<double> loo(static_cast<std::size_t>(runs));
      for (int r = 0; r < runs; ++r) loo[std::size_t(r)] = noise(r, i);
      out[i].stderr_ = jackknife_stderr(loo, out[i].value);
    }
  }
  return out;
}

namespace {

// composite Simpson cosine transform of a uniformly tabulated function
double cosine_transform(const std::vector<double>& x, const std::vector<double>& f, double omega) {
  const std::size_t n = x.size();
  double h = x[1] - x[0];
  double acc = 0.0;
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    double f0 = f[i] * std::cos(omega * x[i]);
    double f1 = f[i + 1] * std::cos(omega * x[i + 1]);
    double f2 = f[i + 2] * std::cos(omega * x[i + 2]);
    acc += h / 3.0 * (f0 + 4.0 * f1 + f2);
  }
  if (i + 1 < n)
    acc += 0.5 * h * (f[i] * std::cos(omega * x[i]) + f[i + 1] * std::cos(omega * x[i + 1]));
  return acc;
}

}  // namespace

TransformResult noise_from_correlation(const std::vector<double>& tau,
                                       const std::vector<double>& g,
                                       const std::vector<double>& omega_out) {
  if (tau.size() < 3 || tau.size() != g.size())
    throw std::invalid_argument("noise_from_correlation: bad table");
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = g[i] - 1.0;
  TransformResult out;
  out.grid = omega_out;
  out.decay_warning = std::abs(f.back()) > 1e-3;
  out.values.resize(omega_out.size());
  for (std::size_t i = 0; i < omega_out.size(); ++i)
    out.values[i] = 2.0 * cosine_transform(tau, f, omega_out[i]);
  return out;
}

TransformResult correlation_from_noise(const std::vector<double>& omega,
                                       const std::vector<double>& noise,
                                       const std::vector<double>& tau_out) {
  if (omega.size() < 3 || omega.size() != noise.size())
    throw std::invalid_argument("correlation_from_noise: bad table");
  TransformResult out;
  out.grid = tau_out;
  out.decay_warning = std::abs(noise.back()) > 1e-3;
  out.values.resize(tau_out.size());
  constexpr double kPi = 3.14159265358979323846;
  for (std::size_t i = 0; i < tau_out.size(); ++i)
    out.values[i] = 1.0 + cosine_transform(omega, noise, tau_out[i]) / kPi;
  return out;
}

void write_events_csv(const Ensemble& e, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_events_csv: cannot open " + path);
  os << "run,time\n";
  char buf[64];
  for (std::size_t r = 0; r < e.runs.size(); ++r) {
    for (double t : e.runs[r].times) {
      std::snprintf(buf, sizeof buf, "%zu,%.12g\n", r, t);
      os << buf;
    }
  }
}

Ensemble read_events_csv(const std::string& path, double horizon) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_events_csv: cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || line != "run,time")
    throw std::runtime_error("read_events_csv: bad header");
  Ensemble e;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::size_t run;
    char comma;
    double t;
    if (!(ss >> run >> comma >> t)) throw std::runtime_error("read_events_csv: bad row");
    if (run >= e.runs.size()) {
      e.runs.resize(run + 1);
      for (auto& s : e.runs) s.horizon = horizon;
    }
    e.runs[run].times.push_back(t);
  }
  for (auto& s : e.runs) {
    s.horizon = horizon;
    s.validate();
  }
  return e;
}

void write_spectrum_csv(const SpectrumEstimate& s, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_spectrum_csv: cannot open " + path);
  os << "omega,value,stderr\n";
  char buf[96];
  for (std::size_t i = 0; i < s.frequencies.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", s.frequencies[i], s.values[i],
                  s.stderrs[i]);
    os << buf;
  }
}

}  // namespace qnl::points
