// Acceptance suite: one integration check per numbered criterion, each
// printing a single pass/fail line.  Run all with no arguments or one with
// --criterion N.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstdarg>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qnl/bicomplex.hpp"
#include "qnl/cavity.hpp"
#include "qnl/circuits.hpp"
#include "qnl/experiments.hpp"
#include "qnl/integrals.hpp"
#include "qnl/pendulum.hpp"
#include "qnl/points.hpp"
#include "qnl/quadrature.hpp"
#include "qnl/roots.hpp"
#include "qnl/twolevel.hpp"

using namespace qnl;

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

struct Checker {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const char* fmt, ...) {
    if (cond) return;
    ok = false;
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    notes.emplace_back(buf);
  }
};

// band means of per-run periodograms with a run-scatter standard error
struct BandStat {
  double mean = 0.0;
  double se = 0.0;
};

BandStat band_mean(const points::SpectrumEstimate& spec, std::size_t lo, std::size_t hi) {
  const std::size_t runs = spec.per_run.size();
  std::vector<double> rm(runs, 0.0);
  double width = double(hi - lo);
  for (std::size_t r = 0; r < runs; ++r) {
    for (std::size_t i = lo; i < hi; ++i) rm[r] += spec.per_run[r][i];
    rm[r] /= width;
  }
  BandStat b;
  for (double v : rm) b.mean += v;
  b.mean /= double(runs);
  double var = 0.0;
  for (double v : rm) var += (v - b.mean) * (v - b.mean);
  b.se = std::sqrt(var / (double(runs) * double(runs - 1)));
  return b;
}

// ---- criterion 1: pendulum spectrum ---------------------------------------

bool criterion_pendulum() {
  experiments::PendulumConfig cfg;
  cfg.runs = 128;
  cfg.periods = 10000000;
  cfg.seed = 20260810;
  auto rep = experiments::run_pendulum(cfg, {});
  Checker c;
  for (const auto& m : rep.metrics)
    c.expect(m.pass, "%s: ratio %.4f outside 1 +- 0.10", m.name.c_str(), m.estimate);
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

// ---- criterion 2: generalized Rabi ODE vs closed form ----------------------

bool criterion_rabi() {
  Checker c;
  for (double gamma : {0.1, 1.0, 2.0, 10.0}) {
    twolevel::RabiParams p;
    p.gamma2 = gamma;
    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(50.0 * i / 200.0);
    auto traj = twolevel::integrate_generalized_rabi(p, {}, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double rho22 = 0.5 * (1.0 + traj.state[i].z);
      worst = std::max(worst, std::abs(rho22 - twolevel::rho22_closed(grid[i], gamma, 0.5)));
    }
    c.expect(worst < 1e-8, "gamma=%g: ODE vs closed form max err %.2e >= 1e-8", gamma, worst);

    double t_ss = 60.0 / (1.5 * gamma) + 60.0 / std::min(1.0, 1.5 * gamma);
    auto tail = twolevel::integrate_generalized_rabi(p, {}, {t_ss});
    double rho22_ss = 0.5 * (1.0 + tail.state.back().z);
    double coh_ss = 0.5 * tail.state.back().y;
    c.expect(std::abs(rho22_ss - twolevel::rho22_infty(gamma, 0.5)) < 1e-10,
             "gamma=%g: steady rho22 off by %.2e", gamma,
             std::abs(rho22_ss - twolevel::rho22_infty(gamma, 0.5)));
    c.expect(std::abs(coh_ss - twolevel::coherence_infty(gamma, 0.5)) < 1e-10,
             "gamma=%g: steady coherence off by %.2e", gamma,
             std::abs(coh_ss - twolevel::coherence_infty(gamma, 0.5)));
  }
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

// ---- criterion 3: waiting-time law ----------------------------------------

bool criterion_waiting() {
  Checker c;
  auto law2 = twolevel::waiting_law_exact(2.0, 0.5);
  int thirds = 0, twothirds = 0;
  double root3 = std::sqrt(3.0);
  for (const auto& t : law2.density.terms()) {
    c.expect(std::abs(t.weight.imag()) < 1e-9, "gamma=2 weight not real");
    if (std::abs(t.weight.real() - 1.0 / 3.0) < 1e-9) ++thirds;
    if (std::abs(t.weight.real() + 2.0 / 3.0) < 1e-9) ++twothirds;
    bool pole_ok = std::abs(t.pole - math::cplx(-2.0, 0.0)) < 1e-9 ||
                   std::abs(t.pole - math::cplx(-2.0 + root3, 0.0)) < 1e-9 ||
                   std::abs(t.pole - math::cplx(-2.0 - root3, 0.0)) < 1e-9;
    c.expect(pole_ok, "gamma=2 pole %.12f not one of -2, -2+-sqrt(3)", t.pole.real());
  }
  c.expect(thirds == 2 && twothirds == 1, "gamma=2 weights are not {1/3, 1/3, -2/3}");

  for (double gamma : {0.01, 0.5, 2.0, 50.0}) {
    auto law = twolevel::waiting_law_exact(gamma, 0.5);
    double integral = law.density.integral();
    c.expect(std::abs(integral - 1.0) < 1e-9, "gamma=%g: integral %.12f != 1", gamma, integral);
    double inv_mean = 1.0 / law.mean_waiting_time();
    double ginf = twolevel::event_density_infty(gamma, 0.5);
    c.expect(std::abs(inv_mean - ginf) < 1e-9 * ginf, "gamma=%g: 1/<tau>=%.12g vs G(inf)=%.12g",
             gamma, inv_mean, ginf);
  }
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

// ---- criterion 4: decoherence-distance table --------------------------------

bool criterion_distance() {
  const double gamma = 0.001;
  const double two_a[] = {0.996, 0.998, 1.0, 1.04};
  const double published[] = {1.6, 0.066, 0.1, 3.2};
  double got[4];
  for (int i = 0; i < 4; ++i) got[i] = twolevel::waiting_distance(gamma, 0.5 * two_a[i]);
  std::printf("    Delta table at gamma=0.001: computed {%.3g, %.3g, %.3g, %.3g}, published {1.6, 0.066, 0.1, 3.2}\n",
              got[0], got[1], got[2], got[3]);

  Checker c;
  // published ordering: 0.998 < 1 < 0.996 < 1.04
  c.expect(got[1] < got[2], "ordering Delta(0.998) < Delta(1) violated: %.3g vs %.3g", got[1], got[2]);
  c.expect(got[2] < got[0], "ordering Delta(1) < Delta(0.996) violated: %.3g vs %.3g", got[2], got[0]);
  c.expect(got[0] < got[3], "ordering Delta(0.996) < Delta(1.04) violated: %.3g vs %.3g", got[0], got[3]);
  for (int i = 0; i < 4; ++i) {
    bool within = got[i] > 0.5 * published[i] && got[i] < 2.0 * published[i];
    c.expect(within, "Delta(2a=%.3f) = %.3g not within a factor 2 of %.3g", two_a[i], got[i],
             published[i]);
  }
  if (!c.ok)
    std::printf(
        "    note: computed from the printed definition (10^6 <tau> int (w - W)^2 dt) and "
        "cross-checked by two independent quadratures; the published table does not follow "
        "from that definition (see decisions ledger). The qualitative conclusion (distance "
        "minimal near 2a = 1, diverging away from it) does hold.\n");
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

// ---- criterion 5: renewal Monte Carlo bridge --------------------------------

bool criterion_bridge() {
  Checker c;
  auto law = twolevel::waiting_law_exact(2.0, 0.5);
  auto sampler = twolevel::make_waiting_sampler(law);
  const double horizon = 15000.0;
  const int runs = 360;
  auto ens = points::make_ensemble(runs, 31415, [&](Rng& rng) {
    return points::gen_renewal(sampler, horizon, rng, law.mean_waiting_time());
  });
  c.expect(ens.total_events() >= 1000000, "only %zu events generated", ens.total_events());

  // empirical rate vs 2/9
  double rate = double(ens.total_events()) / (double(runs) * horizon);
  double rate_se = std::sqrt(rate / (double(runs) * horizon));
  c.expect(std::abs(rate - 2.0 / 9.0) < 3.0 * rate_se, "rate %.6f vs 2/9 (3 sigma = %.2g)", rate,
           3.0 * rate_se);

  // correlation against G(tau)/G(inf)
  auto g = points::estimate_g(ens, 0.25, 8.0);
  for (std::size_t b = 0; b < g.g.size(); ++b) {
    double target = twolevel::g_closed(g.bin_center(b), 2.0, 1.0);
    c.expect(std::abs(g.g[b] - target) < 3.0 * g.stderrs[b] + 0.01,
             "g bin %.2f: %.4f vs %.4f (3 sigma %.4f)", g.bin_center(b), g.g[b], target,
             3.0 * g.stderrs[b]);
  }

  // low-frequency relative noise against the closed form
  int n_max = int(0.3 * horizon / kTwoPi);
  auto spec = points::estimate_spectrum(ens, n_max);
  auto noise = points::relative_noise(spec);
  int n_low = int(0.1 * horizon / kTwoPi);
  double nm = 0.0, se2 = 0.0, ana = 0.0;
  for (int i = 0; i < n_low; ++i) {
    nm += noise[std::size_t(i)].value;
    se2 += noise[std::size_t(i)].stderr_ * noise[std::size_t(i)].stderr_;
    double w = noise[std::size_t(i)].omega;
    ana += -108.0 / ((9.0 + w * w) * (9.0 + w * w));  // transform of g - 1 at gamma = 2
  }
  nm /= n_low;
  ana /= n_low;
  double nse = std::sqrt(se2) / n_low;
  c.expect(std::abs(ana - twolevel::noise_zero_freq(2.0, 1.0)) < 0.01,
           "analytic band check drifted from N(0)");
  c.expect(std::abs(nm - ana) < 3.0 * nse, "N(0) band %.4f vs %.4f (3 sigma %.4f)", nm, ana,
           3.0 * nse);
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

// ---- criterion 6: dark-room statistics --------------------------------------

bool criterion_darkroom() {
  Checker c;
  const double tau_r = 20.0;
  const std::int64_t events = 2000;
  const int runs = 500;
  auto ens = points::make_ensemble(runs, 606, [&](Rng& rng) {
    return points::gen_darkroom(tau_r, events, rng);
  });

  auto g_of = [&](double tau) {
    return tau >= tau_r ? 1.0 : 1.0 - (tau_r - tau) / (tau_r * tau_r);
  };
  auto s_of = [&](double w) {
    double x = w * tau_r;
    return 1.0 + (std::cos(x) - 1.0) / (0.5 * x * x);
  };
  auto v_of = [&](double w) {
    return w >= tau_r ? -1.0 + tau_r / (3.0 * w) : -w / tau_r + w * w / (3.0 * tau_r * tau_r);
  };

  auto g = points::estimate_g(ens, 1.0, 40.0);
  for (std::size_t b = 0; b < g.g.size(); ++b) {
    double target = 0.5 * (g_of(g.bin_edges[b]) + g_of(g.bin_edges[b + 1]));
    c.expect(std::abs(g.g[b] - target) < 3.0 * g.stderrs[b] + 2e-3,
             "g bin %.1f: %.4f vs %.4f (3 sigma %.4f)", g.bin_center(b), g.g[b], target,
             3.0 * g.stderrs[b]);
  }

  const double horizon = double(events);
  int n_max = int(20.0 / tau_r * horizon / kTwoPi);  // up to omega tau_r = 20
  auto spec = points::estimate_spectrum(ens, n_max);
  std::size_t lo = 0;
  while (lo < spec.frequencies.size()) {
    std::size_t hi = std::min(spec.frequencies.size(),
                              std::max(lo + 12, std::size_t(double(lo) * 1.5)));
    auto bs = band_mean(spec, lo, hi);
    double ana = 0.0;
    for (std::size_t i = lo; i < hi; ++i) ana += s_of(spec.frequencies[i]);
    ana /= double(hi - lo);
    c.expect(std::abs(bs.mean - ana) < 3.0 * bs.se + 2e-3,
             "spectrum band at omega=%.3f: %.4f vs %.4f (3 sigma %.4f)", spec.frequencies[lo],
             bs.mean, ana, 3.0 * bs.se);
    lo = hi;
  }

  // suppression at small frequencies
  auto low = band_mean(spec, 0, 3);
  double low_ana = (s_of(spec.frequencies[0]) + s_of(spec.frequencies[1]) + s_of(spec.frequencies[2])) / 3.0;
  c.expect(low_ana < 0.01, "low-frequency analytic value unexpectedly large");
  c.expect(std::abs(low.mean - low_ana) < 3.0 * low.se + 5e-4,
           "S(0+) = %.5f not suppressed towards %.5f", low.mean, low_ana);

  auto var = points::estimate_variance_curve(ens, {2.0, 5.0, 10.0, 20.0, 40.0, 80.0});
  for (const auto& vp : var) {
    c.expect(std::abs(vp.value - v_of(vp.window)) < 3.0 * vp.stderr_ + 2e-3,
             "V(%g): %.4f vs %.4f (3 sigma %.4f)", vp.window, vp.value, v_of(vp.window),
             3.0 * vp.stderr_);
  }
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

// ---- criterion 7: thinning invariance ---------------------------------------

bool criterion_thinning() {
  Checker c;
  struct Family {
    const char* name;
    std::function<points::EventSeries(Rng&)> gen;
    double bin, tau_max;
  };
  auto law = twolevel::waiting_law_exact(2.0, 0.5);
  auto sampler = twolevel::make_waiting_sampler(law);
  std::vector<Family> families = {
      {"poisson", [](Rng& r) { return points::gen_poisson(2.0, 2000.0, r); }, 0.5, 10.0},
      {"darkroom", [](Rng& r) { return points::gen_darkroom(12.0, 4000, r); }, 1.0, 24.0},
      {"rabi-renewal",
       [&](Rng& r) { return points::gen_renewal(sampler, 4000.0, r, law.mean_waiting_time()); },
       0.5, 8.0}};

  for (const auto& fam : families) {
    auto full = points::make_ensemble(48, 99, fam.gen);
    auto cut = points::make_ensemble(48, 99, [&](Rng& r) {
      auto s = fam.gen(r);
      return points::thin(s, 0.5, r);
    });
    auto g1 = points::estimate_g(full, fam.bin, fam.tau_max);
    auto g2 = points::estimate_g(cut, fam.bin, fam.tau_max);
    for (std::size_t b = 0; b < g1.g.size(); ++b) {
      double sig = std::sqrt(g1.stderrs[b] * g1.stderrs[b] + g2.stderrs[b] * g2.stderrs[b]);
      c.expect(std::abs(g1.g[b] - g2.g[b]) < 3.0 * sig + 2e-3,
               "%s bin %.2f: g %.4f vs thinned %.4f (3 sigma %.4f)", fam.name, g1.bin_center(b),
               g1.g[b], g2.g[b], 3.0 * sig);
    }
  }
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

// ---- criterion 8: superposition ----------------------------------------------

bool criterion_superposition() {
  Checker c;
  auto law = twolevel::waiting_law_exact(2.0, 0.5);
  auto sampler = twolevel::make_waiting_sampler(law);
  const int m_series = 50;
  auto ens = points::make_ensemble(40, 2718, [&](Rng& rng) {
    std::vector<points::EventSeries> parts;
    parts.reserve(m_series);
    for (int i = 0; i < m_series; ++i)
      parts.push_back(points::gen_renewal(sampler, 2000.0, rng, law.mean_waiting_time()));
    return points::superpose(parts);
  });
  auto g = points::estimate_g(ens, 0.04, 0.2);
  double est = g.g.front();
  double se = g.stderrs.front();
  c.expect(3.0 * se < 0.02, "first-bin uncertainty too large to resolve 0.98 (3 sigma %.4f)", 3.0 * se);
  c.expect(std::abs(est - 0.98) < 3.0 * se + 2e-4, "merged g(0) = %.5f vs 0.98 (3 sigma %.4f)", est,
           3.0 * se);
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

// ---- criterion 9: C-state ------------------------------------------------------

bool criterion_cstate() {
  Checker c;
  const double g_cond = 4000.0;
  const double duration = 50.0;
  const int runs = 30;

  auto band_noise = [&](double phase, double& value, double& se) {
    points::Ensemble ens;
    ens.runs.resize(runs);
    double clip = 0.0;
    for (int r = 0; r < runs; ++r) {
      Rng rng = Rng::stream(4242 + std::uint64_t(phase * 1000.0), std::uint64_t(r));
      auto res = circuits::cstate_montecarlo(std::polar(1.0, phase), g_cond, 1.0, duration, 0.01, rng);
      clip = std::max(clip, res.clipped_fraction);
      ens.runs[std::size_t(r)] = std::move(res.events);
    }
    c.expect(clip <= 1e-3, "clipped fraction %.2g above 0.1%%", clip);
    auto spec = points::estimate_spectrum(ens, 150);
    auto noise = points::relative_noise(spec);
    value = 0.0;
    double se2 = 0.0;
    for (const auto& np : noise) {
      value += np.value;
      se2 += np.stderr_ * np.stderr_;
    }
    value /= double(noise.size());
    se = std::sqrt(se2) / double(noise.size());
  };

  double n0, se0, n1, se1;
  band_noise(0.0, n0, se0);
  c.expect(std::abs(n0) < 3.0 * se0, "N(Omega) = %.3g not zero within 3 sigma (%.3g)", n0, 3.0 * se0);
  band_noise(2.2, n1, se1);
  c.expect(std::abs(n1) < 3.0 * se1, "rotated N(Omega) = %.3g not zero within 3 sigma (%.3g)", n1,
           3.0 * se1);
  c.expect(std::abs(n0 - n1) < 3.0 * std::sqrt(se0 * se0 + se1 * se1),
           "phase rotation changed the noise: %.3g vs %.3g", n0, n1);
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

// ---- criterion 10: cavity -------------------------------------------------------

bool criterion_cavity() {
  Checker c;

  Rng rng20(11);
  auto sim20 = cavity::simulate(20, 10000000, rng20);
  auto exact20 = cavity::stationary_distribution(20);
  double tv = cavity::total_variation(sim20.occupancy, exact20);
  c.expect(tv < 0.01, "N=20 total variation %.4f >= 0.01", tv);
  c.expect(std::abs(sim20.empirical.mean - 10.0) < 0.2, "N=20 mean %.3f outside 10 +- 2%%",
           sim20.empirical.mean);
  c.expect(std::abs(sim20.empirical.variance - 5.0) < 0.1, "N=20 var %.3f outside 5 +- 2%%",
           sim20.empirical.variance);

  Rng rng2(13);
  auto sim2 = cavity::simulate(2, 2000000, rng2);
  c.expect(std::abs(sim2.occupancy[0] - 0.25) < 0.01, "N=2 pr(0) = %.4f outside 0.25 +- 0.01",
           sim2.occupancy[0]);

  // exact detailed balance in integers for N <= 30
  for (int n = 1; n <= 30; ++n) {
    for (int m = 0; m < n; ++m) {
      std::uint64_t lhs = cavity::statistical_weight(n, n - m - 1) * std::uint64_t(m + 1) *
                          std::uint64_t(m + 1);
      std::uint64_t rhs = cavity::statistical_weight(n, n - m) * std::uint64_t(n - m) *
                          std::uint64_t(m + 1);
      if (lhs != rhs) {
        c.expect(false, "detailed balance broken at N=%d m=%d", n, m);
        break;
      }
    }
  }

  // linearized noise: exact integral and simulation comparison at N = 100
  double integral = integrate([&](double w) { return 2.0 * cavity::quanta_noise_spectrum(100, w); },
                              0.0, 4e5, 1e-8) / kTwoPi;
  c.expect(std::abs(integral - 25.0) < 0.05, "Lorentzian integral %.4f vs N/4 = 25", integral);

  const double duration = 60.0;
  std::vector<std::pair<int, int>> bands;
  for (double w = 10.0; w <= 1000.0; w *= 1.8) {
    int n0 = std::max(16, int(w * duration / kTwoPi));
    bands.push_back({n0 - 12, n0 + 12});
  }
  std::vector<int> n_list;
  for (auto [a, b] : bands)
    for (int n = a; n <= b; ++n) n_list.push_back(n);
  auto spec = cavity::empirical_quanta_spectrum(100, duration, 2e-4, 64, 5150, n_list);
  std::size_t idx = 0;
  for (auto [a, b] : bands) {
    double sim = 0.0, ana = 0.0;
    for (int n = a; n <= b; ++n, ++idx) {
      sim += spec.values[idx];
      ana += cavity::quanta_noise_spectrum(100, spec.frequencies[idx]);
    }
    c.expect(std::abs(sim / ana - 1.0) < 0.10, "N=100 spectrum band at n=%d: ratio %.3f", (a + b) / 2,
             sim / ana);
  }
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

// ---- criterion 11: circuit identities ---------------------------------------------

bool criterion_circuit() {
  Checker c;
  circuits::TunedCircuit tc{1.0, 1.0, 0.03};
  double width = circuits::fwhp_numeric(tc);
  c.expect(std::abs(width - 0.03) < 1e-9 * 0.03, "FWHP %.12g vs G/C", width);

  // stored-energy integral
  const double scale = 3.0 / (2.0 * tc.photon_lifetime());
  const double w0 = tc.omega0();
  auto integrand = [&](double th) {
    double cs = std::cos(th);
    if (std::abs(cs) < 1e-18) return 0.0;
    return circuits::stored_energy(tc, 1.0, w0 + scale * std::tan(th)) * scale / (cs * cs);
  };
  double total = (integrate(integrand, -0.25 * kTwoPi, 0.0, 1e-12) +
                  integrate(integrand, 0.0, 0.25 * kTwoPi, 1e-12)) / kTwoPi;
  double target = 1.0 / (4.0 * tc.conductance);
  c.expect(std::abs(total - target) < 1e-6 * target, "energy integral %.10g vs %.10g", total, target);

  // dY/dw identity on random ladders
  Rng rng(77);
  auto rand_net = [&](auto&& self, int depth) -> circuits::Network {
    double v = 0.5 + 1.5 * rng.uniform();
    if (depth == 0) {
      double u = rng.uniform();
      if (u < 0.34) return circuits::Network::conductance(v);
      if (u < 0.67) return circuits::Network::capacitance(v);
      return circuits::Network::inductance(v);
    }
    std::vector<circuits::Network> parts;
    int n = 2 + int(rng.uniform() * 2.0);
    for (int i = 0; i < n; ++i) parts.push_back(self(self, depth - 1));
    return rng.bernoulli(0.5) ? circuits::Network::series(std::move(parts))
                              : circuits::Network::parallel(std::move(parts));
  };
  for (int it = 0; it < 100; ++it) {
    auto net = rand_net(rand_net, 2);
    double omega = 0.5 + 2.0 * rng.uniform();
    circuits::cplx v(1.0, 0.5 * rng.uniform());
    auto id = circuits::admittance_derivative_identity(net, omega, v);
    c.expect(std::abs(id.lhs - id.rhs) < 1e-8 * std::max(1.0, std::abs(id.rhs)),
             "ladder %d: identity residual %.2e", it, std::abs(id.lhs - id.rhs));
  }

  // Nyquist integral
  double e = circuits::nyquist_classical_energy(0.7, 2.0, 300.0);
  double kt2 = 0.5 * circuits::kBoltzmann * 300.0;
  c.expect(std::abs(e - kt2) < 1e-6 * kt2, "nyquist integral %.6g vs kT/2", e);

  // alpha inference across a grid
  for (double w0g : {1e11, 1e13, 3e15}) {
    for (double tm : {0.8, 77.0, 3000.0}) {
      double alpha = circuits::infer_alpha(w0g, tm);
      c.expect(std::abs(alpha - circuits::kHbar * w0g) < 1e-9 * circuits::kHbar * w0g,
               "alpha(%g, %g) = %.12g vs hbar omega", w0g, tm, alpha);
    }
  }
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

// ---- criterion 12: reference math ---------------------------------------------------

bool criterion_reference_math() {
  Checker c;
  const int ms[] = {1, 1, 2, 2, 3, 3, 3, 3, 3};
  const int ns[] = {0, 2, 0, 1, 0, 1, 2, 3, 4};
  for (double g : {1.1, 1.8, 2.5, 3.2, 4.0}) {
    for (double y : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      for (int i = 0; i < 9; ++i) {
        double closed = math::imn_closed(ms[i], ns[i], g, y);
        double quad = math::imn_quadrature(ms[i], ns[i], g, y);
        c.expect(std::abs(quad - closed) < 1e-6 * std::max(1.0, std::abs(closed)),
                 "I_%d%d(%.1f, %.1f): %.8g vs %.8g", ms[i], ns[i], g, y, quad, closed);
      }
    }
  }

  Rng rng(123);
  for (int it = 0; it < 1000; ++it) {
    double a2 = 4.0 * rng.normal(), a1 = 4.0 * rng.normal(), a0 = 4.0 * rng.normal();
    auto roots = math::solve_cubic(a2, a1, a0);
    double scale = std::max({1.0, std::abs(a2), std::abs(a1), std::abs(a0)});
    for (auto p : roots.roots) {
      double res = std::abs(((p + a2) * p + a1) * p + a0);
      c.expect(res < 1e-10 * scale, "cubic residual %.2e at iteration %d", res, it);
    }
  }

  for (int it = 0; it < 1000; ++it) {
    math::BiComplex u{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    if (!math::bicomplex_invertible(u)) continue;
    auto p = math::bicomplex_invert(u) * u;
    bool ok = std::abs(p.a - 1.0) < 1e-12 && std::abs(p.b) < 1e-12 && std::abs(p.c) < 1e-12 &&
              std::abs(p.d) < 1e-12;
    c.expect(ok, "bicomplex round trip off at iteration %d", it);
  }
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

// ---- criterion 13: CLI reproducibility ------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

bool criterion_reproducibility() {
  Checker c;
  const char* cli = std::getenv("QNL_CLI");
  c.expect(cli != nullptr, "QNL_CLI is not set");
  if (!cli) {
    for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
    return false;
  }

  const std::vector<std::string> invocations = {
      "points --process renewal --gamma 2 --runs 6 --horizon 300 --nmax 24 --seed 5",
      "points --process poisson --rate 1.5 --runs 5 --horizon 200 --nmax 16 --seed 9",
      "darkroom --tau-r 8 --events 2000 --runs 4 --seed 3",
      "waiting --gamma 2",
      "circuit --points 32",
      "cstate --duration 5 --runs 3 --nmax 16 --seed 2",
      "cavity --atoms 6 --jumps 20000 --seed 4",
      "pendulum --runs 3 --periods 100000 --pickup-prob 0.05 --molecule-mass 0.01",
      "integrals"};

  int idx = 0;
  for (const auto& inv : invocations) {
    std::string a = "acc13_a_" + std::to_string(idx), b = "acc13_b_" + std::to_string(idx);
    auto run = [&](const std::string& tag, int threads) {
      std::ostringstream cmd;
      cmd << "QNL_THREADS=" << threads << " " << cli << " " << inv << " --out " << tag
          << ".csv --summary " << tag << ".json >/dev/null 2>&1";
      return std::system(cmd.str().c_str());
    };
    int rc_a = run(a, 1);
    int rc_b = run(b, 8);
    bool codes_ok = (rc_a == rc_b) && (rc_a == 0 || rc_a == 256);
    c.expect(codes_ok, "'%s': exit codes %d vs %d", inv.c_str(), rc_a, rc_b);
    c.expect(slurp(a + ".csv") == slurp(b + ".csv"), "'%s': data differs across worker counts",
             inv.c_str());
    c.expect(slurp(a + ".json") == slurp(b + ".json"), "'%s': summary differs across worker counts",
             inv.c_str());
    // repeated run, same seed, same worker count
    int rc_c = run(a, 1);
    c.expect(rc_c == rc_a, "'%s': exit code changed on repeat", inv.c_str());
    c.expect(slurp(a + ".csv") == slurp(b + ".csv"), "'%s': data differs across repeats", inv.c_str());
    std::remove((a + ".csv").c_str());
    std::remove((a + ".json").c_str());
    std::remove((b + ".csv").c_str());
    std::remove((b + ".json").c_str());
    ++idx;
  }
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  return c.ok;
}

struct Criterion {
  int id;
  const char* label;
  bool (*fn)();
};

const Criterion kCriteria[] = {
    {1, "pendulum spectrum matches the Lorentzian-suppressed shot plateau", criterion_pendulum},
    {2, "generalized Rabi trajectories match the closed form and steady state", criterion_rabi},
    {3, "exact waiting law: special form, normalization, mean-rate identity", criterion_waiting},
    {4, "decoherence-distance table ordering and magnitudes", criterion_distance},
    {5, "renewal Monte Carlo bridge: rate, correlation, low-frequency noise", criterion_bridge},
    {6, "dark-room correlation, spectrum and count variance", criterion_darkroom},
    {7, "thinning leaves the normalized correlation invariant", criterion_thinning},
    {8, "superposition of 50 antibunched streams gives g(0) = 0.98", criterion_superposition},
    {9, "C-state photo-events are Poissonian and phase invariant", criterion_cstate},
    {10, "cavity statistics: binomial law, detailed balance, quanta noise", criterion_cavity},
    {11, "tuned-circuit identities and noise-scale inference", criterion_circuit},
    {12, "reference integrals, cubic residuals, bi-complex round trip", criterion_reference_math},
    {13, "CLI output byte-identical across seeds, repeats and workers", criterion_reproducibility},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }

  int failures = 0;
  for (const auto& crit : kCriteria) {
    if (only != 0 && crit.id != only) continue;
    bool ok = crit.fn();
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", crit.id, crit.label);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
