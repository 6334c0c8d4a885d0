#include "qnl/twolevel.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>

#include "qnl/quadrature.hpp"
#include "qnl/roots.hpp"

namespace qnl::twolevel {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
using cplx = std::complex<double>;

cplx coshz(cplx z) { return std::cosh(z); }

// sinh(z)/z, series near zero
cplx sinhc(cplx z) {
  if (std::abs(z) < 1e-4) {
    cplx z2 = z * z;
    return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sinh(z) / z;
}

double real_strict(cplx v, double scale) {
  if (std::abs(v.imag()) > 1e-12 * std::max(1.0, scale))
    throw std::runtime_error("twolevel: closed form lost realness");
  return v.real();
}
}  // namespace

double level_energy(const SquareWell& w, int n) {
  if (w.width <= 0.0) throw std::invalid_argument("square well: width must be positive");
  if (n != 1 && n != 2) throw std::invalid_argument("square well: only levels 1 and 2 are modeled");
  double d = w.width;
  return kPi * kPi * kHbar * kHbar * double(n) * double(n) / (2.0 * kElectronMass * d * d);
}

double transition_frequency(const SquareWell& w) {
  return (level_energy(w, 2) - level_energy(w, 1)) / kHbar;
}

double transition_element(const SquareWell& w) {
  if (w.width <= 0.0) throw std::invalid_argument("square well: width must be positive");
  return 16.0 * w.width / (9.0 * kPi * kPi);
}

double oscillator_strength() { return 256.0 / (27.0 * kPi * kPi); }

double rabi_frequency(const SquareWell& w, double v_rms) {
  if (v_rms < 0.0) throw std::invalid_argument("rabi_frequency: potential must be >= 0");
  double field = std::sqrt(2.0) * v_rms / w.width;  // rms -> peak, over the gap
  return kElementaryCharge * field * transition_element(w) / kHbar;
}

double pure_rabi_rho22(double t, double omega_r) {
  double s = std::sin(0.5 * omega_r * t);
  return s * s;
}

double pure_rabi_coherence_imag(double t, double omega_r) { return -0.5 * std::sin(omega_r * t); }

double interaction_power(double t, const SquareWell& w, double v_rms, int sign) {
  double omega_r = rabi_frequency(w, v_rms);
  double hbar_omega = kHbar * transition_frequency(w);
  // |rho''_12| = sin(w_r t)/2; the sign flag selects absorption (+) vs emission
  return double(sign) * hbar_omega * omega_r * 0.5 * std::sin(omega_r * t);
}

double interaction_energy(double tau, const SquareWell& w, double v_rms) {
  double omega_r = rabi_frequency(w, v_rms);
  return kHbar * transition_frequency(w) * pure_rabi_rho22(tau, omega_r);
}

double smalltime_conductance(double t, const SquareWell& w) {
  double d = w.width;
  return kElementaryCharge * kElementaryCharge * t / (2.0 * kElectronMass * d * d);
}

Admissibility admissibility(double gamma1, double gamma2, double a) {
  if (gamma1 < 0.0 || gamma2 < 0.0 || gamma1 + gamma2 <= 0.0)
    throw std::invalid_argument("admissibility: need gamma1, gamma2 >= 0, gamma1 + gamma2 > 0");
  double sum = gamma1 + gamma2;
  double b = (gamma1 - gamma2) / sum;
  double bound = 1.0 - std::sqrt(std::max(0.0, 1.0 - b * b));
  Admissibility out;
  out.admissible = 2.0 * a >= bound - 1e-12;
  double diff = std::sqrt(gamma1) - std::sqrt(gamma2);
  out.minimal_two_a = diff * diff / sum;
  return out;
}

namespace {

// Cash-Karp RK45 over a fixed-size state
template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N, class F>
State<N> rk45_advance(const F& rhs, State<N> s, double t0, double t1, double rel_tol) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 3.0 / 5, c5 = 1.0, c6 = 7.0 / 8;
  static const double b21 = 1.0 / 5;
  static const double b31 = 3.0 / 40, b32 = 9.0 / 40;
  static const double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
  static const double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
  static const double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                      b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
  static const double w1 = 37.0 / 378, w3 = 250.0 / 621, w4 = 125.0 / 594, w6 = 512.0 / 1771;
  static const double e1 = w1 - 2825.0 / 27648, e3 = w3 - 18575.0 / 48384,
                      e4 = w4 - 13525.0 / 55296, e5 = -277.0 / 14336, e6 = w6 - 1.0 / 4;

  double t = t0;
  double h = (t1 - t0) * 0.05;
  if (h <= 0.0) return s;
  const double abs_tol = 1e-13;
  int guard = 0;

  while (t < t1) {
    if (++guard > 2000000) throw std::runtime_error("rk45: step budget exhausted");
    if (t + h > t1) h = t1 - t;
    State<N> k1 = rhs(t, s);
    auto at = [&](const State<N>& base, std::initializer_list<std::pair<double, const State<N>*>> terms) {
      State<N> r = base;
      for (auto& [w, k] : terms)
        for (std::size_t i = 0; i < N; ++i) r[i] += h * w * (*k)[i];
      return r;
    };
    State<N> k2 = rhs(t + c2 * h, at(s, {{b21, &k1}}));
    State<N> k3 = rhs(t + c3 * h, at(s, {{b31, &k1}, {b32, &k2}}));
    State<N> k4 = rhs(t + c4 * h, at(s, {{b41, &k1}, {b42, &k2}, {b43, &k3}}));
    State<N> k5 = rhs(t + c5 * h, at(s, {{b51, &k1}, {b52, &k2}, {b53, &k3}, {b54, &k4}}));
    State<N> k6 = rhs(t + c6 * h, at(s, {{b61, &k1}, {b62, &k2}, {b63, &k3}, {b64, &k4}, {b65, &k5}}));

    double err = 0.0;
    State<N> next;
    for (std::size_t i = 0; i < N; ++i) {
      next[i] = s[i] + h * (w1 * k1[i] + w3 * k3[i] + w4 * k4[i] + w6 * k6[i]);
      double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]);
      double sc = abs_tol + rel_tol * std::max(std::abs(s[i]), std::abs(next[i]));
      err = std::max(err, std::abs(ei) / sc);
    }
    if (err <= 1.0) {
      t += h;
      s = next;
    }
    double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::min(5.0, std::max(0.2, factor));
    if (!(h > 1e-14 * std::max(1.0, std::abs(t1))))
      throw std::runtime_error("rk45: step size underflow (local error bound unreachable)");
  }
  return s;
}

}  // namespace

Trajectory integrate_generalized_rabi(const RabiParams& p, const BlochState& init,
                                      const std::vector<double>& t_grid) {
  if (t_grid.empty() || t_grid.front() < 0.0)
    throw std::invalid_argument("integrate_generalized_rabi: bad time grid");
  auto adm = admissibility(std::max(p.gamma1, 1e-300), p.gamma2, p.a);
  if (p.gamma1 + p.gamma2 > 0.0 && !adm.admissible)
    throw std::invalid_argument("integrate_generalized_rabi: inadmissible decoherence parameter");

  const double gs = p.gamma1 + p.gamma2;
  const double bg = p.gamma1 - p.gamma2;
  const double wr = p.omega_r;
  const double two_a_g = 2.0 * p.a * gs;

  auto rhs = [&](double, const State<5>& s) -> State<5> {
    const double x = s[0], y = s[1], z = s[2];
    return State<5>{-two_a_g * x, -wr * z - two_a_g * y, wr * y - 2.0 * gs * z + 2.0 * bg,
                    y, 0.5 * (1.0 + z)};
  };

  Trajectory traj;
  State<5> s{init.x, init.y, init.z, 0.0, 0.0};
  double t = 0.0;
  if (t_grid.front() > 0.0) s = rk45_advance(rhs, s, 0.0, t_grid.front(), 1e-10);
  t = t_grid.front();
  for (double tk : t_grid) {
    if (tk < t) throw std::invalid_argument("integrate_generalized_rabi: grid must be increasing");
    if (tk > t) s = rk45_advance(rhs, s, t, tk, 1e-10);
    t = tk;
    traj.t.push_back(tk);
    traj.state.push_back({s[0], s[1], s[2]});
    traj.energy_in.push_back(wr * 0.5 * s[3]);
    traj.upper_occupation_time.push_back(s[4]);
  }
  return traj;
}

double rho22_infty(double gamma, double a) { return 1.0 / (2.0 + 8.0 * a * gamma * gamma); }

double coherence_infty(double gamma, double a) { return gamma / (1.0 + 4.0 * a * gamma * gamma); }

double rho22_closed(double t, double gamma, double a) {
  if (gamma <= 0.0) throw std::invalid_argument("rho22_closed: gamma must be positive");
  const double base = rho22_infty(gamma, a);
  const double lbar = -(1.0 + a) * gamma;
  const cplx kappa = std::sqrt(cplx((1.0 - a) * (1.0 - a) * gamma * gamma - 1.0, 0.0));
  // (lam-/2k) e^{l+ t} - (lam+/2k) e^{l- t} = e^{lbar t}(lbar t sinhc(kt) - cosh(kt)),
  // the second form being stable through kappa -> 0
  cplx core;
  cplx kt = kappa * t;
  if (std::abs(kt) <= 30.0) {
    core = std::exp(lbar * t) * (lbar * t * sinhc(kt) - coshz(kt));
  } else {
    cplx lp = lbar + kappa, lm = lbar - kappa;
    core = lm / (2.0 * kappa) * std::exp(lp * t) - lp / (2.0 * kappa) * std::exp(lm * t);
  }
  return base * real_strict(1.0 + core, 1.0);
}

double event_density(double t, double gamma, double a) { return 2.0 * gamma * rho22_closed(t, gamma, a); }

double event_density_infty(double gamma, double a) {
  return gamma / (1.0 + 4.0 * a * gamma * gamma);
}

double g_closed(double tau, double gamma_o, double omega_r) {
  if (gamma_o <= 0.0 || omega_r <= 0.0) throw std::invalid_argument("g_closed: positive parameters required");
  return rho22_closed(omega_r * tau, gamma_o, 0.5) / rho22_infty(gamma_o, 0.5);
}

double noise_zero_freq(double gamma_o, double omega_r) {
  return -6.0 * gamma_o / ((1.0 + 2.0 * gamma_o * gamma_o) * omega_r);
}

SaturatedRate saturated_conductance(double gamma_o, double omega_r, double hbar_omega) {
  if (gamma_o <= 0.0) throw std::invalid_argument("saturated_conductance: gamma must be positive");
  SaturatedRate out;
  out.rate_infty = gamma_o * omega_r / (1.0 + 2.0 * gamma_o * gamma_o);
  out.rate_largegamma = omega_r * omega_r / (2.0 * gamma_o * omega_r);
  out.power_largegamma = out.rate_largegamma * hbar_omega;
  out.saturation = 2.0 * gamma_o * gamma_o / (1.0 + 2.0 * gamma_o * gamma_o);
  return out;
}

double waiting_density_smallrate(double t, double gamma, double omega_r) {
  if (t < 0.0) return 0.0;
  double lam = gamma * (1.0 - std::cos(omega_r * t));
  double accum = gamma * (t - std::sin(omega_r * t) / omega_r);
  return lam * std::exp(-accum);
}

math::RenewalLaw waiting_law_exact(double gamma, double a) {
  if (gamma <= 0.0) throw std::invalid_argument("waiting_law_exact: gamma must be positive");
  math::ExpSum density;

  if (std::abs(2.0 * a - 1.0) < 1e-12 && std::abs(gamma - 1.0) < 1e-4) {
    // confluent pole triple: w = gamma e^{-gamma t} (cosh(alpha t) - 1)/alpha^2
    // expanded in alpha^2 = gamma^2 - 1
    double al2 = gamma * gamma - 1.0;
    double fact = 2.0;  // (2k)!
    double alpow = 1.0;
    for (int k = 1; k <= 4; ++k) {
      density.add(gamma * alpow / fact, -gamma, 2 * k);
      alpow *= al2;
      fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
  } else {
    auto roots = math::solve_cubic(2.0 * (1.0 + a) * gamma, 4.0 * a * gamma * gamma + 1.0, gamma);
    density = math::heaviside_invert(roots, gamma);
  }

  math::RenewalLaw law{density};
  if (std::abs(density.integral() - 1.0) > 1e-6)
    throw std::runtime_error("waiting_law_exact: normalization failed");
  return law;
}

std::function<double(Rng&)> make_waiting_sampler(const math::RenewalLaw& law) {
  const double mean = law.density.mean_time();
  const double decay = -law.density.slowest_decay();
  if (!(decay > 0.0)) throw std::invalid_argument("make_waiting_sampler: law does not decay");

  // survival table out to S ~ 1e-10, then bisection per sample
  double t_max = std::max(mean, 1.0 / decay);
  while (law.density.tail_integral(t_max) > 1e-10) t_max *= 1.5;
  const int n = 4096;
  auto grid = std::make_shared<std::vector<double>>(n + 1);
  auto surv = std::make_shared<std::vector<double>>(n + 1);
  for (int i = 0; i <= n; ++i) {
    (*grid)[i] = t_max * i / n;
    (*surv)[i] = law.density.tail_integral((*grid)[i]);
  }
  auto dens = std::make_shared<math::ExpSum>(law.density);

  return [grid, surv, dens, t_max](Rng& rng) -> double {
    double u = rng.uniform_pos();
    const auto& s = *surv;
    // s decreases from 1; locate the bracketing segment
    int lo = 0, hi = int(s.size()) - 1;
    if (u <= s.back()) {
      // deep tail: bisect on the closed-form survival
      double a = (*grid).back(), b = 4.0 * t_max;
      while (dens->tail_integral(b) > u) b *= 2.0;
      for (int it = 0; it < 80; ++it) {
        double m = 0.5 * (a + b);
        (dens->tail_integral(m) > u ? a : b) = m;
      }
      return 0.5 * (a + b);
    }
    while (hi - lo > 1) {
      int mid = (lo + hi) / 2;
      (s[std::size_t(mid)] > u ? lo : hi) = mid;
    }
    // bisect inside the segment; the density can touch zero, so Newton is
    // not reliable here
    double t0 = (*grid)[std::size_t(lo)], t1 = (*grid)[std::size_t(hi)];
    for (int it = 0; it < 30; ++it) {
      double m = 0.5 * (t0 + t1);
      (dens->tail_integral(m) > u ? t0 : t1) = m;
    }
    return std::max(0.5 * (t0 + t1), 1e-300);
  };
}

double waiting_distance(double gamma, double a) {
  auto law = waiting_law_exact(gamma, a);
  const auto& w = law.density;
  const double mean = w.mean_time();

  // per-period Gauss-Legendre panels; both densities beat at the Rabi period
  static const double gl_x[10] = {-0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
                                  -0.4333953941292472, -0.1488743389816312, 0.1488743389816312,
                                  0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
                                  0.9739065285171717};
  static const double gl_w[10] = {0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
                                  0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
                                  0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
                                  0.0666713443086881};
  const double period = 2.0 * kPi;
  double total = 0.0;
  double t0 = 0.0;
  const double decay = -w.slowest_decay();
  const double t_stop = std::max(20.0 / std::max(decay, 1e-12), 4.0 * period);
  while (t0 < t_stop) {
    double t1 = t0 + period;
    double acc = 0.0;
    for (int i = 0; i < 10; ++i) {
      double t = 0.5 * (t0 + t1) + 0.5 * period * gl_x[i];
      double diff = w.value(t) - waiting_density_smallrate(t, gamma);
      acc += gl_w[i] * diff * diff;
    }
    total += 0.5 * period * acc;
    t0 = t1;
  }
  return 1e6 * mean * total;
}

EqualGammaPoint equal_gamma_dynamics(double varpi, double t) {
  if (varpi <= 0.0) throw std::invalid_argument("equal_gamma_dynamics: varpi must be positive");
  cplx mu = std::sqrt(cplx(varpi * varpi - 1.0, 0.0));
  cplx damp = std::exp(-varpi * t);
  cplx z = damp * (-coshz(mu * t) + varpi * t * sinhc(mu * t));
  cplx y = damp * t * sinhc(mu * t);
  EqualGammaPoint out;
  out.z = real_strict(z, 1.0);
  out.y = real_strict(y, 1.0);
  out.density = varpi * out.z;
  return out;
}

void equal_bias_rates(double varpi, double eu_minus_hw, double hbar_varpi, double& gamma1,
                      double& gamma2) {
  if (varpi <= 0.0 || hbar_varpi <= 0.0)
    throw std::invalid_argument("equal_bias_rates: scales must be positive");
  gamma1 = varpi * std::exp(eu_minus_hw / hbar_varpi);
  gamma2 = varpi * std::exp(-eu_minus_hw / hbar_varpi);
}

}  // namespace qnl::twolevel
