#include "qnl/circuits.hpp"

#include <cmath>
#include <stdexcept>

#include "qnl/quadrature.hpp"

namespace qnl::circuits {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

double TunedCircuit::omega0() const { return 1.0 / std::sqrt(inductance * capacitance); }

double TunedCircuit::photon_lifetime() const {
  if (conductance <= 0.0) throw std::invalid_argument("photon_lifetime: needs G > 0");
  return capacitance / conductance;
}

cplx admittance(const TunedCircuit& c, double omega) {
  if (omega == 0.0) throw std::invalid_argument("admittance: omega must be nonzero");
  if (c.inductance <= 0.0 || c.capacitance <= 0.0)
    throw std::invalid_argument("admittance: L and C must be positive");
  return {c.conductance, -(c.capacitance * omega - 1.0 / (c.inductance * omega))};
}

double dissipated_power(const TunedCircuit& c, double source_amp, double omega, bool exact) {
  double a2 = source_amp * source_amp;
  if (exact) {
    double y2 = std::norm(admittance(c, omega));
    return c.conductance * a2 / y2;
  }
  double det = omega - c.omega0();
  double g = c.conductance;
  return g * a2 / (g * g + 4.0 * c.capacitance * c.capacitance * det * det);
}

double stored_energy(const TunedCircuit& c, double source_amp, double omega, bool exact) {
  double a2 = source_amp * source_amp;
  if (exact) return c.capacitance * a2 / std::norm(admittance(c, omega));
  double tp = c.photon_lifetime();
  double x = 2.0 * tp * (omega - c.omega0());
  return tp * a2 / c.conductance / (1.0 + x * x);
}

double fwhp_numeric(const TunedCircuit& c) {
  const double w0 = c.omega0();
  const double peak = dissipated_power(c, 1.0, w0);
  const double span = 4.0 * c.conductance / c.capacitance;
  auto crossing = [&](double inside, double outside) {
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (inside + outside);
      (dissipated_power(c, 1.0, mid) > 0.5 * peak ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
  };
  return crossing(w0, w0 + span) - crossing(w0, w0 - span);
}

double fabry_perot_lifetime(double t1, double t2, double roundtrip_time) {
  if (t1 < 0.0 || t2 < 0.0 || t1 + t2 <= 0.0 || roundtrip_time <= 0.0)
    throw std::invalid_argument("fabry_perot_lifetime: bad parameters");
  return roundtrip_time / (t1 + t2);
}

cplx Network::admittance(double omega) const {
  if (omega == 0.0) throw std::invalid_argument("Network: omega must be nonzero");
  switch (kind) {
    case Kind::Conductance:
      return {value, 0.0};
    case Kind::Capacitance:
      return {0.0, -value * omega};
    case Kind::Inductance:
      return {0.0, 1.0 / (value * omega)};
    case Kind::Series: {
      cplx z(0.0);
      for (const auto& ch : children) z += 1.0 / ch.admittance(omega);
      return 1.0 / z;
    }
    case Kind::Parallel: {
      cplx y(0.0);
      for (const auto& ch : children) y += ch.admittance(omega);
      return y;
    }
  }
  return {};
}

namespace {

// accumulate sum C_k V_k^2 - L_k I_k^2 over the element tree
cplx reactive_sum(const Network& n, double omega, cplx v) {
  switch (n.kind) {
    case Network::Kind::Conductance:
      return 0.0;
    case Network::Kind::Capacitance:
      return n.value * v * v;
    case Network::Kind::Inductance: {
      cplx i = n.admittance(omega) * v;
      return -n.value * i * i;
    }
    case Network::Kind::Series: {
      cplx i = n.admittance(omega) * v;
      cplx acc(0.0);
      for (const auto& ch : n.children) acc += reactive_sum(ch, omega, i / ch.admittance(omega));
      return acc;
    }
    case Network::Kind::Parallel: {
      cplx acc(0.0);
      for (const auto& ch : n.children) acc += reactive_sum(ch, omega, v);
      return acc;
    }
  }
  return {};
}

}  // namespace

DerivativeIdentity admittance_derivative_identity(const Network& n, double omega, cplx v) {
  const double h = omega * 1e-6;
  cplx dy = (n.admittance(omega + h) - n.admittance(omega - h)) / (2.0 * h);
  DerivativeIdentity out;
  out.lhs = cplx(0.0, 1.0) * v * v * dy;
  out.rhs = reactive_sum(n, omega, v);
  return out;
}

double average_oscillator_energy(double omega0, double temperature) {
  if (omega0 <= 0.0 || temperature < 0.0)
    throw std::invalid_argument("average_oscillator_energy: bad parameters");
  double half = 0.5 * kHbar * omega0;
  if (temperature == 0.0) return half;
  double x = half / (kBoltzmann * temperature);
  return half / std::tanh(x);
}

double riccati_residual(double x) {
  if (x <= 0.0) throw std::invalid_argument("riccati_residual: x must be positive");
  auto f = [](cplx u) { return 0.5 / std::tanh(0.5 * u); };
  // complex-step derivative: no subtractive cancellation, exact to roundoff
  const double h = 1e-100;
  double df = f(cplx(x, h)).imag() / h;
  double fx = f(cplx(x, 0.0)).real();
  return df + fx * fx - 0.25;
}

double thermal_balance(double g_absorb, double g_emit, double alpha) {
  if (!(g_absorb > g_emit && g_emit > 0.0))
    throw std::invalid_argument("thermal_balance: requires Ga > Ge > 0 (net dissipation)");
  double ratio = g_absorb / g_emit;
  return 0.5 * alpha * (ratio + 1.0) / (ratio - 1.0);
}

double infer_alpha(double omega0, double temperature) {
  if (omega0 <= 0.0 || temperature <= 0.0) throw std::invalid_argument("infer_alpha: bad parameters");
  double target = average_oscillator_energy(omega0, temperature);
  // (R - 1)/(R + 1) with R = exp(hbar w / kB T), overflow-free
  double x = 0.5 * kHbar * omega0 / (kBoltzmann * temperature);
  return 2.0 * target * std::tanh(x);
}

double nyquist_classical_energy(double conductance, double capacitance, double temperature) {
  if (conductance <= 0.0 || capacitance <= 0.0 || temperature <= 0.0)
    throw std::invalid_argument("nyquist_classical_energy: bad parameters");
  const double sj = 2.0 * kBoltzmann * temperature * conductance;
  const double g = conductance, c = capacitance;
  // compactify w = (G/C) tan(th); integrand decays as 1/w^2
  auto f = [&](double th) {
    double cth = std::cos(th);
    if (std::abs(cth) < 1e-18) return 0.0;
    double w = g / c * std::tan(th);
    double scale = (g / c) / (cth * cth);
    return scale * c * sj / (2.0 * (g * g + c * c * w * w));
  };
  double integral = qnl::integrate(f, -0.5 * kPi, 0.0, 1e-12 * kBoltzmann * temperature) +
                    qnl::integrate(f, 0.0, 0.5 * kPi, 1e-12 * kBoltzmann * temperature);
  return integral / (2.0 * kPi);
}

double cstate_power_noise_density(cplx v, double conductance, double hbar_omega) {
  double sq = hbar_omega * conductance;
  return (v.real() * v.real() + v.imag() * v.imag()) * sq;
}

CStateResult cstate_montecarlo(cplx v, double conductance, double hbar_omega, double duration,
                               double dt, Rng& rng) {
  if (conductance <= 0.0 || hbar_omega <= 0.0 || duration <= 0.0 || dt <= 0.0 || dt > duration)
    throw std::invalid_argument("cstate_montecarlo: bad parameters");

  CStateResult out;
  out.events.horizon = duration;
  out.mean_power = conductance * std::norm(v);

  const double sigma = std::sqrt(hbar_omega * conductance / dt);
  const std::size_t steps = std::size_t(std::ceil(duration / dt));
  // regular unit stream in rescaled time; the offset keeps it stationary
  double target = rng.uniform_pos();
  double tau = 0.0;
  std::size_t clipped = 0;

  for (std::size_t k = 0; k < steps; ++k) {
    const double t0 = double(k) * dt;
    const double t1 = std::min(duration, t0 + dt);
    double power = out.mean_power + v.real() * sigma * rng.normal() + v.imag() * sigma * rng.normal();
    if (power < 0.0) {
      ++clipped;
      power = 0.0;
    }
    const double rate = power / hbar_omega;
    const double tau1 = tau + rate * (t1 - t0);
    while (target <= tau1) {
      double frac = rate > 0.0 ? (target - tau) / (rate * (t1 - t0)) : 0.0;
      double tev = t0 + frac * (t1 - t0);
      if (tev > duration) tev = duration;
      if (out.events.times.empty() || tev > out.events.times.back())
        out.events.times.push_back(tev);
      target += 1.0;
    }
    tau = tau1;
  }

  out.clipped_fraction = double(clipped) / double(steps);
  out.clip_warning = out.clipped_fraction > 1e-3;
  return out;
}

}  // namespace qnl::circuits
