// qnl: simulation and verification experiments for quiet-oscillator point
// processes, two-level dynamics, tuned circuits and cavity photon statistics.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qnl/experiments.hpp"
#include "qnl/summary.hpp"

namespace {

struct Common {
  std::string out;
  std::string summary;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "data artifact path (csv or json table)");
  cmd->add_option("--summary", c.summary, "summary JSON path (default: stdout)");
  cmd->add_option("--format", c.format, "data format: csv|json")->check(CLI::IsMember({"csv", "json"}));
}

int emit(const qnl::report::Report& rep, const Common& c) {
  if (!c.summary.empty())
    qnl::report::write_report(rep, c.summary);
  else
    std::cout << qnl::report::to_json(rep).dump(2) << "\n";
  for (const auto& m : rep.metrics)
    std::fprintf(stderr, "%-28s %s  estimate=%.6g target=%.6g tol=%.3g\n", m.name.c_str(),
                 m.pass ? "pass" : "FAIL", m.estimate, m.target, m.tolerance);
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quiet-noise laboratory"};
  app.require_subcommand(1);

  using namespace qnl::experiments;

  PendulumConfig pend;
  Common pend_io;
  auto* cmd_pend = app.add_subcommand("pendulum", "marked escapement-pendulum spectrum");
  cmd_pend->add_option("--runs", pend.runs, "independent runs in the ensemble");
  cmd_pend->add_option("--periods", pend.periods, "swing periods per run");
  cmd_pend->add_option("--seed", pend.seed);
  cmd_pend->add_option("--pickup-prob", pend.pickup_prob, "molecule pick-up probability per period");
  cmd_pend->add_option("--molecule-mass", pend.molecule_mass, "molecule mass, kg");
  cmd_pend->add_option("--drop", pend.drop_per_period, "drive-weight drop per period, m");
  cmd_pend->add_option("--band-min", pend.band_min, "fewest harmonics per comparison band");
  add_common(cmd_pend, pend_io);

  PointsConfig pts;
  Common pts_io;
  auto* cmd_pts = app.add_subcommand("points", "generate a point process and estimate its spectrum");
  cmd_pts->add_option("--process", pts.process, "poisson|renewal|darkroom");
  cmd_pts->add_option("--runs", pts.runs);
  cmd_pts->add_option("--seed", pts.seed);
  cmd_pts->add_option("--rate", pts.rate, "poisson density, events per unit time");
  cmd_pts->add_option("--gamma", pts.gamma, "renewal: spontaneous rate of the exact two-level law");
  cmd_pts->add_option("--tau-r", pts.tau_r, "darkroom: uniform delay span");
  cmd_pts->add_option("--horizon", pts.horizon, "run length in time units");
  cmd_pts->add_option("--events", pts.events, "darkroom: comb length in events");
  cmd_pts->add_option("--nmax", pts.n_max, "highest Fourier harmonic 2 pi n / T");
  cmd_pts->add_option("--thin", pts.thin_keep, "keep probability for random deletion");
  cmd_pts->add_option("--superpose", pts.superpose, "independent streams merged per run");
  add_common(cmd_pts, pts_io);

  PointsConfig dark;
  dark.process = "darkroom";
  Common dark_io;
  auto* cmd_dark = app.add_subcommand("darkroom", "uniformly delayed unit comb");
  cmd_dark->add_option("--runs", dark.runs);
  cmd_dark->add_option("--seed", dark.seed);
  cmd_dark->add_option("--tau-r", dark.tau_r, "uniform delay span");
  cmd_dark->add_option("--events", dark.events, "comb length in events");
  cmd_dark->add_option("--nmax", dark.n_max, "highest Fourier harmonic");
  add_common(cmd_dark, dark_io);

  RabiConfig rabi;
  Common rabi_io;
  auto* cmd_rabi = app.add_subcommand("rabi", "generalized Rabi trajectory and event density");
  cmd_rabi->add_option("--gamma", rabi.gamma, "downward spontaneous rate, Omega_R = 1 units");
  cmd_rabi->add_option("--a", rabi.a, "decoherence parameter (2a = 1 default)");
  cmd_rabi->add_option("--tmax", rabi.t_max, "trajectory length");
  cmd_rabi->add_option("--steps", rabi.steps);
  add_common(cmd_rabi, rabi_io);

  WaitingConfig wait;
  Common wait_io;
  auto* cmd_wait = app.add_subcommand("waiting", "waiting-time densities, approximate and exact");
  cmd_wait->add_option("--gamma", wait.gamma, "spontaneous rate, Omega_R = 1 units");
  cmd_wait->add_option("--a", wait.a, "decoherence parameter");
  cmd_wait->add_option("--tmax", wait.t_max, "table length");
  cmd_wait->add_option("--steps", wait.steps);
  cmd_wait->add_flag("--distance-scan", wait.distance_scan,
                     "rank the decoherence parameter by distance from the small-rate law");
  add_common(cmd_wait, wait_io);

  CircuitConfig circ;
  Common circ_io;
  auto* cmd_circ = app.add_subcommand("circuit", "tuned-circuit response curves");
  cmd_circ->add_option("--L", circ.inductance, "inductance, H");
  cmd_circ->add_option("--C", circ.capacitance, "capacitance, F");
  cmd_circ->add_option("--G", circ.conductance, "net conductance, S");
  cmd_circ->add_option("--amp", circ.source_amp, "current-source amplitude");
  cmd_circ->add_option("--omega-lo", circ.omega_lo);
  cmd_circ->add_option("--omega-hi", circ.omega_hi);
  cmd_circ->add_option("--points", circ.points);
  add_common(cmd_circ, circ_io);

  CStateConfig cst;
  Common cst_io;
  auto* cmd_cst = app.add_subcommand("cstate", "potential-source photo-event statistics");
  cmd_cst->add_option("--v", cst.v_amp, "optical potential amplitude");
  cmd_cst->add_option("--phase", cst.phase, "carrier phase, rad");
  cmd_cst->add_option("--G", cst.conductance, "conductance carrying the noise source");
  cmd_cst->add_option("--hbar-omega", cst.hbar_omega, "energy quantum of one detection");
  cmd_cst->add_option("--duration", cst.duration);
  cmd_cst->add_option("--dt", cst.dt, "noise sampling step");
  cmd_cst->add_option("--runs", cst.runs);
  cmd_cst->add_option("--nmax", cst.n_max);
  cmd_cst->add_option("--seed", cst.seed);
  add_common(cmd_cst, cst_io);

  CavityConfig cav;
  Common cav_io;
  auto* cmd_cav = app.add_subcommand("cavity", "isolated-cavity photon statistics");
  cmd_cav->add_option("--atoms", cav.atoms, "two-level atoms in the cavity");
  cmd_cav->add_option("--jumps", cav.jumps, "recorded jumps after burn-in");
  cmd_cav->add_option("--seed", cav.seed);
  add_common(cmd_cav, cav_io);

  Common intg_io;
  auto* cmd_intg = app.add_subcommand("integrals", "reference integrals, closed form vs quadrature");
  add_common(cmd_intg, intg_io);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_pend->parsed()) return emit(run_pendulum(pend, {pend_io.out, pend_io.format}), pend_io);
    if (cmd_pts->parsed()) return emit(run_points(pts, {pts_io.out, pts_io.format}), pts_io);
    if (cmd_dark->parsed()) return emit(run_points(dark, {dark_io.out, dark_io.format}), dark_io);
    if (cmd_rabi->parsed()) return emit(run_rabi(rabi, {rabi_io.out, rabi_io.format}), rabi_io);
    if (cmd_wait->parsed()) return emit(run_waiting(wait, {wait_io.out, wait_io.format}), wait_io);
    if (cmd_circ->parsed()) return emit(run_circuit(circ, {circ_io.out, circ_io.format}), circ_io);
    if (cmd_cst->parsed()) return emit(run_cstate(cst, {cst_io.out, cst_io.format}), cst_io);
    if (cmd_cav->parsed()) return emit(run_cavity(cav, {cav_io.out, cav_io.format}), cav_io);
    if (cmd_intg->parsed()) return emit(run_integrals({intg_io.out, intg_io.format}), intg_io);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
