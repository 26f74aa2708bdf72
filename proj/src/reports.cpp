#include "qosc/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qosc/errors.hpp"
#include "qosc/invariant.hpp"
#include "qosc/ode.hpp"
#include "qosc/params.hpp"
#include "qosc/propagate.hpp"
#include "qosc/unitary.hpp"
#include "qosc/wavefunction.hpp"

namespace qosc {
namespace {

namespace fs = std::filesystem;

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
}

// 17 significant digits: enough to round-trip doubles, so identical runs
// produce identical bytes.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_csv(const std::string& dir, const char* name) {
  const fs::path p = fs::path(dir) / name;
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ConfigError("cannot open '" + p.string() + "' for writing");
  return os;
}

std::string dump_path(const std::string& dir, const char* kind, int n1, int n2,
                      std::size_t idx) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%d_%d_%03zu.qstate", kind, n1, n2, idx);
  return (fs::path(dir) / buf).string();
}

double resolve_theta(const Scenario& sc) {
  if (!sc.mixing_angle_auto) return sc.mixing_angle;
  const MixingAngle ma = solve_mixing_angle(sc.sched, sc.time.t0, sc.time.t1,
                                            sc.time.mesh_points, sc.tol.theta_constancy);
  if (ma.degenerate)
    std::cerr << "note: decoupling condition degenerate everywhere; mixing angle set to 0\n";
  return ma.theta;
}

struct Workspace {
  double theta = 0;
  HermiteSeries phi;
  ErmakovSolution rho1, rho2;
};

// Mixing angle, rotation-angle interpolant and the two auxiliary widths,
// shared by solve and verify.
Workspace prepare(const Scenario& sc) {
  Workspace ws;
  ws.theta = resolve_theta(sc);
  const double t0 = sc.time.t0, t1 = sc.time.t1;
  ws.phi = make_phi_series(sc.sched, t0, t1, std::max(1024, sc.time.mesh_points));

  const ParameterSchedule sched = sc.sched;
  const HermiteSeries phi = ws.phi;
  const double theta = ws.theta;
  const OmegaSqFn w1 = [sched, phi, theta](double t) {
    const DerivedParameters dp = derive_all(sched, t, theta, phi.eval(t));
    return dp.Omega1 * dp.Omega1;
  };
  const OmegaSqFn w2 = [sched, phi, theta](double t) {
    const DerivedParameters dp = derive_all(sched, t, theta, phi.eval(t));
    return dp.Omega2 * dp.Omega2;
  };

  const int n = std::max(513, sc.time.mesh_points);
  std::vector<double> mesh(n);
  for (int i = 0; i < n; ++i) mesh[i] = t0 + (t1 - t0) * i / (n - 1);
  const double w10 = w1(t0), w20 = w2(t0);
  if (w10 <= 0 || w20 <= 0)
    throw NegativeRadicand("decoupled frequency vanishes at t0; no default width exists");
  ws.rho1 = pinney_compose(integrate_classical_for_pinney(w1, mesh, std::pow(w10, -0.25), 0.0));
  ws.rho2 = pinney_compose(integrate_classical_for_pinney(w2, mesh, std::pow(w20, -0.25), 0.0));
  return ws;
}

// |i hbar d/dt psi - H psi| / |H psi| for the closed form, with the time
// derivative from a fourth-order stencil of closed-form evaluations.  The
// stencil needs two steps of clearance, so boundary rows are evaluated at
// the nearest interior time.
double closed_form_residual(const Scenario& sc, const Workspace& ws, const HamiltonianFn& ham,
                            int n1, int n2, double t, Exec exec) {
  const double d = sc.time.dt;
  const double hbar = sc.sched.hbar;
  const double lo = sc.time.t0 + 2 * d, hi = sc.time.t1 - 2 * d;
  if (lo > hi) throw ConfigError("time window shorter than the residual stencil (4 dt)");
  const double tc = std::min(std::max(t, lo), hi);

  QuantumState slice[5];
  for (int k = -2; k <= 2; ++k) {
    const double tk = tc + k * d;
    const DerivedParameters dp = derive_all(sc.sched, tk, ws.theta, ws.phi.eval(tk));
    slice[k + 2] =
        full_wavefunction(sc.grid, n1, n2, dp, ws.rho1, ws.rho2, tk, hbar, sc.variant,
                          HermiteSigns::standard, exec)
            .state;
  }
  const QuantumState hpsi = apply_hamiltonian(ham(tc), slice[2], hbar, exec);

  QuantumState num = QuantumState::zeros(sc.grid);
  const cplx ih(0.0, hbar);
  const double inv12d = 1.0 / (12.0 * d);
  for (std::size_t i = 0; i < num.psi.size(); ++i) {
    const cplx dpsi = (-slice[4].psi[i] + 8.0 * slice[3].psi[i] - 8.0 * slice[1].psi[i] +
                       slice[0].psi[i]) *
                      inv12d;
    num.psi[i] = ih * dpsi - hpsi.psi[i];
  }
  return std::sqrt(norm_sq(num, exec) / norm_sq(hpsi, exec));
}

double ermakov_row_residual(const ErmakovSolution& es, double t) {
  const double h = es.mesh[1] - es.mesh[0];
  const long i = std::lround((t - es.mesh.front()) / h);
  const long last = static_cast<long>(es.mesh.size()) - 1;
  return es.residual_at(static_cast<int>(std::clamp(i, 0L, last)));
}

}  // namespace

int cmd_derive(const Scenario& sc, const std::string& out_dir) {
  ensure_dir(out_dir);
  const double theta = resolve_theta(sc);
  const HermiteSeries phi =
      make_phi_series(sc.sched, sc.time.t0, sc.time.t1, std::max(1024, sc.time.mesh_points));

  std::ofstream os = open_csv(out_dir, "derived.csv");
  os << "t,phi,omega_c,omega,m_minus,m_plus,omega_minus,omega_plus,a1,b1,m1,m2,"
        "omega1,omega2,c,theta,omega_tilde1,omega_tilde2,Omega1,Omega2,delta\n";
  // omega_tilde columns carry the sign of the squared value: the correction
  // terms can push the radicand negative, and hiding that would make the
  // table lie about the decoupled frame.
  const auto signed_sqrt = [](double q) { return q < 0 ? -std::sqrt(-q) : std::sqrt(q); };
  for (double t : param_mesh(sc)) {
    const DerivedParameters d = derive_all(sc.sched, t, theta, phi.eval(t));
    const double row[21] = {d.t,      d.phi,    d.omega_c, d.omega,
                            d.m_minus, d.m_plus, d.omega_minus, d.omega_plus,
                            d.a1,     d.b1,     d.m1,      d.m2,
                            d.omega1, d.omega2, d.c,       d.theta,
                            signed_sqrt(d.omega_tilde1_sq), signed_sqrt(d.omega_tilde2_sq),
                            d.Omega1, d.Omega2, d.delta};
    for (int i = 0; i < 21; ++i) {
      if (i) os << ',';
      os << fmt(row[i]);
    }
    os << '\n';
  }
  return 0;
}

int cmd_solve(const Scenario& sc, const std::string& out_dir) {
  if (sc.modes.empty()) throw ConfigError("no modes requested");
  ensure_dir(out_dir);
  const Workspace ws = prepare(sc);
  const std::vector<double> times = output_times(sc);
  const double hbar = sc.sched.hbar;
  const Exec exec = default_exec();

  std::ofstream os = open_csv(out_dir, "solve.csv");
  os << "t,mode_n1,mode_n2,norm_closed,norm_pipeline,fidelity_closed_vs_pipeline,alpha_phase\n";
  for (const auto& mode : sc.modes) {
    const int n1 = mode.first, n2 = mode.second;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      const DerivedParameters dp = derive_all(sc.sched, t, ws.theta, ws.phi.eval(t));
      const FullWavefunction fw =
          full_wavefunction(sc.grid, n1, n2, dp, ws.rho1, ws.rho2, t, hbar, sc.variant,
                            HermiteSigns::standard, exec);
      const QuantumState chi =
          transformed_solution_chi(sc.grid, n1, n2, ws.rho1, ws.rho2, t, hbar, exec);
      const QuantumState pipe = compose_pipeline(chi, dp, hbar, sc.variant, exec);

      write_state(dump_path(out_dir, "closed", n1, n2, i), fw.state, hbar, t);
      write_state(dump_path(out_dir, "pipeline", n1, n2, i), pipe, hbar, t);

      os << fmt(t) << ',' << n1 << ',' << n2 << ',' << fmt(1.0 / fw.renorm) << ','
         << fmt(std::sqrt(norm_sq(pipe, exec))) << ',' << fmt(fidelity(fw.state, pipe, exec))
         << ',' << fmt(phase_alpha(ws.rho1, ws.rho2, n1, n2, t)) << '\n';
    }
  }
  return 0;
}

int cmd_verify(const Scenario& sc, const std::string& out_dir) {
  if (sc.modes.empty()) throw ConfigError("no modes requested");
  ensure_dir(out_dir);
  const Workspace ws = prepare(sc);
  const std::vector<double> times = output_times(sc);
  const std::size_t nt = times.size();
  const double hbar = sc.sched.hbar;
  const Exec exec = default_exec();

  // Reference states: a complete dump set from a previous solve run is
  // trusted (and validated); otherwise everything is evaluated inline.
  std::size_t have = 0;
  for (const auto& mode : sc.modes)
    for (std::size_t i = 0; i < nt; ++i)
      if (fs::exists(dump_path(out_dir, "closed", mode.first, mode.second, i))) ++have;
  const std::size_t total = sc.modes.size() * nt;
  if (have != 0 && have != total)
    throw ArtifactError("dump set incomplete: found " + std::to_string(have) + " of " +
                        std::to_string(total) + " closed-form states");
  const bool from_dumps = have == total;

  std::vector<std::vector<QuantumState>> closed(sc.modes.size());
  for (std::size_t m = 0; m < sc.modes.size(); ++m) {
    const int n1 = sc.modes[m].first, n2 = sc.modes[m].second;
    closed[m].reserve(nt);
    for (std::size_t i = 0; i < nt; ++i) {
      if (from_dumps) {
        StateDump d = read_state(dump_path(out_dir, "closed", n1, n2, i));
        if (!(d.state.grid == sc.grid))
          throw ArtifactError("dump grid differs from the scenario grid");
        if (std::abs(d.time - times[i]) > 1e-9)
          throw ArtifactError("dump time differs from the scenario output time");
        if (std::abs(d.hbar - hbar) > 1e-12) throw ArtifactError("dump hbar differs");
        closed[m].push_back(std::move(d.state));
      } else {
        const DerivedParameters dp =
            derive_all(sc.sched, times[i], ws.theta, ws.phi.eval(times[i]));
        closed[m].push_back(full_wavefunction(sc.grid, n1, n2, dp, ws.rho1, ws.rho2, times[i],
                                              hbar, sc.variant, HermiteSigns::standard, exec)
                                .state);
      }
    }
  }

  const HamiltonianFn ham = lab_frame_hamiltonian(sc.sched);

  // Worst case across modes per row; the invariant expectation column shows
  // the first listed mode (its drift is what the drift column bounds).
  std::vector<double> worst_resid(nt, 0.0), worst_fid(nt, 1.0), worst_drift(nt, 0.0);
  std::vector<double> expectation(nt, 0.0);

  for (std::size_t m = 0; m < sc.modes.size(); ++m) {
    const int n1 = sc.modes[m].first, n2 = sc.modes[m].second;
    const PropagationResult pr =
        propagate_strang(ham, closed[m][0], sc.time.t0, times, sc.time.dt, hbar, exec,
                         sc.tol.norm);
    std::vector<double> expect_m(nt);
    for (std::size_t i = 0; i < nt; ++i) {
      const double t = times[i];
      worst_fid[i] = std::min(worst_fid[i], fidelity(pr.states[i], closed[m][i], exec));
      worst_resid[i] =
          std::max(worst_resid[i], closed_form_residual(sc, ws, ham, n1, n2, t, exec));
      const DerivedParameters dp = derive_all(sc.sched, t, ws.theta, ws.phi.eval(t));
      const QuantumState chi = invert_pipeline(pr.states[i], dp, hbar, sc.variant, exec);
      const InvariantOperator op{{ws.rho1.rho_at(t), ws.rho1.rhodot_at(t)},
                                 {ws.rho2.rho_at(t), ws.rho2.rhodot_at(t)},
                                 hbar};
      expect_m[i] = invariant_expectation(op, chi, exec);
    }
    for (std::size_t i = 0; i < nt; ++i)
      worst_drift[i] =
          std::max(worst_drift[i], std::abs(expect_m[i] - expect_m[0]) / std::abs(expect_m[0]));
    if (m == 0) expectation = expect_m;
  }

  std::ofstream os = open_csv(out_dir, "verify.csv");
  os << "t,schrodinger_residual,oracle_fidelity,invariant_expectation,invariant_drift,"
        "ermakov_residual_1,ermakov_residual_2\n";
  double max_resid = 0, min_fid = 1, max_drift = 0, max_erm = 0;
  for (std::size_t i = 0; i < nt; ++i) {
    const double e1 = ermakov_row_residual(ws.rho1, times[i]);
    const double e2 = ermakov_row_residual(ws.rho2, times[i]);
    os << fmt(times[i]) << ',' << fmt(worst_resid[i]) << ',' << fmt(worst_fid[i]) << ','
       << fmt(expectation[i]) << ',' << fmt(worst_drift[i]) << ',' << fmt(e1) << ',' << fmt(e2)
       << '\n';
    max_resid = std::max(max_resid, worst_resid[i]);
    min_fid = std::min(min_fid, worst_fid[i]);
    max_drift = std::max(max_drift, worst_drift[i]);
    max_erm = std::max({max_erm, e1, e2});
  }

  std::vector<std::string> failing;
  if (!(min_fid >= 1.0 - sc.tol.oracle_fidelity)) failing.push_back("oracle_fidelity");
  if (!(max_resid < sc.tol.schrodinger_residual)) failing.push_back("schrodinger_residual");
  if (!(max_drift < sc.tol.invariant_drift)) failing.push_back("invariant_drift");
  if (!(max_erm < sc.tol.ermakov_residual)) failing.push_back("ermakov_residual");

  os << "# summary: " << (failing.empty() ? "pass" : "fail");
  for (const std::string& f : failing) os << ' ' << f;
  os << '\n';
  return failing.empty() ? 0 : 5;
}

}  // namespace qosc
