#pragma once

#include <functional>
#include <vector>

#include "qosc/grid.hpp"
#include "qosc/ode.hpp"
#include "qosc/parallel.hpp"
#include "qosc/params.hpp"
#include "qosc/schedule.hpp"

namespace qosc {

// Instantaneous coefficients of the quadratic Hamiltonian family
// H = kxx p_x^2 + kyy p_y^2 + kxy p_x p_y
//   + vxx x^2 + vyy y^2 + vxy x y
//   + wlz (x p_y - y p_x).
struct HamiltonianCoeffs {
  double kxx = 0, kyy = 0, kxy = 0;
  double vxx = 0, vyy = 0, vxy = 0;
  double wlz = 0;
};

using HamiltonianFn = std::function<HamiltonianCoeffs(double)>;

// Laboratory-frame Hamiltonian: kinetic 1/(2m), trap (m/2)(varpi^2 +
// omega_c^2/4) r^2, couplings a xy and b p_x p_y, rotation omega_c/2.
HamiltonianFn lab_frame_hamiltonian(const ParameterSchedule& sched);

// Decoupled frame: unit masses, frequencies Omega1/2(t) and residual
// coupling delta(t) for a fixed mixing angle; phi interpolated from a
// precomputed series so evaluation order is unconstrained.
HamiltonianFn decoupled_frame_hamiltonian(const ParameterSchedule& sched, double theta,
                                          double t0, double t1);

// Plain pair of unit-mass oscillators, for invariant conservation runs.
HamiltonianFn oscillator_hamiltonian(const OmegaSqFn& w1_sq, const OmegaSqFn& w2_sq,
                                     std::function<double(double)> delta = {});

QuantumState apply_hamiltonian(const HamiltonianCoeffs& h, const QuantumState& s, double hbar,
                               Exec exec = default_exec());

struct PropagationResult {
  std::vector<double> times;
  std::vector<QuantumState> states;
  double max_norm_drift = 0;
};

// Second-order Strang splitting: half potential, half rotation, full
// kinetic, half rotation, half potential per step; potential and kinetic
// coefficients frozen at the step midpoint, rotation angles integrated
// exactly over each half step.  Norm drift beyond `norm_abort` aborts.
PropagationResult propagate_strang(const HamiltonianFn& h, const QuantumState& psi0, double t0,
                                   const std::vector<double>& out_times, double dt, double hbar,
                                   Exec exec = default_exec(), double norm_abort = 1e-5);

// One implicit-midpoint step solved by fixed-point iteration; slow
// reference for cross-checking the splitting scheme.
QuantumState implicit_midpoint_step(const HamiltonianFn& h, const QuantumState& psi, double t,
                                    double dt, double hbar, Exec exec = default_exec());

}  // namespace qosc
