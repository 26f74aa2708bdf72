#pragma once

#include <vector>

#include "qosc/grid.hpp"
#include "qosc/parallel.hpp"
#include "qosc/wavefunction.hpp"

namespace qosc {

// Quadratic invariant of the decoupled frame at one instant:
// I = 1/2[(x/rho1)^2 + (rho1 p_x - rhodot1 x)^2]
//   + 1/2[(y/rho2)^2 + (rho2 p_y - rhodot2 y)^2]
// with unit masses, so the velocity operators are plain momenta.
struct InvariantOperator {
  ModeInstant a1, a2;
  double hbar = 1;
};

// I psi, momentum action spectral; the result is unnormalized.
QuantumState apply_invariant(const InvariantOperator& op, const QuantumState& s,
                             Exec exec = default_exec());

// ||I psi - lambda psi|| / ||psi|| with lambda = (n1 + n2 + 1) hbar.
double eigenvalue_residual(const InvariantOperator& op, const QuantumState& s, int n1, int n2,
                           Exec exec = default_exec());

// <psi|I|psi> / <psi|psi> (real up to grid quadrature error).
double invariant_expectation(const InvariantOperator& op, const QuantumState& s,
                             Exec exec = default_exec());

// max_t |e(t) - e(t0)| / |e(t0)| over matched operator/state series.
double conservation_drift(const std::vector<InvariantOperator>& ops,
                          const std::vector<QuantumState>& states, Exec exec = default_exec());

}  // namespace qosc
