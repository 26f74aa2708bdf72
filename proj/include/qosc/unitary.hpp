#pragma once

#include "qosc/grid.hpp"
#include "qosc/parallel.hpp"
#include "qosc/params.hpp"
#include "qosc/wavefunction.hpp"

namespace qosc {

// Named grid actions of the frame-change operators.  All three preserve the
// norm (rotation and scale up to interpolation error, the phase exactly).
QuantumState apply_rotation(const QuantumState& s, double angle, Exec exec = default_exec());
QuantumState apply_scale(const QuantumState& s, double sx, double sy,
                         Exec exec = default_exec());
// psi *= exp[(i/2hbar)(cx x^2 + cy y^2)]
void apply_quadratic_phase(QuantumState& s, double cx, double cy, double hbar,
                           Exec exec = default_exec());

// Transformed-frame solution chi to the original frame.  Application order
// (first to last): mode rotation by theta/2, mode-mass scaling, then the
// mass-rate quadratic phase (CoeffVariant::derived) or the same three with
// the quadratic phase first (CoeffVariant::printed); then the +pi/4
// rotation, the frame-mass scaling and the gauge rotation by phi.  The
// derived placement is the one that reproduces the decoupled dynamics; the
// printed one is kept for the cross-check tests.
QuantumState compose_pipeline(const QuantumState& chi, const DerivedParameters& dp, double hbar,
                              CoeffVariant order = CoeffVariant::derived,
                              Exec exec = default_exec());

// Exact inverse of compose_pipeline (inverse steps in reverse order).
QuantumState invert_pipeline(const QuantumState& psi, const DerivedParameters& dp, double hbar,
                             CoeffVariant order = CoeffVariant::derived,
                             Exec exec = default_exec());

// Throws SupportClipped if more than `tol` of the norm sits within 4 cells
// of the grid edge (resampling would wrap that mass into garbage).
void check_support(const QuantumState& s, double tol = 1e-9, Exec exec = default_exec());

}  // namespace qosc
