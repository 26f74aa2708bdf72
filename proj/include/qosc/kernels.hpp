#pragma once

#include <vector>

#include "qosc/fft.hpp"
#include "qosc/grid.hpp"
#include "qosc/parallel.hpp"

namespace qosc {

// Grid kernels.  Every kernel has a serial and an OpenMP path selected by
// `exec`; the OpenMP path splits work by grid row and keeps per-row
// arithmetic identical, so the two paths produce bitwise equal states.

// psi *= exp(i (qx x^2 + qy y^2 + qxy x y + q0))
void mul_quadratic_phase(QuantumState& s, double qx, double qy, double qxy, double q0 = 0,
                         Exec exec = default_exec());

// Spectral array in FFT index order *= exp(i (qx kx^2 + qy ky^2 + qxy kx ky))
void mul_quadratic_phase_k(std::vector<cplx>& data, const GridSpec& g, double qx, double qy,
                           double qxy, Exec exec = default_exec());

// psi'(x, y) = psi(x cos a - y sin a, x sin a + y cos a), separable 8-point
// Lagrange interpolation, zero outside the grid.
QuantumState resample_rotate(const QuantumState& s, double angle, Exec exec = default_exec());

// psi'(x, y) = sqrt(sx sy) psi(sx x, sy y), same interpolation.
QuantumState resample_scale(const QuantumState& s, double sx, double sy,
                            Exec exec = default_exec());

// Rotation by three FFT shears: interpolation-free, exact for band-limited
// data with support away from the boundary.  Requires |angle| < pi/2; the
// propagator only feeds it per-step increments.
void shear_rotate(QuantumState& s, double angle, Exec exec = default_exec());

// (p_x)^ax (p_y)^ay psi via the FFT, ax and ay in {0, 1, 2}.  Odd-order
// factors zero the Nyquist mode on their axis.
QuantumState spectral_momentum(const QuantumState& s, int ax, int ay, double hbar,
                               Exec exec = default_exec());

}  // namespace qosc
