#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qosc/parallel.hpp"

namespace qosc {

using cplx = std::complex<double>;

// Uniform cell-centered grid: x_i = x_min + (i + 1/2) dx.  Cell centering
// keeps the sample set symmetric under x -> -x for even nx, which the
// resampling and FFT kernels rely on.
struct GridSpec {
  int nx = 0, ny = 0;
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;

  double dx() const { return (x_max - x_min) / nx; }
  double dy() const { return (y_max - y_min) / ny; }
  double x(int i) const { return x_min + (i + 0.5) * dx(); }
  double y(int j) const { return y_min + (j + 0.5) * dy(); }
  double cell_area() const { return dx() * dy(); }
  std::int64_t size() const { return static_cast<std::int64_t>(nx) * ny; }

  // Signed FFT frequency for row/column index (i < n/2 positive branch).
  double kx(int i) const;
  double ky(int j) const;

  bool operator==(const GridSpec&) const = default;
};

void validate_grid(const GridSpec& g);

// Row-major, y-outer storage: psi[iy * nx + ix].
struct QuantumState {
  GridSpec grid;
  std::vector<cplx> psi;

  static QuantumState zeros(const GridSpec& g);
  cplx& at(int ix, int iy) { return psi[static_cast<std::size_t>(iy) * grid.nx + ix]; }
  const cplx& at(int ix, int iy) const {
    return psi[static_cast<std::size_t>(iy) * grid.nx + ix];
  }
};

// Reductions accumulate one partial per row and combine the partials in row
// order, so serial and OpenMP execution give bitwise identical results.
double norm_sq(const QuantumState& s, Exec exec = default_exec());
cplx inner_product(const QuantumState& a, const QuantumState& b, Exec exec = default_exec());
double fidelity(const QuantumState& a, const QuantumState& b, Exec exec = default_exec());
void normalize(QuantumState& s, Exec exec = default_exec());

// Fraction of the norm within `cells` of the grid edge; used to detect
// wavefunctions about to leak or be clipped by a transform.
double boundary_fraction(const QuantumState& s, int cells, Exec exec = default_exec());

// Binary state dump, magic "QSTATE01": int32 nx, ny; float64 x_min, x_max,
// y_min, y_max, hbar, time; then nx*ny complex128 samples, y-outer row-major.
// Raw little-endian host layout (x86-64).
struct StateDump {
  QuantumState state;
  double hbar = 1;
  double time = 0;
};

void write_state(const std::string& path, const QuantumState& s, double hbar, double time);
StateDump read_state(const std::string& path);

}  // namespace qosc
