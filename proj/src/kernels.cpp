#include "qosc/kernels.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qosc {
namespace {

// Denominators of the 8-point Lagrange basis on consecutive integer nodes:
// prod_{j != k} (k - j) for k = 0..7.
constexpr std::array<double, 8> kLagDenom = {-5040, 720, -240, 144, -144, 240, -720, 5040};

// Weights for interpolating at fractional index u relative to node base,
// u in node units so that the sample points sit at 0..7.
void lagrange_weights(double u, std::array<double, 8>& w) {
  for (int k = 0; k < 8; ++k) {
    if (u == static_cast<double>(k)) {
      w.fill(0.0);
      w[k] = 1.0;
      return;
    }
  }
  double num = 1.0;
  for (int j = 0; j < 8; ++j) num *= u - j;
  for (int k = 0; k < 8; ++k) w[k] = num / ((u - k) * kLagDenom[k]);
}

// Generic resampler: psi'(x, y) = amp * psi(map(x, y)), zero outside.
template <typename MapFn>
QuantumState resample_lagrange(const QuantumState& s, const MapFn& map, double amp, Exec exec) {
  const GridSpec& g = s.grid;
  QuantumState out = QuantumState::zeros(g);
  const double inv_dx = 1.0 / g.dx(), inv_dy = 1.0 / g.dy();

#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
  for (int iy = 0; iy < g.ny; ++iy) {
    std::array<double, 8> wx, wy;
    const double y = g.y(iy);
    cplx* dst = out.psi.data() + static_cast<std::size_t>(iy) * g.nx;
    for (int ix = 0; ix < g.nx; ++ix) {
      double xs, ys;
      map(g.x(ix), y, xs, ys);
      const double fx = (xs - g.x_min) * inv_dx - 0.5;
      const double fy = (ys - g.y_min) * inv_dy - 0.5;
      const int bx = static_cast<int>(std::floor(fx)) - 3;
      const int by = static_cast<int>(std::floor(fy)) - 3;
      if (bx + 7 < 0 || bx >= g.nx || by + 7 < 0 || by >= g.ny) continue;
      lagrange_weights(fx - bx, wx);
      lagrange_weights(fy - by, wy);
      cplx acc(0, 0);
      for (int ky = 0; ky < 8; ++ky) {
        const int jy = by + ky;
        if (jy < 0 || jy >= g.ny) continue;
        const cplx* src = s.psi.data() + static_cast<std::size_t>(jy) * g.nx;
        cplx rowacc(0, 0);
        for (int kx = 0; kx < 8; ++kx) {
          const int jx = bx + kx;
          if (jx < 0 || jx >= g.nx) continue;
          rowacc += wx[kx] * src[jx];
        }
        acc += wy[ky] * rowacc;
      }
      dst[ix] = amp * acc;
    }
  }
  return out;
}

}  // namespace

void mul_quadratic_phase(QuantumState& s, double qx, double qy, double qxy, double q0,
                         Exec exec) {
  const GridSpec& g = s.grid;
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
  for (int iy = 0; iy < g.ny; ++iy) {
    const double y = g.y(iy);
    const double base = qy * y * y + q0;
    cplx* row = s.psi.data() + static_cast<std::size_t>(iy) * g.nx;
    for (int ix = 0; ix < g.nx; ++ix) {
      const double x = g.x(ix);
      const double phase = qx * x * x + qxy * x * y + base;
      row[ix] *= cplx(std::cos(phase), std::sin(phase));
    }
  }
}

void mul_quadratic_phase_k(std::vector<cplx>& data, const GridSpec& g, double qx, double qy,
                           double qxy, Exec exec) {
  if (data.size() != static_cast<std::size_t>(g.size()))
    throw std::invalid_argument("kernels: spectral buffer size mismatch");
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
  for (int iy = 0; iy < g.ny; ++iy) {
    const double ky = g.ky(iy);
    const double base = qy * ky * ky;
    cplx* row = data.data() + static_cast<std::size_t>(iy) * g.nx;
    for (int ix = 0; ix < g.nx; ++ix) {
      const double kx = g.kx(ix);
      const double phase = qx * kx * kx + qxy * kx * ky + base;
      row[ix] *= cplx(std::cos(phase), std::sin(phase));
    }
  }
}

QuantumState resample_rotate(const QuantumState& s, double angle, Exec exec) {
  const double c = std::cos(angle), sn = std::sin(angle);
  auto map = [c, sn](double x, double y, double& xs, double& ys) {
    xs = x * c - y * sn;
    ys = x * sn + y * c;
  };
  return resample_lagrange(s, map, 1.0, exec);
}

QuantumState resample_scale(const QuantumState& s, double sx, double sy, Exec exec) {
  if (!(sx > 0) || !(sy > 0)) throw std::invalid_argument("kernels: scale factors must be > 0");
  auto map = [sx, sy](double x, double y, double& xs, double& ys) {
    xs = sx * x;
    ys = sy * y;
  };
  return resample_lagrange(s, map, std::sqrt(sx * sy), exec);
}

void shear_rotate(QuantumState& s, double angle, Exec exec) {
  if (angle == 0) return;
  if (!(std::abs(angle) < 1.5707963267948966))
    throw std::invalid_argument("kernels: shear rotation needs |angle| < pi/2");
  const GridSpec& g = s.grid;
  Fft2D& fft = fft_for(g.nx, g.ny);
  const double alpha = -std::tan(0.5 * angle);
  const double beta = std::sin(angle);

  // psi(x + alpha*y, y): phase e^{i kx alpha y} in the (kx, y) representation.
  auto shear_x = [&](double coef) {
    fft.forward_x(s.psi);
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
    for (int iy = 0; iy < g.ny; ++iy) {
      const double shift = coef * g.y(iy);
      cplx* row = s.psi.data() + static_cast<std::size_t>(iy) * g.nx;
      for (int ix = 0; ix < g.nx; ++ix) {
        const double ph = g.kx(ix) * shift;
        row[ix] *= cplx(std::cos(ph), std::sin(ph));
      }
    }
    fft.backward_x_scaled(s.psi);
  };
  auto shear_y = [&](double coef) {
    fft.forward_y(s.psi);
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
    for (int iy = 0; iy < g.ny; ++iy) {
      const double ky = g.ky(iy);
      cplx* row = s.psi.data() + static_cast<std::size_t>(iy) * g.nx;
      for (int ix = 0; ix < g.nx; ++ix) {
        const double ph = ky * coef * g.x(ix);
        row[ix] *= cplx(std::cos(ph), std::sin(ph));
      }
    }
    fft.backward_y_scaled(s.psi);
  };

  shear_x(alpha);
  shear_y(beta);
  shear_x(alpha);
}

QuantumState spectral_momentum(const QuantumState& s, int ax, int ay, double hbar, Exec exec) {
  if (ax < 0 || ax > 2 || ay < 0 || ay > 2)
    throw std::invalid_argument("kernels: momentum power must be 0, 1 or 2");
  const GridSpec& g = s.grid;
  Fft2D& fft = fft_for(g.nx, g.ny);
  QuantumState out = s;
  fft.forward(out.psi);
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
  for (int iy = 0; iy < g.ny; ++iy) {
    double fy = 1.0;
    if (ay > 0) {
      const double py = (ay % 2 == 1 && iy == g.ny / 2) ? 0.0 : hbar * g.ky(iy);
      fy = ay == 1 ? py : py * py;
    }
    cplx* row = out.psi.data() + static_cast<std::size_t>(iy) * g.nx;
    for (int ix = 0; ix < g.nx; ++ix) {
      double fx = 1.0;
      if (ax > 0) {
        const double px = (ax % 2 == 1 && ix == g.nx / 2) ? 0.0 : hbar * g.kx(ix);
        fx = ax == 1 ? px : px * px;
      }
      row[ix] *= fx * fy;
    }
  }
  fft.backward_scaled(out.psi);
  return out;
}

}  // namespace qosc
