#include "qosc/propagate.hpp"

#include <cmath>
#include <sstream>

#include "qosc/errors.hpp"
#include "qosc/fft.hpp"
#include "qosc/kernels.hpp"

namespace qosc {
namespace {

constexpr double kStabilityLimit = 0.5;

// Four-point Gauss-Legendre on [a, b], nodes evaluated in ascending time so
// the summation order is fixed.
double integrate_gl4(const std::function<double(double)>& f, double a, double b) {
  static constexpr double kNode[2] = {0.33998104358485626, 0.86113631159405258};
  static constexpr double kWeight[2] = {0.65214515486254614, 0.34785484513745386};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = kWeight[1] * f(mid - half * kNode[1]);
  acc += kWeight[0] * f(mid - half * kNode[0]);
  acc += kWeight[0] * f(mid + half * kNode[0]);
  acc += kWeight[1] * f(mid + half * kNode[1]);
  return acc * half;
}

void half_potential(QuantumState& s, const HamiltonianCoeffs& h, double dt, double hbar,
                    Exec exec) {
  const double q = -0.5 * dt / hbar;
  mul_quadratic_phase(s, q * h.vxx, q * h.vyy, q * h.vxy, 0.0, exec);
}

void full_kinetic(QuantumState& s, const HamiltonianCoeffs& h, double dt, double hbar,
                  Exec exec) {
  Fft2D& fft = fft_for(s.grid.nx, s.grid.ny);
  fft.forward(s.psi);
  const double q = -dt * hbar;
  mul_quadratic_phase_k(s.psi, s.grid, q * h.kxx, q * h.kyy, q * h.kxy, exec);
  fft.backward_scaled(s.psi);
}

// exp(-(i/hbar) L_z int wlz) over [a, b] equals a coordinate rotation by
// minus the integral; zero integrals (rotation-free frames) are skipped.
void half_rotation(QuantumState& s, const HamiltonianFn& hfn, double a, double b, Exec exec) {
  const double angle = -integrate_gl4([&](double t) { return hfn(t).wlz; }, a, b);
  if (angle != 0.0) shear_rotate(s, angle, exec);
}

}  // namespace

HamiltonianFn lab_frame_hamiltonian(const ParameterSchedule& sched) {
  return [sched](double t) {
    const double m = sched.mass.value(t);
    if (m <= 0) throw NonpositiveMass("mass schedule nonpositive at t=" + std::to_string(t));
    const double varpi = sched.trap_frequency.value(t);
    const double omega_c = sched.charge * sched.field.value(t) / m;
    const double omega_sq = varpi * varpi + 0.25 * omega_c * omega_c;
    HamiltonianCoeffs h;
    h.kxx = h.kyy = 0.5 / m;
    h.kxy = sched.dynamic_coupling.value(t);
    h.vxx = h.vyy = 0.5 * m * omega_sq;
    h.vxy = sched.static_coupling.value(t);
    h.wlz = 0.5 * omega_c;
    return h;
  };
}

HamiltonianFn decoupled_frame_hamiltonian(const ParameterSchedule& sched, double theta, double t0,
                                          double t1) {
  HermiteSeries phi = make_phi_series(sched, t0, t1, 1024);
  return [sched, theta, phi](double t) {
    const DerivedParameters dp = derive_all(sched, t, theta, phi.eval(t));
    HamiltonianCoeffs h;
    h.kxx = h.kyy = 0.5;
    h.vxx = 0.5 * dp.Omega1 * dp.Omega1;
    h.vyy = 0.5 * dp.Omega2 * dp.Omega2;
    h.vxy = dp.delta;
    return h;
  };
}

HamiltonianFn oscillator_hamiltonian(const OmegaSqFn& w1_sq, const OmegaSqFn& w2_sq,
                                     std::function<double(double)> delta) {
  return [w1_sq, w2_sq, delta](double t) {
    HamiltonianCoeffs h;
    h.kxx = h.kyy = 0.5;
    h.vxx = 0.5 * w1_sq(t);
    h.vyy = 0.5 * w2_sq(t);
    h.vxy = delta ? delta(t) : 0.0;
    return h;
  };
}

QuantumState apply_hamiltonian(const HamiltonianCoeffs& h, const QuantumState& s, double hbar,
                               Exec exec) {
  const GridSpec& g = s.grid;
  const QuantumState pxx = spectral_momentum(s, 2, 0, hbar, exec);
  const QuantumState pyy = spectral_momentum(s, 0, 2, hbar, exec);
  const QuantumState pxy = spectral_momentum(s, 1, 1, hbar, exec);
  const QuantumState px = spectral_momentum(s, 1, 0, hbar, exec);
  const QuantumState py = spectral_momentum(s, 0, 1, hbar, exec);

  QuantumState out = QuantumState::zeros(g);
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
  for (int iy = 0; iy < g.ny; ++iy) {
    const double y = g.y(iy);
    const std::size_t row = static_cast<std::size_t>(iy) * g.nx;
    for (int ix = 0; ix < g.nx; ++ix) {
      const double x = g.x(ix);
      const std::size_t id = row + ix;
      cplx acc = h.kxx * pxx.psi[id] + h.kyy * pyy.psi[id] + h.kxy * pxy.psi[id];
      acc += (h.vxx * x * x + h.vyy * y * y + h.vxy * x * y) * s.psi[id];
      acc += h.wlz * (x * py.psi[id] - y * px.psi[id]);
      out.psi[id] = acc;
    }
  }
  return out;
}

PropagationResult propagate_strang(const HamiltonianFn& hfn, const QuantumState& psi0, double t0,
                                   const std::vector<double>& out_times, double dt, double hbar,
                                   Exec exec, double norm_abort) {
  if (!(dt > 0)) throw ConfigError("propagate_strang: dt must be positive");
  if (!(hbar > 0)) throw ConfigError("propagate_strang: hbar must be positive");

  std::vector<long> marks(out_times.size());
  for (std::size_t i = 0; i < out_times.size(); ++i) {
    const double k = std::round((out_times[i] - t0) / dt);
    if (k < 0 || std::abs(out_times[i] - (t0 + k * dt)) > 1e-12) {
      std::ostringstream msg;
      msg << "output time " << out_times[i] << " is not a whole number of steps of " << dt
          << " from " << t0;
      throw TimeMeshMismatch(msg.str());
    }
    marks[i] = static_cast<long>(k);
    if (i > 0 && marks[i] < marks[i - 1])
      throw TimeMeshMismatch("output times must be nondecreasing");
  }

  const double n0 = norm_sq(psi0, exec);
  if (!(n0 > 0)) throw ConfigError("propagate_strang: initial state has zero norm");

  // One-step unitarity bound: the split factors are exact exponentials, but
  // the scheme only tracks H(t) to second order, so a step resolving less
  // than ~2 radians of phase is required for the error terms to be small.
  const QuantumState hpsi = apply_hamiltonian(hfn(t0), psi0, hbar, exec);
  const double phase_per_step = dt * std::sqrt(norm_sq(hpsi, exec) / n0) / hbar;
  if (phase_per_step >= kStabilityLimit) {
    std::ostringstream msg;
    msg << "dt * |H psi| / (hbar |psi|) = " << phase_per_step << " at t0 exceeds "
        << kStabilityLimit << "; reduce dt";
    throw StabilityViolation(msg.str());
  }

  PropagationResult res;
  QuantumState cur = psi0;
  std::size_t oi = 0;
  auto emit = [&](long k) {
    while (oi < marks.size() && marks[oi] == k) {
      res.times.push_back(t0 + k * dt);
      res.states.push_back(cur);
      ++oi;
    }
  };
  emit(0);

  const long kmax = marks.empty() ? 0 : marks.back();
  for (long k = 0; k < kmax; ++k) {
    const double t = t0 + k * dt;
    const double tm = t + 0.5 * dt;
    const HamiltonianCoeffs h = hfn(tm);
    half_potential(cur, h, dt, hbar, exec);
    half_rotation(cur, hfn, t, tm, exec);
    full_kinetic(cur, h, dt, hbar, exec);
    half_rotation(cur, hfn, tm, t + dt, exec);
    half_potential(cur, h, dt, hbar, exec);

    const double drift = std::abs(std::sqrt(norm_sq(cur, exec) / n0) - 1.0);
    res.max_norm_drift = std::max(res.max_norm_drift, drift);
    if (drift > norm_abort) {
      std::ostringstream msg;
      msg << "norm drifted by " << drift << " after step " << (k + 1)
          << "; state no longer trustworthy";
      throw NormDrift(msg.str());
    }
    emit(k + 1);
  }
  return res;
}

QuantumState implicit_midpoint_step(const HamiltonianFn& hfn, const QuantumState& psi, double t,
                                    double dt, double hbar, Exec exec) {
  const HamiltonianCoeffs h = hfn(t + 0.5 * dt);
  const cplx step(0.0, -dt / hbar);
  const double ref = std::sqrt(norm_sq(psi, exec));
  QuantumState next = psi;
  QuantumState mid = psi;
  double prev_diff = 0;
  for (int it = 0; it < 500; ++it) {
    for (std::size_t i = 0; i < mid.psi.size(); ++i)
      mid.psi[i] = 0.5 * (psi.psi[i] + next.psi[i]);
    const QuantumState hmid = apply_hamiltonian(h, mid, hbar, exec);
    double diff_sq = 0;
    for (std::size_t i = 0; i < next.psi.size(); ++i) {
      const cplx cand = psi.psi[i] + step * hmid.psi[i];
      const cplx d = cand - next.psi[i];
      diff_sq += std::norm(d);
      next.psi[i] = cand;
    }
    const double diff = std::sqrt(diff_sq * psi.grid.cell_area());
    if (diff <= 1e-13 * ref) return next;
    // roundoff plateau: successive updates stop shrinking
    if (it > 10 && diff >= prev_diff && diff <= 1e-10 * ref) return next;
    prev_diff = diff;
  }
  throw StepSizeUnderflow("implicit midpoint iteration did not converge; reduce dt");
}

}  // namespace qosc
