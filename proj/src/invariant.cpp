#include "qosc/invariant.hpp"

#include <cmath>

#include "qosc/errors.hpp"
#include "qosc/kernels.hpp"

namespace qosc {
namespace {

void check_op(const InvariantOperator& op) {
  if (!(op.a1.rho > 0) || !(op.a2.rho > 0))
    throw RhoNonPositive("invariant: rho must be positive");
  if (!(op.hbar > 0)) throw std::invalid_argument("invariant: hbar must be positive");
}

}  // namespace

QuantumState apply_invariant(const InvariantOperator& op, const QuantumState& s, Exec exec) {
  check_op(op);
  const GridSpec& g = s.grid;
  validate_grid(g);

  // (rho p - rhodot q)^2 = rho^2 p^2 - rho rhodot (2 q p - i hbar) + rhodot^2 q^2
  const QuantumState px = spectral_momentum(s, 1, 0, op.hbar, exec);
  const QuantumState pxx = spectral_momentum(s, 2, 0, op.hbar, exec);
  const QuantumState py = spectral_momentum(s, 0, 1, op.hbar, exec);
  const QuantumState pyy = spectral_momentum(s, 0, 2, op.hbar, exec);

  const double r1 = op.a1.rho, d1 = op.a1.rhodot;
  const double r2 = op.a2.rho, d2 = op.a2.rhodot;
  const double cx = 0.5 * (1.0 / (r1 * r1) + d1 * d1);
  const double cy = 0.5 * (1.0 / (r2 * r2) + d2 * d2);
  const cplx ih(0, op.hbar);

  QuantumState out = QuantumState::zeros(g);
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
  for (int iy = 0; iy < g.ny; ++iy) {
    const double y = g.y(iy);
    const std::size_t off = static_cast<std::size_t>(iy) * g.nx;
    for (int ix = 0; ix < g.nx; ++ix) {
      const double x = g.x(ix);
      const cplx v = s.psi[off + ix];
      cplx acc = cx * x * x * v + cy * y * y * v;
      acc += 0.5 * r1 * r1 * pxx.psi[off + ix] + 0.5 * r2 * r2 * pyy.psi[off + ix];
      acc -= r1 * d1 * (x * px.psi[off + ix] - 0.5 * ih * v);
      acc -= r2 * d2 * (y * py.psi[off + ix] - 0.5 * ih * v);
      out.psi[off + ix] = acc;
    }
  }
  return out;
}

double eigenvalue_residual(const InvariantOperator& op, const QuantumState& s, int n1, int n2,
                           Exec exec) {
  const double lambda = (n1 + n2 + 1) * op.hbar;
  QuantumState r = apply_invariant(op, s, exec);
  for (std::size_t i = 0; i < r.psi.size(); ++i) r.psi[i] -= lambda * s.psi[i];
  const double denom = norm_sq(s, exec);
  if (!(denom > 0)) throw std::invalid_argument("invariant: null state");
  return std::sqrt(norm_sq(r, exec) / denom);
}

double invariant_expectation(const InvariantOperator& op, const QuantumState& s, Exec exec) {
  const QuantumState is = apply_invariant(op, s, exec);
  const double denom = norm_sq(s, exec);
  if (!(denom > 0)) throw std::invalid_argument("invariant: null state");
  return inner_product(s, is, exec).real() / denom;
}

double conservation_drift(const std::vector<InvariantOperator>& ops,
                          const std::vector<QuantumState>& states, Exec exec) {
  if (ops.size() != states.size() || ops.empty())
    throw TimeMeshMismatch("invariant: operator and state series differ in length");
  const double e0 = invariant_expectation(ops[0], states[0], exec);
  if (e0 == 0) throw std::invalid_argument("invariant: zero reference expectation");
  double drift = 0;
  for (std::size_t i = 1; i < ops.size(); ++i) {
    const double e = invariant_expectation(ops[i], states[i], exec);
    drift = std::max(drift, std::abs(e - e0) / std::abs(e0));
  }
  return drift;
}

}  // namespace qosc
