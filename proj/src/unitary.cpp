#include "qosc/unitary.hpp"

#include <cmath>

#include "qosc/errors.hpp"
#include "qosc/kernels.hpp"

namespace qosc {
namespace {

constexpr double kQuarterPi = 0.78539816339744831;

struct FrameFactors {
  double sm1, sm2;  // sqrt of the mode masses
  double q4;        // (m_minus / m_plus)^{1/4}
  double cx3, cy3;  // mass-rate quadratic phase coefficients
};

FrameFactors frame_factors(const DerivedParameters& dp) {
  if (!(dp.m1 > 0) || !(dp.m2 > 0) || !(dp.m_minus > 0) || !(dp.m_plus > 0))
    throw NonpositiveMass("unitary: invalid masses in derived parameters");
  FrameFactors f;
  f.sm1 = std::sqrt(dp.m1);
  f.sm2 = std::sqrt(dp.m2);
  f.q4 = std::pow(dp.m_minus / dp.m_plus, 0.25);
  f.cx3 = -0.5 * dp.mdot1;
  f.cy3 = -0.5 * dp.mdot2;
  return f;
}

}  // namespace

QuantumState apply_rotation(const QuantumState& s, double angle, Exec exec) {
  return resample_rotate(s, angle, exec);
}

QuantumState apply_scale(const QuantumState& s, double sx, double sy, Exec exec) {
  return resample_scale(s, sx, sy, exec);
}

void apply_quadratic_phase(QuantumState& s, double cx, double cy, double hbar, Exec exec) {
  mul_quadratic_phase(s, 0.5 * cx / hbar, 0.5 * cy / hbar, 0.0, 0.0, exec);
}

void check_support(const QuantumState& s, double tol, Exec exec) {
  const double frac = boundary_fraction(s, 4, exec);
  if (frac > tol)
    throw SupportClipped("unitary: " + std::to_string(frac) +
                         " of the norm within 4 cells of the grid edge");
}

QuantumState compose_pipeline(const QuantumState& chi, const DerivedParameters& dp, double hbar,
                              CoeffVariant order, Exec exec) {
  check_support(chi, 1e-9, exec);
  const FrameFactors f = frame_factors(dp);

  QuantumState s = chi;
  if (order == CoeffVariant::printed) apply_quadratic_phase(s, f.cx3, f.cy3, hbar, exec);
  s = apply_rotation(s, 0.5 * dp.theta, exec);
  s = apply_scale(s, f.sm1, f.sm2, exec);
  if (order == CoeffVariant::derived) apply_quadratic_phase(s, f.cx3, f.cy3, hbar, exec);
  s = apply_rotation(s, kQuarterPi, exec);
  s = apply_scale(s, f.q4, 1.0 / f.q4, exec);
  s = apply_rotation(s, dp.phi, exec);
  check_support(s, 1e-9, exec);
  return s;
}

QuantumState invert_pipeline(const QuantumState& psi, const DerivedParameters& dp, double hbar,
                             CoeffVariant order, Exec exec) {
  check_support(psi, 1e-9, exec);
  const FrameFactors f = frame_factors(dp);

  QuantumState s = apply_rotation(psi, -dp.phi, exec);
  s = apply_scale(s, 1.0 / f.q4, f.q4, exec);
  s = apply_rotation(s, -kQuarterPi, exec);
  if (order == CoeffVariant::derived) apply_quadratic_phase(s, -f.cx3, -f.cy3, hbar, exec);
  s = apply_scale(s, 1.0 / f.sm1, 1.0 / f.sm2, exec);
  s = apply_rotation(s, -0.5 * dp.theta, exec);
  if (order == CoeffVariant::printed) apply_quadratic_phase(s, -f.cx3, -f.cy3, hbar, exec);
  check_support(s, 1e-9, exec);
  return s;
}

}  // namespace qosc
