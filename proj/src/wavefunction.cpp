#include "qosc/wavefunction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qosc/errors.hpp"

namespace qosc {
namespace {

double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

cplx mode_exponent(ModeInstant a) {
  // (rhodot/rho + i/rho^2), the log-derivative of the mode Gaussian.
  if (!(a.rho > 0)) throw RhoNonPositive("wavefunction: rho must be positive");
  return {a.rhodot / a.rho, 1.0 / (a.rho * a.rho)};
}

struct FVec {
  cplx f1, f2, f3;
};

// Quadratic-form coefficients after mixing gamma/beta through the mode
// rotation (half-angle theta/2), the mass scaling and the +pi/4 rotation:
// f1 x^2 + f2 y^2 + f3 xy in exp[(i/2hbar)(...)].
FVec compose_f(cplx gamma, cplx beta, double m1, double m2, double theta) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const cplx sym = 0.5 * (gamma * (m1 * c * c + m2 * s * s) + beta * (m1 * s * s + m2 * c * c));
  const cplx cross = std::sqrt(m1 * m2) * (beta - gamma) * (s * c);
  FVec f;
  f.f1 = sym + cross;
  f.f2 = sym - cross;
  f.f3 = (beta * m2 - gamma * m1) * (c * c) + (gamma * m2 - beta * m1) * (s * s);
  return f;
}

}  // namespace

double hermite(int n, double x) {
  if (n < 0 || n > 64) throw std::invalid_argument("hermite: order must be in [0, 64]");
  if (n == 0) return 1.0;
  double hm = 1.0, h = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double hp = 2.0 * x * h - 2.0 * k * hm;
    hm = h;
    h = hp;
  }
  return h;
}

ClosedFormCoefficients closed_form_coefficients(const DerivedParameters& dp, ModeInstant a1,
                                                ModeInstant a2, CoeffVariant variant,
                                                HermiteSigns signs) {
  ClosedFormCoefficients out;
  const cplx g0 = mode_exponent(a1);
  const cplx b0 = mode_exponent(a2);

  if (variant == CoeffVariant::printed) {
    out.gamma = g0 - 0.5 * dp.mdot1;
    out.beta = b0 - 0.5 * dp.mdot2;
    const FVec f = compose_f(out.gamma, out.beta, dp.m1, dp.m2, dp.theta);
    out.f1 = f.f1;
    out.f2 = f.f2;
    out.f3 = f.f3;
  } else {
    out.gamma = g0;
    out.beta = b0;
    FVec f = compose_f(g0, b0, dp.m1, dp.m2, dp.theta);
    // Mass-rate phase applied after mixing: subtract mdot_i/2 from the mode
    // quadratic coefficients, which the +pi/4 rotation then redistributes.
    const double sym = 0.25 * (dp.mdot1 + dp.mdot2);
    out.f1 = f.f1 - sym;
    out.f2 = f.f2 - sym;
    out.f3 = f.f3 - 0.5 * (dp.mdot2 - dp.mdot1);
  }

  const double q = dp.m_minus / dp.m_plus;
  if (!(q > 0)) throw NonpositiveMass("wavefunction: frame mass ratio nonpositive");
  const double q4 = std::pow(q, 0.25);
  const double c = std::cos(0.5 * dp.theta), s = std::sin(0.5 * dp.theta);
  const double r1 = std::sqrt(0.5 * dp.m1), r2 = std::sqrt(0.5 * dp.m2);
  out.eta1 = q4 * (r1 * c - r2 * s);
  out.eta2 = -(r1 * c + r2 * s) / q4;
  out.mu1 = q4 * (r1 * s + r2 * c);
  out.mu2 = (r2 * c - r1 * s) / q4;
  if (signs == HermiteSigns::flipped) {
    out.eta2 = -out.eta2;
    out.mu2 = -out.mu2;
  }
  return out;
}

ClosedFormCoefficients closed_form_coefficients(const DerivedParameters& dp,
                                                const ErmakovSolution& rho1,
                                                const ErmakovSolution& rho2, double t,
                                                CoeffVariant variant, HermiteSigns signs) {
  return closed_form_coefficients(dp, {rho1.rho_at(t), rho1.rhodot_at(t)},
                                  {rho2.rho_at(t), rho2.rhodot_at(t)}, variant, signs);
}

QuantumState eigenfunction_xi(const GridSpec& g, int n1, int n2, ModeInstant a1, ModeInstant a2,
                              double hbar, Exec exec) {
  validate_grid(g);
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("wavefunction: mode index negative");
  if (!(hbar > 0)) throw std::invalid_argument("wavefunction: hbar must be positive");
  const cplx g0 = mode_exponent(a1);
  const cplx b0 = mode_exponent(a2);
  const double pref =
      std::sqrt(1.0 / (std::numbers::pi * hbar * factorial(n1) * factorial(n2) *
                       std::pow(2.0, n1 + n2) * a1.rho * a2.rho));
  const double sx = 1.0 / (std::sqrt(hbar) * a1.rho);
  const double sy = 1.0 / (std::sqrt(hbar) * a2.rho);
  const cplx half_i_g = cplx(0, 0.5 / hbar) * g0;
  const cplx half_i_b = cplx(0, 0.5 / hbar) * b0;

  QuantumState out = QuantumState::zeros(g);
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
  for (int iy = 0; iy < g.ny; ++iy) {
    const double y = g.y(iy);
    const double hy = hermite(n2, y * sy);
    const cplx ey = std::exp(half_i_b * (y * y));
    cplx* row = out.psi.data() + static_cast<std::size_t>(iy) * g.nx;
    for (int ix = 0; ix < g.nx; ++ix) {
      const double x = g.x(ix);
      row[ix] = pref * hermite(n1, x * sx) * hy * std::exp(half_i_g * (x * x)) * ey;
    }
  }
  return out;
}

QuantumState transformed_solution_chi(const GridSpec& g, int n1, int n2,
                                      const ErmakovSolution& rho1, const ErmakovSolution& rho2,
                                      double t, double hbar, Exec exec) {
  QuantumState xi = eigenfunction_xi(g, n1, n2, {rho1.rho_at(t), rho1.rhodot_at(t)},
                                     {rho2.rho_at(t), rho2.rhodot_at(t)}, hbar, exec);
  const double alpha = phase_alpha(rho1, rho2, n1, n2, t);
  const cplx phase(std::cos(alpha), std::sin(alpha));
  for (auto& z : xi.psi) z *= phase;
  return xi;
}

FullWavefunction full_wavefunction(const GridSpec& g, int n1, int n2,
                                   const DerivedParameters& dp, const ErmakovSolution& rho1,
                                   const ErmakovSolution& rho2, double t, double hbar,
                                   CoeffVariant variant, HermiteSigns signs, Exec exec) {
  validate_grid(g);
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("wavefunction: mode index negative");
  const double p1 = rho1.rho_at(t), p1d = rho1.rhodot_at(t);
  const double p2 = rho2.rho_at(t), p2d = rho2.rhodot_at(t);
  const ClosedFormCoefficients cf =
      closed_form_coefficients(dp, {p1, p1d}, {p2, p2d}, variant, signs);

  // Frame-scaling factors sqrt(m_minus/m_plus) and its inverse on the
  // quadratic form, then the rotation by the gauge angle phi.
  const double rq = std::sqrt(dp.m_minus / dp.m_plus);
  const cplx G1 = rq * cf.f1;
  const cplx G2 = cf.f2 / rq;
  const cplx G3 = cf.f3;
  const double cph = std::cos(dp.phi), sph = std::sin(dp.phi);
  const double c2 = cph * cph, s2 = sph * sph, s2p = 2.0 * sph * cph;
  const cplx qxx = G1 * c2 + G2 * s2 + 0.5 * G3 * s2p;
  const cplx qyy = G1 * s2 + G2 * c2 - 0.5 * G3 * s2p;
  const cplx qxy = (G2 - G1) * s2p + G3 * (c2 - s2);

  // Hermite argument rows rotated by phi.
  const double inv1 = 1.0 / (std::sqrt(hbar) * p1);
  const double inv2 = 1.0 / (std::sqrt(hbar) * p2);
  const double A1 = (cf.eta1 * cph + cf.eta2 * sph) * inv1;
  const double B1 = (-cf.eta1 * sph + cf.eta2 * cph) * inv1;
  const double A2 = (cf.mu1 * cph + cf.mu2 * sph) * inv2;
  const double B2 = (-cf.mu1 * sph + cf.mu2 * cph) * inv2;

  const double pref =
      std::sqrt(std::sqrt(dp.m1 * dp.m2) / (std::numbers::pi * hbar * factorial(n1) *
                                            factorial(n2) * std::pow(2.0, n1 + n2) * p1 * p2));
  const double alpha = phase_alpha(rho1, rho2, n1, n2, t);
  const cplx phase_g = cplx(std::cos(alpha), std::sin(alpha)) * pref;
  const cplx iq = cplx(0, 0.5 / hbar);

  QuantumState out = QuantumState::zeros(g);
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
  for (int iy = 0; iy < g.ny; ++iy) {
    const double y = g.y(iy);
    cplx* row = out.psi.data() + static_cast<std::size_t>(iy) * g.nx;
    for (int ix = 0; ix < g.nx; ++ix) {
      const double x = g.x(ix);
      const cplx quad = iq * (qxx * (x * x) + qyy * (y * y) + qxy * (x * y));
      row[ix] = phase_g * hermite(n1, A1 * x + B1 * y) * hermite(n2, A2 * x + B2 * y) *
                std::exp(quad);
    }
  }

  FullWavefunction fw{std::move(out), 1.0};
  const double n2norm = norm_sq(fw.state, exec);
  if (!(n2norm > 0)) throw std::runtime_error("wavefunction: closed form vanished on the grid");
  fw.renorm = 1.0 / std::sqrt(n2norm);
  for (auto& z : fw.state.psi) z *= fw.renorm;
  return fw;
}

}  // namespace qosc
