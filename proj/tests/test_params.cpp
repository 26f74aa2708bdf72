#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qosc/errors.hpp"
#include "qosc/params.hpp"
#include "qosc/schedule.hpp"

using namespace qosc;

namespace {

ParameterSchedule generic_schedule() {
  ParameterSchedule s;
  s.mass = Schedule::sinusoidal(1.0, 0.3, 0.4, 0.0);
  s.trap_frequency = Schedule::constant(1.1);
  s.field = Schedule::sinusoidal(0.5, 0.05, 1.0, 0.0);
  s.static_coupling = Schedule::constant(0.1);
  s.dynamic_coupling = Schedule::constant(0.05);
  return s;
}

// Independent flat transcription of the parameter chain, no shared code with
// the production path beyond phi.  Mode-mass derivatives come from finite
// differences of the chain itself.
struct Plain {
  double m1, m2, mdot1, mdot2, omega1_sq, omega2_sq, c, omega_tilde1_sq, omega_tilde2_sq;
  double Omega1_sq, Omega2_sq, delta;
};

void plain_masses(const ParameterSchedule& s, double t, double phi, double* m1, double* m2,
                  double* w1sq, double* w2sq, double* cc) {
  const double m = s.mass.value(t);
  const double varpi = s.trap_frequency.value(t);
  const double a = s.static_coupling.value(t);
  const double b = s.dynamic_coupling.value(t);
  const double wc = s.charge * s.field.value(t) / m;
  const double w2 = varpi * varpi + 0.25 * wc * wc;
  const double S = std::sin(2 * phi), C = std::cos(2 * phi);
  const double m_minus = 1.0 / (1.0 / m - b * S);
  const double m_plus = 1.0 / (1.0 / m + b * S);
  const double wm2 = (m * w2 - a * S) / m_minus;
  const double wp2 = (m * w2 + a * S) / m_plus;
  const double a1 = a * C, b1 = b * C;
  const double rmm = std::sqrt(m_plus * m_minus);
  *m1 = 1.0 / (1.0 / rmm - b1);
  *m2 = 1.0 / (1.0 / rmm + b1);
  const double G = 0.5 * rmm * (wm2 + wp2);
  *w1sq = (G - a1) / *m1;
  *w2sq = (G + a1) / *m2;
  *cc = 0.5 * rmm * (wm2 - wp2);
}

Plain plain_chain(const ParameterSchedule& s, double t, double theta) {
  Plain p{};
  double w1sq, w2sq;
  plain_masses(s, t, eval_phi(s, t), &p.m1, &p.m2, &p.omega1_sq, &p.omega2_sq, &p.c);
  w1sq = p.omega1_sq;
  w2sq = p.omega2_sq;

  // five-point stencils for the mode-mass time derivatives
  const double h = 1e-3;
  double m1s[5], m2s[5], dum1, dum2, dum3;
  for (int k = -2; k <= 2; ++k)
    plain_masses(s, t + k * h, eval_phi(s, t + k * h), &m1s[k + 2], &m2s[k + 2], &dum1, &dum2,
                 &dum3);
  p.mdot1 = (-m1s[4] + 8 * m1s[3] - 8 * m1s[1] + m1s[0]) / (12 * h);
  p.mdot2 = (-m2s[4] + 8 * m2s[3] - 8 * m2s[1] + m2s[0]) / (12 * h);
  const double mddot1 = (-m1s[4] + 16 * m1s[3] - 30 * m1s[2] + 16 * m1s[1] - m1s[0]) / (12 * h * h);
  const double mddot2 = (-m2s[4] + 16 * m2s[3] - 30 * m2s[2] + 16 * m2s[1] - m2s[0]) / (12 * h * h);

  p.omega_tilde1_sq = w1sq + 0.25 * (p.mdot1 * p.mdot1 / (p.m1 * p.m1) - 2 * mddot1 / p.m1);
  p.omega_tilde2_sq = w2sq + 0.25 * (p.mdot2 * p.mdot2 / (p.m2 * p.m2) - 2 * mddot2 / p.m2);

  const double ch = std::cos(0.5 * theta), sh = std::sin(0.5 * theta);
  const double cross = p.c / std::sqrt(p.m1 * p.m2);
  p.Omega1_sq = p.omega_tilde1_sq * ch * ch + p.omega_tilde2_sq * sh * sh - cross * std::sin(theta);
  p.Omega2_sq = p.omega_tilde1_sq * sh * sh + p.omega_tilde2_sq * ch * ch + cross * std::sin(theta);
  p.delta = 0.5 * (p.omega_tilde1_sq - p.omega_tilde2_sq) * std::sin(theta) +
            cross * std::cos(theta);
  return p;
}

}  // namespace

TEST_CASE("phi closed forms") {
  ParameterSchedule s = generic_schedule();
  s.mass = Schedule::constant(1.0);

  SUBCASE("constant field: phi = -e B t / (2 m)") {
    s.field = Schedule::constant(0.5);
    for (double t : {0.0, 0.5, 2.0, 7.5})
      CHECK(eval_phi(s, t) == doctest::Approx(-0.25 * t).epsilon(1e-13));
  }
  SUBCASE("sinusoidal field integrates exactly") {
    // B = 0.5 (1 + 0.1 sin t), m = 1: phi = -(t + 0.1 (1 - cos t)) / 4
    for (double t : {0.3, 1.0, 4.7}) {
      const double expect = -0.25 * (t + 0.1 * (1.0 - std::cos(t)));
      CHECK(eval_phi(s, t) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("phi accumulator matches one-shot integration and enforces ordering") {
  const ParameterSchedule s = generic_schedule();
  PhiAccumulator acc(s);
  for (double t : {0.0, 0.4, 1.1, 2.0, 2.0, 3.6})
    CHECK(acc.at(t) == doctest::Approx(eval_phi(s, t)).epsilon(1e-12));
  CHECK_THROWS_AS(acc.at(1.0), TimeMeshMismatch);
}

TEST_CASE("phi series interpolates the quadrature to near machine accuracy") {
  const ParameterSchedule s = generic_schedule();
  const HermiteSeries phi = make_phi_series(s, 0.0, 5.0, 257);
  for (double t : {0.01, 0.77, 2.34, 4.99}) {
    CHECK(std::abs(phi.eval(t) - eval_phi(s, t)) < 1e-12);
    const double m = s.mass.value(t);
    const double wc = s.charge * s.field.value(t) / m;
    CHECK(phi.eval_deriv(t) == doctest::Approx(-0.5 * wc).epsilon(1e-10));
  }
}

TEST_CASE("derived parameters match an independent flat transcription") {
  const ParameterSchedule s = generic_schedule();
  const double theta = 0.3;  // any fixed angle exercises the full record
  for (double t : {0.2, 1.0, 2.7, 4.4}) {
    const DerivedParameters d = derive_all(s, t, theta);
    const Plain p = plain_chain(s, t, theta);
    CHECK(d.m1 == doctest::Approx(p.m1).epsilon(1e-12));
    CHECK(d.m2 == doctest::Approx(p.m2).epsilon(1e-12));
    CHECK(d.mdot1 == doctest::Approx(p.mdot1).epsilon(1e-8));
    CHECK(d.mdot2 == doctest::Approx(p.mdot2).epsilon(1e-8));
    CHECK(d.omega1 * d.omega1 == doctest::Approx(p.omega1_sq).epsilon(1e-12));
    CHECK(d.omega2 * d.omega2 == doctest::Approx(p.omega2_sq).epsilon(1e-12));
    CHECK(d.c == doctest::Approx(p.c).epsilon(1e-11));
    CHECK(d.omega_tilde1_sq == doctest::Approx(p.omega_tilde1_sq).epsilon(1e-6));
    CHECK(d.omega_tilde2_sq == doctest::Approx(p.omega_tilde2_sq).epsilon(1e-6));
    CHECK(d.Omega1 * d.Omega1 == doctest::Approx(p.Omega1_sq).epsilon(1e-6));
    CHECK(d.Omega2 * d.Omega2 == doctest::Approx(p.Omega2_sq).epsilon(1e-6));
    CHECK(d.delta == doctest::Approx(p.delta).epsilon(1e-6));
  }
}

TEST_CASE("mode-mass derivatives agree with finite differences of derive_all") {
  const ParameterSchedule s = generic_schedule();
  const double t = 1.3, h = 1e-4;
  const DerivedParameters d = derive_all(s, t, 0.0);
  double m1v[5], m2v[5];
  for (int k = -2; k <= 2; ++k) {
    const DerivedParameters dk = derive_all(s, t + k * h, 0.0);
    m1v[k + 2] = dk.m1;
    m2v[k + 2] = dk.m2;
  }
  const double fd1 = (-m1v[4] + 8 * m1v[3] - 8 * m1v[1] + m1v[0]) / (12 * h);
  const double fd2 = (-m2v[4] + 8 * m2v[3] - 8 * m2v[1] + m2v[0]) / (12 * h);
  const double fdd1 = (-m1v[4] + 16 * m1v[3] - 30 * m1v[2] + 16 * m1v[1] - m1v[0]) / (12 * h * h);
  CHECK(d.mdot1 == doctest::Approx(fd1).epsilon(1e-9));
  CHECK(d.mdot2 == doctest::Approx(fd2).epsilon(1e-9));
  CHECK(d.mddot1 == doctest::Approx(fdd1).epsilon(1e-5));
}

TEST_CASE("nonpositive mass is rejected at the offending time") {
  ParameterSchedule s = generic_schedule();
  s.mass = Schedule::linear(1.0, -0.5);
  CHECK_NOTHROW(derive_all(s, 1.0, 0.0));
  CHECK_THROWS_AS(derive_all(s, 3.0, 0.0), NonpositiveMass);
  CHECK_THROWS_AS(eval_cyclotron(s, 2.0), NonpositiveMass);
}

TEST_CASE("mixing angle for field-free constant coupling is zero with zero residual") {
  ParameterSchedule s;
  s.mass = Schedule::constant(1.0);
  s.trap_frequency = Schedule::constant(1.1);
  s.field = Schedule::constant(0.0);
  s.static_coupling = Schedule::constant(0.07);
  s.dynamic_coupling = Schedule::constant(0.0);
  const MixingAngle ma = solve_mixing_angle(s, 0.0, 5.0, 64, 1e-8);
  CHECK(!ma.degenerate);
  CHECK(ma.theta == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ma.max_deviation < 1e-12);
  // the cross coupling the angle is meant to null must indeed vanish
  const DerivedParameters d = derive_all(s, 2.0, ma.theta);
  CHECK(std::abs(d.delta) < 1e-12 * std::max(std::abs(d.omega_tilde1_sq),
                                             std::abs(d.omega_tilde2_sq)));
}

TEST_CASE("mixing angle solve rejects a drifting angle with the deviation attached") {
  const ParameterSchedule s = generic_schedule();  // generic couplings drift
  try {
    solve_mixing_angle(s, 0.0, 5.0, 64, 1e-8);
    FAIL("expected ThetaNotConstant");
  } catch (const ThetaNotConstant& e) {
    CHECK(e.max_deviation > 1e-3);
  }
}

TEST_CASE("co-varied couplings keep the mixing angle constant under a driven field") {
  ParameterSchedule s;
  s.mass = Schedule::constant(1.0);
  s.trap_frequency = Schedule::constant(1.0);
  s.field = Schedule::constant(0.5);
  const double b0 = 2e-4;
  // a = -m^2 omega^2 b with omega^2 = 1 + B^2/4 cancels the cross term exactly
  s.static_coupling = Schedule::constant(-(1.0 + 0.0625) * b0);
  s.dynamic_coupling = Schedule::constant(b0);
  const MixingAngle ma = solve_mixing_angle(s, 0.0, 5.0, 128, 1e-8);
  CHECK(!ma.degenerate);
  CHECK(std::abs(ma.theta) < 1e-10);
  CHECK(ma.max_deviation < 1e-10);
}

TEST_CASE("degenerate decoupling condition reports theta = 0") {
  ParameterSchedule s;
  s.mass = Schedule::constant(1.0);
  s.trap_frequency = Schedule::constant(1.0);
  s.field = Schedule::constant(0.0);
  s.static_coupling = Schedule::constant(0.0);
  s.dynamic_coupling = Schedule::constant(0.0);
  const MixingAngle ma = solve_mixing_angle(s, 0.0, 2.0, 32, 1e-8);
  CHECK(ma.degenerate);
  CHECK(ma.theta == 0.0);
}
