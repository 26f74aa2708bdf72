#pragma once

#include <vector>

#include "qosc/ode.hpp"
#include "qosc/schedule.hpp"

namespace qosc {

// Coefficients of the transformed Hamiltonians at one instant.  The chain
// runs: rotating frame (removes the angular-momentum term), squeeze plus
// quarter rotation (removes the momentum cross term), then a mass-scaled
// rotation by theta/2 (removes the remaining coordinate cross term).
//
// omega_tilde*_sq may be negative for strongly driven masses; every other
// squared frequency is validated nonnegative before taking the root.
struct DerivedParameters {
  double t = 0;
  double phi = 0;      // accumulated rotation angle, -(1/2) integral of omega_c
  double omega_c = 0;  // cyclotron frequency e*B/m
  double omega = 0;    // modulated frequency sqrt(trap^2 + omega_c^2/4)
  double m_minus = 0, m_plus = 0;
  double omega_minus = 0, omega_plus = 0;
  double a1 = 0, b1 = 0;  // couplings after the rotating-frame transform
  double m1 = 0, m2 = 0;
  double mdot1 = 0, mdot2 = 0;    // d/dt of m1, m2 (drive the quadratic-phase step)
  double mddot1 = 0, mddot2 = 0;  // d^2/dt^2 of m1, m2
  double omega1 = 0, omega2 = 0;
  double c = 0;  // coordinate cross-coupling ahead of the theta rotation
  double omega_tilde1_sq = 0, omega_tilde2_sq = 0;
  double theta = 0;
  double Omega1 = 0, Omega2 = 0;  // decoupled mode frequencies
  double delta = 0;               // residual cross coupling at this theta
};

struct MixingAngle {
  double theta = 0;
  double max_deviation = 0;  // peak-to-peak spread across the mesh
  bool degenerate = false;   // numerator and denominator both vanish everywhere
};

// Cyclotron frequency e*B(t)/m(t).
double eval_cyclotron(const ParameterSchedule& sched, double t);

// Rotation angle phi(t) = -(1/2) * integral of the cyclotron frequency from
// sched.start_time to t, by adaptive Gauss-Kronrod quadrature.
double eval_phi(const ParameterSchedule& sched, double t);

// Incremental phi evaluation along a nondecreasing sequence of times; each
// step integrates only the new subinterval, so a full mesh costs the same as
// one eval_phi call over the window.
class PhiAccumulator {
 public:
  explicit PhiAccumulator(const ParameterSchedule& sched);
  double at(double t);  // t must be >= the previous call's argument

 private:
  const ParameterSchedule& sched_;
  double t_last_;
  double phi_last_;
};

// Full chain at one time for a given (constant) mixing angle.
DerivedParameters derive_all(const ParameterSchedule& sched, double t, double theta);
// Same, with phi supplied by the caller (e.g. from a PhiAccumulator).
DerivedParameters derive_all(const ParameterSchedule& sched, double t, double theta, double phi);

// Decoupling angle from the cross-term cancellation condition, evaluated on a
// uniform mesh over [t0, t1].  atan2 values are folded to (-pi/2, pi/2] so the
// branch is stable when the numerator vanishes identically.  Throws
// ThetaNotConstant if the folded angle varies more than tol peak-to-peak.
MixingAngle solve_mixing_angle(const ParameterSchedule& sched, double t0, double t1,
                               int mesh_points = 64, double tol = 1e-8);

// phi(t) tabulated once on a uniform mesh and wrapped in a quintic Hermite
// interpolant (phi' = -omega_c/2, phi'' = -omega_c'/2 are exact at the
// knots).  Unlike PhiAccumulator this supports arbitrary evaluation order,
// which adaptive steppers need.
HermiteSeries make_phi_series(const ParameterSchedule& sched, double t0, double t1,
                              int mesh_points = 512);

}  // namespace qosc
