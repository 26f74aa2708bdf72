#include "qosc/params.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "qosc/errors.hpp"

namespace qosc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double integrate_cyclotron(const ParameterSchedule& sched, double a, double b) {
  if (a == b) return 0.0;
  auto f = [&sched](double t) { return eval_cyclotron(sched, t); };
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 12, 1e-13);
}

// Chain evaluated with value + two derivatives.  theta enters only at the
// final stage; quantities before it are theta-independent.
struct Chain {
  D2 m, omega_c, omega_sq;
  D2 S, C;  // sin(2 phi), cos(2 phi)
  D2 m_minus, m_plus;
  D2 omega_minus_sq, omega_plus_sq;
  D2 a1, b1;
  D2 m1, m2;
  D2 omega1_sq, omega2_sq;
  D2 c;
  double omega_tilde1_sq = 0, omega_tilde2_sq = 0;
  double t = 0, phi = 0;
  D2 varpi, a, b;
};

Chain evaluate_chain(const ParameterSchedule& sched, double t, double phi) {
  Chain ch;
  ch.t = t;
  ch.phi = phi;
  ch.m = sched.mass.eval(t);
  ch.varpi = sched.trap_frequency.eval(t);
  ch.a = sched.static_coupling.eval(t);
  ch.b = sched.dynamic_coupling.eval(t);
  D2 B = sched.field.eval(t);

  if (ch.m.v <= 0) throw NonpositiveMass("mass schedule nonpositive at t=" + std::to_string(t));

  D2 e(sched.charge);
  ch.omega_c = e * B / ch.m;
  ch.omega_sq = sq(ch.varpi) + sq(ch.omega_c) * D2(0.25);

  // phi carries exact derivatives even though its value comes from quadrature
  D2 phi_d2(phi, -0.5 * ch.omega_c.v, -0.5 * ch.omega_c.d1);
  D2 two_phi = phi_d2 + phi_d2;
  ch.S = sin(two_phi);
  ch.C = cos(two_phi);

  D2 one(1.0);
  D2 mbS = ch.m * ch.b * ch.S;
  D2 den_minus = one - mbS;
  D2 den_plus = one + mbS;
  if (den_minus.v <= 0 || den_plus.v <= 0)
    throw NonpositiveMass("frame mass nonpositive at t=" + std::to_string(t));
  ch.m_minus = ch.m / den_minus;
  ch.m_plus = ch.m / den_plus;

  D2 m_omega_sq = ch.m * ch.omega_sq;
  D2 aS = ch.a * ch.S;
  ch.omega_minus_sq = (m_omega_sq - aS) / ch.m_minus;
  ch.omega_plus_sq = (m_omega_sq + aS) / ch.m_plus;
  if (ch.omega_minus_sq.v < 0 || ch.omega_plus_sq.v < 0)
    throw NegativeRadicand("rotating-frame frequency squared negative at t=" + std::to_string(t));

  ch.a1 = ch.a * ch.C;
  ch.b1 = ch.b * ch.C;

  D2 sqrt_mm = sqrt(ch.m_plus * ch.m_minus);
  D2 inv_m1 = inv(sqrt_mm) - ch.b1;
  D2 inv_m2 = inv(sqrt_mm) + ch.b1;
  if (inv_m1.v <= 0 || inv_m2.v <= 0)
    throw NonpositiveMass("normal-mode mass nonpositive at t=" + std::to_string(t));
  ch.m1 = inv(inv_m1);
  ch.m2 = inv(inv_m2);

  D2 G = D2(0.5) * sqrt_mm * (ch.omega_minus_sq + ch.omega_plus_sq);
  ch.omega1_sq = (G - ch.a1) / ch.m1;
  ch.omega2_sq = (G + ch.a1) / ch.m2;
  if (ch.omega1_sq.v < 0 || ch.omega2_sq.v < 0)
    throw NegativeRadicand("normal-mode frequency squared negative at t=" + std::to_string(t));

  ch.c = D2(0.5) * sqrt_mm * (ch.omega_minus_sq - ch.omega_plus_sq);

  auto tilde = [](const D2& w_sq, const D2& mi) {
    double r = mi.d1 / mi.v;
    return w_sq.v + 0.25 * (r * r - 2.0 * mi.d2 / mi.v);
  };
  ch.omega_tilde1_sq = tilde(ch.omega1_sq, ch.m1);
  ch.omega_tilde2_sq = tilde(ch.omega2_sq, ch.m2);
  return ch;
}

DerivedParameters finish(const Chain& ch, double theta) {
  DerivedParameters d;
  d.t = ch.t;
  d.phi = ch.phi;
  d.omega_c = ch.omega_c.v;
  d.omega = std::sqrt(ch.omega_sq.v);
  d.m_minus = ch.m_minus.v;
  d.m_plus = ch.m_plus.v;
  d.omega_minus = std::sqrt(ch.omega_minus_sq.v);
  d.omega_plus = std::sqrt(ch.omega_plus_sq.v);
  d.a1 = ch.a1.v;
  d.b1 = ch.b1.v;
  d.m1 = ch.m1.v;
  d.m2 = ch.m2.v;
  d.mdot1 = ch.m1.d1;
  d.mdot2 = ch.m2.d1;
  d.mddot1 = ch.m1.d2;
  d.mddot2 = ch.m2.d2;
  d.omega1 = std::sqrt(ch.omega1_sq.v);
  d.omega2 = std::sqrt(ch.omega2_sq.v);
  d.c = ch.c.v;
  d.omega_tilde1_sq = ch.omega_tilde1_sq;
  d.omega_tilde2_sq = ch.omega_tilde2_sq;
  d.theta = theta;

  double ct = std::cos(0.5 * theta), st = std::sin(0.5 * theta);
  double sin_t = std::sin(theta), cos_t = std::cos(theta);
  double root_m12 = std::sqrt(ch.m1.v * ch.m2.v);
  double w1 = ch.omega_tilde1_sq, w2 = ch.omega_tilde2_sq;
  double Omega1_sq = w1 * ct * ct + w2 * st * st - ch.c.v * sin_t / root_m12;
  double Omega2_sq = w1 * st * st + w2 * ct * ct + ch.c.v * sin_t / root_m12;
  if (Omega1_sq < 0 || Omega2_sq < 0)
    throw NegativeRadicand("decoupled frequency squared negative at t=" + std::to_string(ch.t));
  d.Omega1 = std::sqrt(Omega1_sq);
  d.Omega2 = std::sqrt(Omega2_sq);
  d.delta = 0.5 * (w1 - w2) * sin_t + ch.c.v * cos_t / root_m12;
  return d;
}

}  // namespace

double eval_cyclotron(const ParameterSchedule& sched, double t) {
  double m = sched.mass.value(t);
  if (m <= 0) throw NonpositiveMass("mass schedule nonpositive at t=" + std::to_string(t));
  return sched.charge * sched.field.value(t) / m;
}

double eval_phi(const ParameterSchedule& sched, double t) {
  return -0.5 * integrate_cyclotron(sched, sched.start_time, t);
}

PhiAccumulator::PhiAccumulator(const ParameterSchedule& sched)
    : sched_(sched), t_last_(sched.start_time), phi_last_(0.0) {}

double PhiAccumulator::at(double t) {
  if (t < t_last_)
    throw TimeMeshMismatch("PhiAccumulator: times must be nondecreasing");
  phi_last_ -= 0.5 * integrate_cyclotron(sched_, t_last_, t);
  t_last_ = t;
  return phi_last_;
}

DerivedParameters derive_all(const ParameterSchedule& sched, double t, double theta) {
  return derive_all(sched, t, theta, eval_phi(sched, t));
}

DerivedParameters derive_all(const ParameterSchedule& sched, double t, double theta, double phi) {
  return finish(evaluate_chain(sched, t, phi), theta);
}

HermiteSeries make_phi_series(const ParameterSchedule& sched, double t0, double t1,
                              int mesh_points) {
  if (mesh_points < 2) throw TimeMeshMismatch("make_phi_series: need at least 2 mesh points");
  std::vector<double> mesh(mesh_points), y(mesh_points), yd(mesh_points), ydd(mesh_points);
  PhiAccumulator phi(sched);
  for (int i = 0; i < mesh_points; ++i) {
    double t = t0 + (t1 - t0) * i / (mesh_points - 1);
    D2 m = sched.mass.eval(t);
    if (m.v <= 0)
      throw NonpositiveMass("mass schedule nonpositive at t=" + std::to_string(t));
    D2 wc = D2(sched.charge) * sched.field.eval(t) / m;
    mesh[i] = t;
    y[i] = phi.at(t);
    yd[i] = -0.5 * wc.v;
    ydd[i] = -0.5 * wc.d1;
  }
  return HermiteSeries(std::move(mesh), std::move(y), std::move(yd), std::move(ydd));
}

MixingAngle solve_mixing_angle(const ParameterSchedule& sched, double t0, double t1,
                               int mesh_points, double tol) {
  if (mesh_points < 2) throw TimeMeshMismatch("solve_mixing_angle: need at least 2 mesh points");
  PhiAccumulator phi(sched);
  double theta_min = 0, theta_max = 0;
  bool any_regular = false;
  for (int i = 0; i < mesh_points; ++i) {
    double t = t0 + (t1 - t0) * i / (mesh_points - 1);
    Chain ch = evaluate_chain(sched, t, phi.at(t));
    double num = 2.0 * ch.c.v;
    double den = std::sqrt(ch.m1.v * ch.m2.v) * (ch.omega_tilde2_sq - ch.omega_tilde1_sq);
    // num and den are differences of like-sized terms; anything below ~1e3
    // ulps of those terms is rounding noise, and an analytically vanishing
    // numerator must not be divided by a denominator passing through zero.
    double num_scale = std::sqrt(ch.m_plus.v * ch.m_minus.v) *
                       (std::abs(ch.omega_minus_sq.v) + std::abs(ch.omega_plus_sq.v));
    double den_scale = std::sqrt(ch.m1.v * ch.m2.v) *
                       (std::abs(ch.omega_tilde1_sq) + std::abs(ch.omega_tilde2_sq));
    const bool num_zero = std::abs(num) <= 1e-13 * num_scale;
    const bool den_zero = std::abs(den) <= 1e-13 * den_scale;
    if (num_zero && den_zero) continue;
    double theta = num_zero ? 0.0 : std::atan2(num, den);
    if (theta > 0.5 * kPi) theta -= kPi;
    if (theta <= -0.5 * kPi) theta += kPi;
    if (!any_regular) {
      any_regular = true;
      theta_min = theta_max = theta;
    } else {
      theta_min = std::min(theta_min, theta);
      theta_max = std::max(theta_max, theta);
    }
  }
  if (!any_regular) return {0.0, 0.0, true};
  double deviation = theta_max - theta_min;
  if (deviation > tol)
    throw ThetaNotConstant("mixing angle varies by " + std::to_string(deviation) +
                               " rad across the window",
                           deviation);
  return {0.5 * (theta_min + theta_max), deviation, false};
}

}  // namespace qosc
