#pragma once

#include <string>
#include <vector>

#include "qosc/autodiff.hpp"

namespace qosc {

enum class ScheduleFamily { constant, linear, sinusoidal, exponential, table };

// One scalar coefficient of the Hamiltonian as a function of time.  Closed
// families are differentiated analytically; sampled tables are interpolated
// with a natural cubic spline whose polynomial pieces supply the derivatives.
class Schedule {
 public:
  Schedule() : Schedule(constant(0.0)) {}

  static Schedule constant(double value);
  static Schedule linear(double offset, double slope);
  // offset + amplitude * sin(omega * t + phase)
  static Schedule sinusoidal(double offset, double amplitude, double omega, double phase);
  // offset + amplitude * exp(rate * t)
  static Schedule exponential(double offset, double amplitude, double rate);
  // Strictly increasing sample times, >= 4 points.  Evaluation outside the
  // sampled range extends the end polynomials.
  static Schedule table(std::vector<double> times, std::vector<double> values);

  ScheduleFamily family() const { return family_; }

  double value(double t) const;
  double deriv1(double t) const;
  double deriv2(double t) const;
  D2 eval(double t) const { return {value(t), deriv1(t), deriv2(t)}; }

 private:
  explicit Schedule(ScheduleFamily f) : family_(f) {}

  ScheduleFamily family_;
  // closed families: interpretation depends on family_
  double p0_ = 0, p1_ = 0, p2_ = 0, p3_ = 0;
  // table: spline knots and per-knot second derivatives
  std::vector<double> knots_;
  std::vector<double> vals_;
  std::vector<double> m2_;  // spline second derivatives at knots

  int interval(double t) const;
};

// The full coefficient set of the driven two-dimensional oscillator, plus the
// constants of the model.  start_time anchors the accumulated rotation angle.
struct ParameterSchedule {
  Schedule mass;              // m(t) > 0
  Schedule trap_frequency;    // bare trap frequency
  Schedule field;             // magnetic field B(t)
  Schedule static_coupling;   // a(t), coefficient of x*y
  Schedule dynamic_coupling;  // b(t), coefficient of px*py
  double charge = 1.0;
  double hbar = 1.0;
  double start_time = 0.0;
};

}  // namespace qosc
