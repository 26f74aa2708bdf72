#include "qosc/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qosc {

Schedule Schedule::constant(double value) {
  Schedule s(ScheduleFamily::constant);
  s.p0_ = value;
  return s;
}

Schedule Schedule::linear(double offset, double slope) {
  Schedule s(ScheduleFamily::linear);
  s.p0_ = offset;
  s.p1_ = slope;
  return s;
}

Schedule Schedule::sinusoidal(double offset, double amplitude, double omega, double phase) {
  Schedule s(ScheduleFamily::sinusoidal);
  s.p0_ = offset;
  s.p1_ = amplitude;
  s.p2_ = omega;
  s.p3_ = phase;
  return s;
}

Schedule Schedule::exponential(double offset, double amplitude, double rate) {
  Schedule s(ScheduleFamily::exponential);
  s.p0_ = offset;
  s.p1_ = amplitude;
  s.p2_ = rate;
  return s;
}

Schedule Schedule::table(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size())
    throw std::invalid_argument("schedule table: times/values size mismatch");
  if (times.size() < 4) throw std::invalid_argument("schedule table: need at least 4 samples");
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("schedule table: times must be strictly increasing");

  Schedule s(ScheduleFamily::table);
  s.knots_ = std::move(times);
  s.vals_ = std::move(values);

  // Natural cubic spline: tridiagonal solve for knot second derivatives.
  size_t n = s.knots_.size();
  std::vector<double> h(n - 1), rhs(n, 0.0), diag(n, 2.0), sub(n, 0.0);
  for (size_t i = 0; i + 1 < n; ++i) h[i] = s.knots_[i + 1] - s.knots_[i];
  s.m2_.assign(n, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    double hi = h[i - 1], hj = h[i];
    sub[i] = hi / (hi + hj);
    rhs[i] = 6.0 / (hi + hj) *
             ((s.vals_[i + 1] - s.vals_[i]) / hj - (s.vals_[i] - s.vals_[i - 1]) / hi);
  }
  // forward elimination (natural ends: m2[0] = m2[n-1] = 0)
  std::vector<double> c(n, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    double up = 1.0 - sub[i];  // superdiagonal weight
    double denom = diag[i] - sub[i] * c[i - 1];
    c[i] = up / denom;
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / denom;
  }
  for (size_t i = n - 2; i >= 1; --i) s.m2_[i] = rhs[i] - c[i] * s.m2_[i + 1];
  return s;
}

int Schedule::interval(double t) const {
  // index of the polynomial piece; end pieces extend beyond the sample range
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  long idx = it - knots_.begin() - 1;
  idx = std::clamp(idx, 0L, static_cast<long>(knots_.size()) - 2);
  return static_cast<int>(idx);
}

double Schedule::value(double t) const {
  switch (family_) {
    case ScheduleFamily::constant: return p0_;
    case ScheduleFamily::linear: return p0_ + p1_ * t;
    case ScheduleFamily::sinusoidal: return p0_ + p1_ * std::sin(p2_ * t + p3_);
    case ScheduleFamily::exponential: return p0_ + p1_ * std::exp(p2_ * t);
    case ScheduleFamily::table: {
      int i = interval(t);
      double h = knots_[i + 1] - knots_[i];
      double A = (knots_[i + 1] - t) / h, B = (t - knots_[i]) / h;
      return A * vals_[i] + B * vals_[i + 1] +
             ((A * A * A - A) * m2_[i] + (B * B * B - B) * m2_[i + 1]) * h * h / 6.0;
    }
  }
  return 0;
}

double Schedule::deriv1(double t) const {
  switch (family_) {
    case ScheduleFamily::constant: return 0;
    case ScheduleFamily::linear: return p1_;
    case ScheduleFamily::sinusoidal: return p1_ * p2_ * std::cos(p2_ * t + p3_);
    case ScheduleFamily::exponential: return p1_ * p2_ * std::exp(p2_ * t);
    case ScheduleFamily::table: {
      int i = interval(t);
      double h = knots_[i + 1] - knots_[i];
      double A = (knots_[i + 1] - t) / h, B = (t - knots_[i]) / h;
      return (vals_[i + 1] - vals_[i]) / h +
             (-(3 * A * A - 1) * m2_[i] + (3 * B * B - 1) * m2_[i + 1]) * h / 6.0;
    }
  }
  return 0;
}

double Schedule::deriv2(double t) const {
  switch (family_) {
    case ScheduleFamily::constant: return 0;
    case ScheduleFamily::linear: return 0;
    case ScheduleFamily::sinusoidal: return -p1_ * p2_ * p2_ * std::sin(p2_ * t + p3_);
    case ScheduleFamily::exponential: return p1_ * p2_ * p2_ * std::exp(p2_ * t);
    case ScheduleFamily::table: {
      int i = interval(t);
      double h = knots_[i + 1] - knots_[i];
      double A = (knots_[i + 1] - t) / h, B = (t - knots_[i]) / h;
      return A * m2_[i] + B * m2_[i + 1];
    }
  }
  return 0;
}

}  // namespace qosc
