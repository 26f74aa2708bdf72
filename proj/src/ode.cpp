#include "qosc/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <boost/numeric/odeint.hpp>

#include "qosc/errors.hpp"

namespace qosc {
namespace {

void check_mesh(const std::vector<double>& mesh) {
  if (mesh.size() < 2) throw std::invalid_argument("ode: mesh needs at least two points");
  for (std::size_t i = 1; i < mesh.size(); ++i) {
    if (!(mesh[i] > mesh[i - 1]))
      throw std::invalid_argument("ode: mesh must be strictly increasing");
  }
}

double uniform_step(const std::vector<double>& mesh) {
  const double h = mesh[1] - mesh[0];
  for (std::size_t i = 1; i + 1 < mesh.size(); ++i) {
    if (std::abs(mesh[i + 1] - mesh[i] - h) > 1e-9 * std::abs(h))
      throw std::invalid_argument("ode: finite-difference residual requires a uniform mesh");
  }
  return h;
}

constexpr double kAbsTol = 1e-13;
constexpr double kRelTol = 1e-12;
constexpr double kWronskianTol = 1e-9;

// 4-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 2> kGlNode = {0.33998104358485626, 0.86113631159405258};
constexpr std::array<double, 2> kGlWeight = {0.65214515486254614, 0.34785484513745386};

template <typename F>
double gauss4(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), d = 0.5 * (b - a);
  double acc = 0;
  for (int k = 0; k < 2; ++k)
    acc += kGlWeight[k] * (f(c - d * kGlNode[k]) + f(c + d * kGlNode[k]));
  return d * acc;
}

}  // namespace

HermiteSeries::HermiteSeries(std::vector<double> mesh, std::vector<double> y,
                             std::vector<double> yd, std::vector<double> ydd)
    : mesh_(std::move(mesh)), y_(std::move(y)), yd_(std::move(yd)), ydd_(std::move(ydd)) {
  check_mesh(mesh_);
  if (y_.size() != mesh_.size() || yd_.size() != mesh_.size() || ydd_.size() != mesh_.size())
    throw std::invalid_argument("HermiteSeries: sample arrays must match the mesh");
}

int HermiteSeries::interval(double t) const {
  auto it = std::upper_bound(mesh_.begin(), mesh_.end(), t);
  int i = static_cast<int>(it - mesh_.begin()) - 1;
  return std::clamp(i, 0, static_cast<int>(mesh_.size()) - 2);
}

double HermiteSeries::eval(double t) const {
  const int i = interval(t);
  const double h = mesh_[i + 1] - mesh_[i];
  const double s = (t - mesh_[i]) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double h0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
  const double h1 = s - 6 * s3 + 8 * s4 - 3 * s5;
  const double h2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
  const double h3 = 10 * s3 - 15 * s4 + 6 * s5;
  const double h4 = -4 * s3 + 7 * s4 - 3 * s5;
  const double h5 = 0.5 * s3 - s4 + 0.5 * s5;
  return y_[i] * h0 + h * yd_[i] * h1 + h * h * ydd_[i] * h2 + y_[i + 1] * h3 +
         h * yd_[i + 1] * h4 + h * h * ydd_[i + 1] * h5;
}

double HermiteSeries::eval_deriv(double t) const {
  const int i = interval(t);
  const double h = mesh_[i + 1] - mesh_[i];
  const double s = (t - mesh_[i]) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
  const double d0 = -30 * s2 + 60 * s3 - 30 * s4;
  const double d1 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
  const double d2 = s - 4.5 * s2 + 6 * s3 - 2.5 * s4;
  const double d3 = 30 * s2 - 60 * s3 + 30 * s4;
  const double d4 = -12 * s2 + 28 * s3 - 15 * s4;
  const double d5 = 1.5 * s2 - 4 * s3 + 2.5 * s4;
  return (y_[i] * d0 + h * yd_[i] * d1 + h * h * ydd_[i] * d2 + y_[i + 1] * d3 +
          h * yd_[i + 1] * d4 + h * h * ydd_[i + 1] * d5) /
         h;
}

double ClassicalPair::wronskian_at(double t) const {
  return u.eval(t) * v.eval_deriv(t) - v.eval(t) * u.eval_deriv(t);
}

ClassicalPair integrate_classical(const OmegaSqFn& omega_sq, const std::vector<double>& mesh,
                                  double u0, double udot0, double v0, double vdot0) {
  check_mesh(mesh);
  using State = std::array<double, 4>;
  namespace ode = boost::numeric::odeint;

  auto rhs = [&omega_sq](const State& x, State& dxdt, double t) {
    const double w2 = omega_sq(t);
    dxdt[0] = x[1];
    dxdt[1] = -w2 * x[0];
    dxdt[2] = x[3];
    dxdt[3] = -w2 * x[2];
  };

  std::vector<State> samples;
  samples.reserve(mesh.size());
  State x = {u0, udot0, v0, vdot0};
  auto stepper = ode::make_dense_output(kAbsTol, kRelTol, ode::runge_kutta_dopri5<State>());
  ode::integrate_times(stepper, rhs, x, mesh.begin(), mesh.end(),
                       0.25 * (mesh[1] - mesh[0]),
                       [&samples](const State& s, double) { samples.push_back(s); });

  const std::size_t n = mesh.size();
  std::vector<double> uu(n), ud(n), udd(n), vv(n), vd(n), vdd(n), w2v(n);
  for (std::size_t i = 0; i < n; ++i) {
    w2v[i] = omega_sq(mesh[i]);
    uu[i] = samples[i][0];
    ud[i] = samples[i][1];
    udd[i] = -w2v[i] * uu[i];
    vv[i] = samples[i][2];
    vd[i] = samples[i][3];
    vdd[i] = -w2v[i] * vv[i];
  }

  const double w_ref = uu[0] * vd[0] - vv[0] * ud[0];
  if (w_ref == 0) throw std::invalid_argument("ode: classical pair is linearly dependent");
  double drift = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = uu[i] * vd[i] - vv[i] * ud[i];
    drift = std::max(drift, std::abs(w - w_ref) / std::abs(w_ref));
  }
  if (drift > kWronskianTol)
    throw StepSizeUnderflow("ode: Wronskian drift " + std::to_string(drift) +
                            " exceeds tolerance; integration accuracy lost");

  ClassicalPair pair;
  pair.mesh = mesh;
  pair.u = HermiteSeries(mesh, std::move(uu), std::move(ud), std::move(udd));
  pair.v = HermiteSeries(mesh, std::move(vv), std::move(vd), std::move(vdd));
  pair.wronskian = w_ref;
  pair.wronskian_drift = drift;
  pair.omega_sq = std::move(w2v);
  return pair;
}

ClassicalPair integrate_classical_for_pinney(const OmegaSqFn& omega_sq,
                                             const std::vector<double>& mesh, double rho0,
                                             double rhodot0, double w) {
  if (!(rho0 > 0)) throw RhoNonPositive("ode: rho(t0) must be positive");
  // With u(t0)=rho0, v(t0)=0, v'(t0)=w/rho0 the Pinney combination starts at
  // exactly (rho0, rhodot0).
  return integrate_classical(omega_sq, mesh, rho0, rhodot0, 0.0, w / rho0);
}

ErmakovSolution pinney_compose(const ClassicalPair& pair) {
  const std::size_t n = pair.mesh.size();
  const double w2 = pair.wronskian * pair.wronskian;

  auto rho_dense = [&pair, w2](double t) {
    const double uu = pair.u.eval(t), vv = pair.v.eval(t);
    return std::sqrt(uu * uu + vv * vv / w2);
  };

  std::vector<double> rho(n), rhod(n), rhodd(n), tau(n), taud(n), taudd(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double uu = pair.u.values()[i], ud = pair.u.derivs()[i];
    const double vv = pair.v.values()[i], vd = pair.v.derivs()[i];
    const double r2 = uu * uu + vv * vv / w2;
    if (!(r2 > 0)) throw RhoNonPositive("ode: Pinney amplitude vanished");
    rho[i] = std::sqrt(r2);
    rhod[i] = (uu * ud + vv * vd / w2) / rho[i];
    rhodd[i] = 1.0 / (r2 * rho[i]) - pair.omega_sq[i] * rho[i];
    taud[i] = 1.0 / r2;
    taudd[i] = -2.0 * rhod[i] / (r2 * rho[i]);
  }
  tau[0] = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto integrand = [&rho_dense](double t) {
      const double r = rho_dense(t);
      return 1.0 / (r * r);
    };
    tau[i + 1] = tau[i] + gauss4(integrand, pair.mesh[i], pair.mesh[i + 1]);
  }

  ErmakovSolution sol;
  sol.mesh = pair.mesh;
  sol.rho = HermiteSeries(pair.mesh, std::move(rho), std::move(rhod), std::move(rhodd));
  sol.tau = HermiteSeries(pair.mesh, std::move(tau), std::move(taud), std::move(taudd));
  sol.omega_sq = pair.omega_sq;
  return sol;
}

ErmakovSolution integrate_ermakov_direct(const OmegaSqFn& omega_sq,
                                         const std::vector<double>& mesh, double rho0,
                                         double rhodot0) {
  check_mesh(mesh);
  if (!(rho0 > 0)) throw RhoNonPositive("ode: rho(t0) must be positive");
  using State = std::array<double, 3>;
  namespace ode = boost::numeric::odeint;

  auto rhs = [&omega_sq](const State& x, State& dxdt, double t) {
    if (!(x[0] > 0)) throw RhoNonPositive("ode: rho reached zero during integration");
    const double r3 = x[0] * x[0] * x[0];
    dxdt[0] = x[1];
    dxdt[1] = 1.0 / r3 - omega_sq(t) * x[0];
    dxdt[2] = 1.0 / (x[0] * x[0]);
  };

  std::vector<State> samples;
  samples.reserve(mesh.size());
  State x = {rho0, rhodot0, 0.0};
  auto stepper = ode::make_dense_output(kAbsTol, kRelTol, ode::runge_kutta_dopri5<State>());
  ode::integrate_times(stepper, rhs, x, mesh.begin(), mesh.end(),
                       0.25 * (mesh[1] - mesh[0]),
                       [&samples](const State& s, double) { samples.push_back(s); });

  const std::size_t n = mesh.size();
  std::vector<double> rho(n), rhod(n), rhodd(n), tau(n), taud(n), taudd(n), w2v(n);
  for (std::size_t i = 0; i < n; ++i) {
    w2v[i] = omega_sq(mesh[i]);
    rho[i] = samples[i][0];
    rhod[i] = samples[i][1];
    tau[i] = samples[i][2];
    const double r2 = rho[i] * rho[i];
    rhodd[i] = 1.0 / (r2 * rho[i]) - w2v[i] * rho[i];
    taud[i] = 1.0 / r2;
    taudd[i] = -2.0 * rhod[i] / (r2 * rho[i]);
  }

  ErmakovSolution sol;
  sol.mesh = mesh;
  sol.rho = HermiteSeries(mesh, std::move(rho), std::move(rhod), std::move(rhodd));
  sol.tau = HermiteSeries(mesh, std::move(tau), std::move(taud), std::move(taudd));
  sol.omega_sq = std::move(w2v);
  return sol;
}

double ErmakovSolution::residual_at(int i) const {
  const auto& y = rho.values();
  const int n = static_cast<int>(y.size());
  if (n < 6) throw std::invalid_argument("ode: residual needs at least six mesh points");
  const double h = uniform_step(mesh);
  const double h2 = 12.0 * h * h;
  double fd;
  if (i >= 2 && i <= n - 3) {
    fd = (-y[i - 2] + 16 * y[i - 1] - 30 * y[i] + 16 * y[i + 1] - y[i + 2]) / h2;
  } else if (i == 0) {
    fd = (45 * y[0] - 154 * y[1] + 214 * y[2] - 156 * y[3] + 61 * y[4] - 10 * y[5]) / h2;
  } else if (i == 1) {
    fd = (10 * y[0] - 15 * y[1] - 4 * y[2] + 14 * y[3] - 6 * y[4] + y[5]) / h2;
  } else if (i == n - 2) {
    fd = (10 * y[n - 1] - 15 * y[n - 2] - 4 * y[n - 3] + 14 * y[n - 4] - 6 * y[n - 5] +
          y[n - 6]) /
         h2;
  } else if (i == n - 1) {
    fd = (45 * y[n - 1] - 154 * y[n - 2] + 214 * y[n - 3] - 156 * y[n - 4] + 61 * y[n - 5] -
          10 * y[n - 6]) /
         h2;
  } else {
    throw std::out_of_range("ode: residual index out of range");
  }
  const double r = y[i];
  return std::abs(fd + omega_sq[i] * r - 1.0 / (r * r * r));
}

double ErmakovSolution::residual_max() const {
  double m = 0;
  for (int i = 0; i < static_cast<int>(mesh.size()); ++i) m = std::max(m, residual_at(i));
  return m;
}

double phase_alpha(const ErmakovSolution& rho1, const ErmakovSolution& rho2, int n1, int n2,
                   double t) {
  return -(n1 + 0.5) * rho1.tau_at(t) - (n2 + 0.5) * rho2.tau_at(t);
}

}  // namespace qosc
