#pragma once

#include <functional>
#include <vector>

namespace qosc {

using OmegaSqFn = std::function<double(double)>;

// Piecewise-quintic Hermite interpolant built from (value, d/dt, d2/dt2)
// samples on a strictly increasing mesh.  Error O(h^6) for smooth data.
class HermiteSeries {
 public:
  HermiteSeries() = default;
  HermiteSeries(std::vector<double> mesh, std::vector<double> y, std::vector<double> yd,
                std::vector<double> ydd);

  double eval(double t) const;
  double eval_deriv(double t) const;
  const std::vector<double>& mesh() const { return mesh_; }
  const std::vector<double>& values() const { return y_; }
  const std::vector<double>& derivs() const { return yd_; }

 private:
  std::vector<double> mesh_, y_, yd_, ydd_;
  int interval(double t) const;
};

// Two independent solutions of x'' + Omega^2(t) x = 0 sharing one mesh.
// The Wronskian u*v' - v*u' is conserved; integration is rejected if it
// drifts by more than 1e-9 relative.
struct ClassicalPair {
  std::vector<double> mesh;
  HermiteSeries u, v;
  double wronskian = 0;            // value at mesh.front()
  double wronskian_drift = 0;      // max relative drift over the mesh
  std::vector<double> omega_sq;    // Omega^2 sampled on the mesh

  double wronskian_at(double t) const;
};

// Solution of the auxiliary equation rho'' + Omega^2 rho = rho^-3 together
// with the accumulated phase integral tau(t) = integral dt' / rho^2.
struct ErmakovSolution {
  std::vector<double> mesh;
  HermiteSeries rho;
  HermiteSeries tau;
  std::vector<double> omega_sq;

  double rho_at(double t) const { return rho.eval(t); }
  double rhodot_at(double t) const { return rho.eval_deriv(t); }
  double tau_at(double t) const { return tau.eval(t); }

  // |rho'' + Omega^2 rho - rho^-3| at mesh index i, with rho'' from a
  // five/six-point finite-difference stencil on the stored mesh values.
  double residual_at(int i) const;
  double residual_max() const;
};

ClassicalPair integrate_classical(const OmegaSqFn& omega_sq, const std::vector<double>& mesh,
                                  double u0, double udot0, double v0, double vdot0);

// Pair seeded so that the Pinney combination reproduces the Ermakov solution
// with initial data (rho0, rhodot0) and Wronskian w.
ClassicalPair integrate_classical_for_pinney(const OmegaSqFn& omega_sq,
                                             const std::vector<double>& mesh, double rho0,
                                             double rhodot0, double w = 1.0);

// rho = sqrt(u^2 + v^2 / W^2); tau by per-interval Gauss quadrature.
ErmakovSolution pinney_compose(const ClassicalPair& pair);

ErmakovSolution integrate_ermakov_direct(const OmegaSqFn& omega_sq,
                                         const std::vector<double>& mesh, double rho0,
                                         double rhodot0);

// Geometric phase of mode (n1, n2): -(n1+1/2) tau1(t) - (n2+1/2) tau2(t).
double phase_alpha(const ErmakovSolution& rho1, const ErmakovSolution& rho2, int n1, int n2,
                   double t);

}  // namespace qosc
