#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qosc/grid.hpp"
#include "qosc/schedule.hpp"
#include "qosc/wavefunction.hpp"

namespace qosc {

struct TimeWindow {
  double t0 = 0;
  double t1 = 1;
  double dt = 1e-3;        // propagation step
  int output_points = 11;  // uniform report times in [t0, t1]
  int mesh_points = 129;   // parameter-table and mixing-angle mesh
};

// Per-check tolerances; every key can be tightened or loosened from the
// command line with --tol-override key=value.
struct ToleranceSet {
  double theta_constancy = 1e-8;
  double closed_vs_pipeline = 1e-8;
  double oracle_fidelity = 1e-5;  // allowed deficit, pass iff F >= 1 - this
  double schrodinger_residual = 1e-4;
  double invariant_drift = 1e-5;
  double ermakov_residual = 1e-6;
  double norm = 1e-6;  // propagation norm-drift abort threshold
};

struct Scenario {
  std::string name;
  ParameterSchedule sched;
  GridSpec grid;
  TimeWindow time;
  std::vector<std::pair<int, int>> modes;
  bool mixing_angle_auto = true;  // solve for theta; otherwise use the fixed value
  double mixing_angle = 0;
  CoeffVariant variant = CoeffVariant::derived;
  ToleranceSet tol;
};

// Parses and validates a scenario file.  Throws ConfigError with the
// offending field in the message.
Scenario load_scenario(const std::string& path);

// "key=value" with key naming a ToleranceSet field.
void apply_tol_override(Scenario& sc, const std::string& spec);

std::vector<double> output_times(const Scenario& sc);
std::vector<double> param_mesh(const Scenario& sc);

}  // namespace qosc
