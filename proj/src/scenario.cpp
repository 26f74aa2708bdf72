#include "qosc/scenario.hpp"

#include <cfloat>
#include <cmath>
#include <fstream>

#include "json.hpp"

#include "qosc/errors.hpp"

namespace qosc {
namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError("missing or non-numeric field '" + key + "'");
  return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError("non-numeric field '" + key + "'");
  return j[key].get<double>();
}

int integer_or(const json& j, const std::string& key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ConfigError("non-integer field '" + key + "'");
  return j[key].get<int>();
}

Schedule parse_schedule(const json& j, const std::string& name) {
  if (j.is_number()) return Schedule::constant(j.get<double>());
  if (!j.is_object() || !j.contains("family"))
    throw ConfigError("schedule '" + name + "' must be a number or an object with 'family'");
  const std::string family = j["family"].get<std::string>();
  if (family == "constant") return Schedule::constant(require_number(j, "value"));
  if (family == "linear")
    return Schedule::linear(number_or(j, "offset", 0.0), require_number(j, "slope"));
  if (family == "sinusoidal")
    return Schedule::sinusoidal(number_or(j, "offset", 0.0), require_number(j, "amplitude"),
                                require_number(j, "omega"), number_or(j, "phase", 0.0));
  if (family == "exponential")
    return Schedule::exponential(number_or(j, "offset", 0.0), require_number(j, "amplitude"),
                                 require_number(j, "rate"));
  if (family == "table") {
    if (!j.contains("times") || !j.contains("values"))
      throw ConfigError("table schedule '" + name + "' needs 'times' and 'values'");
    auto times = j["times"].get<std::vector<double>>();
    auto values = j["values"].get<std::vector<double>>();
    return Schedule::table(std::move(times), std::move(values));
  }
  throw ConfigError("schedule '" + name + "' has unknown family '" + family + "'");
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("scenario parse error in '" + path + "': " + e.what());
  }

  try {
    Scenario sc;
    sc.name = j.value("name", std::string("unnamed"));

    if (!j.contains("schedules") || !j["schedules"].is_object())
      throw ConfigError("missing 'schedules' section");
    const json& sj = j["schedules"];
    sc.sched.mass = parse_schedule(sj.at("mass"), "mass");
    sc.sched.trap_frequency = parse_schedule(sj.at("trap_frequency"), "trap_frequency");
    sc.sched.field = parse_schedule(sj.at("field"), "field");
    sc.sched.static_coupling = parse_schedule(sj.at("static_coupling"), "static_coupling");
    sc.sched.dynamic_coupling = parse_schedule(sj.at("dynamic_coupling"), "dynamic_coupling");
    sc.sched.charge = number_or(j, "charge", 1.0);
    sc.sched.hbar = number_or(j, "hbar", 1.0);
    if (sc.sched.hbar <= 0) throw ConfigError("'hbar' must be positive");

    if (!j.contains("grid") || !j["grid"].is_object()) throw ConfigError("missing 'grid' section");
    const json& gj = j["grid"];
    sc.grid.nx = integer_or(gj, "nx", 0);
    sc.grid.ny = integer_or(gj, "ny", 0);
    sc.grid.x_min = require_number(gj, "x_min");
    sc.grid.x_max = require_number(gj, "x_max");
    sc.grid.y_min = require_number(gj, "y_min");
    sc.grid.y_max = require_number(gj, "y_max");
    if (sc.grid.nx <= 0 || sc.grid.ny <= 0) throw ConfigError("grid nx/ny must be positive");
    if (sc.grid.x_max <= sc.grid.x_min || sc.grid.y_max <= sc.grid.y_min)
      throw ConfigError("grid extents must be increasing");

    if (!j.contains("time") || !j["time"].is_object()) throw ConfigError("missing 'time' section");
    const json& tj = j["time"];
    sc.time.t0 = number_or(tj, "t0", 0.0);
    sc.time.t1 = require_number(tj, "t1");
    sc.time.dt = require_number(tj, "dt");
    sc.time.output_points = integer_or(tj, "output_points", 11);
    sc.time.mesh_points = integer_or(tj, "mesh_points", 129);
    if (!(sc.time.t1 > sc.time.t0)) throw ConfigError("'t1' must exceed 't0'");
    if (!(sc.time.dt > 0)) throw ConfigError("'dt' must be positive");
    if (sc.time.output_points < 2) throw ConfigError("'output_points' must be at least 2");
    if (sc.time.mesh_points < 2) throw ConfigError("'mesh_points' must be at least 2");
    sc.sched.start_time = sc.time.t0;

    if (j.contains("modes")) {
      for (const auto& m : j["modes"]) {
        if (!m.is_array() || m.size() != 2)
          throw ConfigError("'modes' entries must be [n1, n2] pairs");
        const int n1 = m[0].get<int>(), n2 = m[1].get<int>();
        if (n1 < 0 || n2 < 0) throw ConfigError("mode indices must be nonnegative");
        if (n1 > 64 || n2 > 64) throw ConfigError("mode indices above 64 are not supported");
        sc.modes.emplace_back(n1, n2);
      }
    }

    if (j.contains("mixing_angle")) {
      const json& mj = j["mixing_angle"];
      if (mj.is_string()) {
        if (mj.get<std::string>() != "auto")
          throw ConfigError("'mixing_angle' must be a number or \"auto\"");
        sc.mixing_angle_auto = true;
      } else if (mj.is_number()) {
        sc.mixing_angle_auto = false;
        sc.mixing_angle = mj.get<double>();
      } else {
        throw ConfigError("'mixing_angle' must be a number or \"auto\"");
      }
    }

    if (j.contains("variant")) {
      const std::string v = j["variant"].get<std::string>();
      if (v == "derived")
        sc.variant = CoeffVariant::derived;
      else if (v == "printed")
        sc.variant = CoeffVariant::printed;
      else
        throw ConfigError("'variant' must be \"derived\" or \"printed\"");
    }

    if (j.contains("tolerances")) {
      const json& oj = j["tolerances"];
      if (!oj.is_object()) throw ConfigError("'tolerances' must be an object");
      for (auto it = oj.begin(); it != oj.end(); ++it) {
        if (!it.value().is_number()) throw ConfigError("tolerance '" + it.key() + "' not numeric");
        apply_tol_override(sc, it.key() + "=" + std::to_string(it.value().get<double>()));
      }
    }
    return sc;
  } catch (const json::exception& e) {
    throw ConfigError("scenario schema error in '" + path + "': " + e.what());
  }
}

void apply_tol_override(Scenario& sc, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw ConfigError("tolerance override needs key=value: " + spec);
  const std::string key = spec.substr(0, eq);
  double value = 0;
  try {
    value = std::stod(spec.substr(eq + 1));
  } catch (const std::exception&) {
    throw ConfigError("tolerance override value not numeric: " + spec);
  }
  if (!(value >= DBL_EPSILON))
    throw ConfigError("tolerance '" + key + "' must be at least machine epsilon");

  ToleranceSet& t = sc.tol;
  if (key == "theta_constancy")
    t.theta_constancy = value;
  else if (key == "closed_vs_pipeline")
    t.closed_vs_pipeline = value;
  else if (key == "oracle_fidelity")
    t.oracle_fidelity = value;
  else if (key == "schrodinger_residual")
    t.schrodinger_residual = value;
  else if (key == "invariant_drift")
    t.invariant_drift = value;
  else if (key == "ermakov_residual")
    t.ermakov_residual = value;
  else if (key == "norm")
    t.norm = value;
  else
    throw ConfigError("unknown tolerance key '" + key + "'");
}

std::vector<double> output_times(const Scenario& sc) {
  std::vector<double> times(sc.time.output_points);
  for (int i = 0; i < sc.time.output_points; ++i)
    times[i] = sc.time.t0 + (sc.time.t1 - sc.time.t0) * i / (sc.time.output_points - 1);
  return times;
}

std::vector<double> param_mesh(const Scenario& sc) {
  std::vector<double> times(sc.time.mesh_points);
  for (int i = 0; i < sc.time.mesh_points; ++i)
    times[i] = sc.time.t0 + (sc.time.t1 - sc.time.t0) * i / (sc.time.mesh_points - 1);
  return times;
}

}  // namespace qosc
