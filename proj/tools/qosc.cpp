#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qosc/errors.hpp"
#include "qosc/reports.hpp"
#include "qosc/scenario.hpp"

namespace {

// Exit codes: 0 pass, 1 config error, 2 mixing-angle constancy failure,
// 3 parameter-domain failure, 4 missing/corrupt artifact, 5 verification
// failure.
int run(const std::string& command, const std::string& scenario_path, const std::string& out_dir,
        const std::vector<std::string>& overrides) {
  qosc::Scenario sc = qosc::load_scenario(scenario_path);
  for (const std::string& o : overrides) qosc::apply_tol_override(sc, o);
  if (command == "derive") return qosc::cmd_derive(sc, out_dir);
  if (command == "solve") return qosc::cmd_solve(sc, out_dir);
  return qosc::cmd_verify(sc, out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"driven charged-particle oscillator workbench"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir;
  std::vector<std::string> overrides;
  const char* descriptions[3] = {"evaluate the transformed-frame parameter table",
                                 "build closed-form and pipeline states with dumps",
                                 "propagate, check residuals and tolerances"};
  const char* names[3] = {"derive", "solve", "verify"};
  for (int i = 0; i < 3; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
    sub->add_option("--scenario", scenario_path, "scenario file (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--tol-override", overrides, "tolerance override key=value (repeatable)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, scenario_path, out_dir, overrides);
  } catch (const qosc::ThetaNotConstant& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qosc::ArtifactError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const qosc::NonpositiveMass& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const qosc::NegativeRadicand& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const qosc::RhoNonPositive& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const qosc::StepSizeUnderflow& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const qosc::StabilityViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const qosc::NormDrift& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const qosc::SupportClipped& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const qosc::DegenerateFrequencies& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
