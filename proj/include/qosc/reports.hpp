#pragma once

#include <string>

#include "qosc/scenario.hpp"

namespace qosc {

// The three front-end commands.  Each writes its artifacts under out_dir
// (created if missing) and returns a process exit code: 0 on success,
// 5 from cmd_verify when a tolerance check fails.  Everything else is
// reported by throwing the typed errors, which the driver maps to codes.
int cmd_derive(const Scenario& sc, const std::string& out_dir);
int cmd_solve(const Scenario& sc, const std::string& out_dir);
int cmd_verify(const Scenario& sc, const std::string& out_dir);

}  // namespace qosc
