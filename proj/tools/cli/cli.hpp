#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wgarch::cli {

constexpr int kExitSuccess = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitSimulation = 4;

/// Runs one command line (without the program name). Never throws: failures
/// are reported on `err` and mapped to an exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wgarch::cli
