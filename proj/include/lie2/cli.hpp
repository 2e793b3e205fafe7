#pragma once

#include "lie2/io.hpp"
#include "lie2/report.hpp"

namespace lie2 {
namespace cli {

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  GridSpec grid;
  Real tol = 0.0;  // 0: per-check defaults
  uint64_t seed = 42;
  OutputFormat format = OutputFormat::Human;
};

struct RunResult {
  Report report;
  std::string dump;  // extra value dumps appended after the report
  int exit_code = 0; // 0 pass, 1 check failure, 2 input error
};

/// Executes one command; input errors are reported in-band with exit code 2.
RunResult run_command(const RunConfig& cfg);

}  // namespace cli
}  // namespace lie2
