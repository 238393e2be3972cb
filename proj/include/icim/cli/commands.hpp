#pragma once

#include <exception>
#include <string>
#include <vector>

#include "icim/cli/output_table.hpp"
#include "icim/cli/run_config.hpp"

namespace icim::cli {

enum class Mode { analytic, montecarlo, compare };

std::string to_string(Mode mode);

struct CommandResult {
  OutputTable table;
  // 0, or 3 when some rows carry a failed accuracy check (flag column = 1).
  int exit_code = 0;
};

std::vector<std::string> command_names();

/// Runs one of pmf, interferer-pmf, ici-cdf, mgf, outage, capacity,
/// fairness, power-savings. The table metadata carries the method, the
/// config fingerprint and the tool version; the config map is the full
/// effective configuration.
CommandResult run_command(const std::string& command, const RunConfig& cfg, Mode mode = Mode::analytic);

/// Process exit code for an exception escaping run_command: 2 for
/// configuration and domain errors, 3 for accuracy or divergence, 4 for
/// complexity, 1 otherwise.
int exit_code_for(const std::exception& e);
/// {"error": {"type", "exit_code", "message"}} as one JSON line.
std::string error_object(const std::exception& e);
/// Same shape for a partial result (exit 3): counts rows with flag = 1.
std::string partial_object(const OutputTable& t);

extern const char* const kToolVersion;

}  // namespace icim::cli
