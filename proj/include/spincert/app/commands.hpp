#pragma once

#include <string>

#include <json.hpp>

#include "spincert/app/config.hpp"

namespace spincert::app {

// Exit codes shared by the library-level commands and the CLI front end.
enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_config_error = 2,
  exit_parse_error = 3,
  exit_size_error = 4,
  exit_violation = 5,
};

struct CommandResult {
  nlohmann::ordered_json report;
  std::string rendered;
  int exit_code = exit_ok;
};

// Build state -> apply noise -> moments (exact or sampled) -> certificate.
CommandResult cmd_certify(const RunConfig& config);

// Ingest a measurement CSV -> estimate moments -> certificate flagged as
// estimate-based. n_qubits_hint = 0 defers to the file's declaration.
CommandResult cmd_certify_data(const RunConfig& config, const std::string& csv_path,
                               int n_qubits_hint);

// One row per (n_qubits, dephasing, bitflip, shots) grid point.
CommandResult cmd_sweep(const RunConfig& config);

// Dispatches on config.oracle->mode; violations yield a nonzero exit code.
CommandResult cmd_oracle(const RunConfig& config);

// "-" writes to stdout.
void write_result(const CommandResult& result, const std::string& output);

}  // namespace spincert::app
