#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "spincert/app/commands.hpp"
#include "spincert/app/report.hpp"

namespace {

using namespace spincert;
using namespace spincert::app;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
  std::optional<int> dense_cap;
  std::optional<std::string> out;
  std::optional<std::string> format;
  bool bootstrap = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--seed", flags.seed, "Master seed (overrides config)");
  cmd->add_option("--shots", flags.shots, "Shots per axis, 0 = exact moments");
  cmd->add_option("--dense-cap", flags.dense_cap, "Largest N for dense 2^N work");
  cmd->add_option("--out", flags.out, "Report path, '-' = stdout");
  cmd->add_option("--format", flags.format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--bootstrap", flags.bootstrap, "Add bootstrap error cross-check");
}

// Config file first, then flags on top.
RunConfig resolve_config(const CommonFlags& flags) {
  RunConfig config;
  if (!flags.config_path.empty()) config = load_config(flags.config_path);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.shots) config.shots = *flags.shots;
  if (flags.dense_cap) config.dense_cap = *flags.dense_cap;
  if (flags.out) config.output = *flags.out;
  if (flags.format) {
    config.format = format_from_name(*flags.format);
    config.format_explicit = true;
  }
  if (flags.bootstrap) config.bootstrap = true;
  return config;
}

int run(int argc, char** argv) {
  CLI::App app{"Collective-spin entanglement-depth certification toolkit"};
  app.require_subcommand(1);

  CommonFlags certify_flags;
  std::optional<int> dicke_n;
  std::optional<int> dicke_jz;
  std::optional<double> flag_dephasing;
  std::optional<double> flag_bitflip;
  auto* certify = app.add_subcommand("certify", "Certify entanglement depth of a modeled state");
  add_common_flags(certify, certify_flags);
  certify->add_option("--dicke", dicke_n, "Shortcut: Dicke state with N qubits");
  certify->add_option("--jz-twice", dicke_jz, "Dicke level as 2*Jz (with --dicke)");
  certify->add_option("--dephasing", flag_dephasing, "Per-qubit dephasing rate");
  certify->add_option("--bitflip", flag_bitflip, "Per-qubit bit-flip rate");

  CommonFlags data_flags;
  std::string csv_path;
  int data_n_qubits = 0;
  auto* certify_data =
      app.add_subcommand("certify-data", "Certify from a measurement CSV file");
  add_common_flags(certify_data, data_flags);
  certify_data->add_option("csv", csv_path, "Measurement records (axis,outcome,count)")
      ->required();
  certify_data->add_option("--n-qubits", data_n_qubits,
                           "Qubit count (defaults to the file's declaration)");

  CommonFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "Tabulate xi / depth over a noise grid");
  add_common_flags(sweep, sweep_flags);

  CommonFlags oracle_flags;
  std::optional<std::string> oracle_mode;
  std::optional<int> oracle_n;
  std::optional<int> oracle_cap;
  std::optional<std::uint64_t> oracle_trials;
  bool oracle_optimize = false;
  std::optional<int> oracle_max_n;
  auto* oracle = app.add_subcommand("oracle", "Brute-force validation of the depth bounds");
  add_common_flags(oracle, oracle_flags);
  oracle->add_option("--mode", oracle_mode, "violation | partition-check | estimate-vs-exact")
      ->check(CLI::IsMember({"violation", "partition-check", "estimate-vs-exact"}));
  oracle->add_option("--n-qubits", oracle_n, "System size");
  oracle->add_option("--block-cap", oracle_cap, "Largest block size m0 (= N for sanity mode)");
  oracle->add_option("--trials", oracle_trials, "Sampled states");
  oracle->add_flag("--optimize", oracle_optimize, "Hill-climb the best sample");
  oracle->add_option("--max-n", oracle_max_n, "partition-check sweep limit");

  CLI11_PARSE(app, argc, argv);

  CommandResult result;
  if (certify->parsed()) {
    RunConfig config = resolve_config(certify_flags);
    if (dicke_n) {
      config.state = StateSpec{};
      config.state.kind = "dicke";
      config.state.n_qubits = *dicke_n;
      config.state.jz_twice = dicke_jz.value_or(0);
    } else if (dicke_jz) {
      throw config_error("--jz-twice needs --dicke");
    }
    if (flag_dephasing) config.noise.dephasing_rate = *flag_dephasing;
    if (flag_bitflip) config.noise.bitflip_rate = *flag_bitflip;
    result = cmd_certify(config);
    write_result(result, config.output);
  } else if (certify_data->parsed()) {
    RunConfig config = resolve_config(data_flags);
    result = cmd_certify_data(config, csv_path, data_n_qubits);
    write_result(result, config.output);
  } else if (sweep->parsed()) {
    RunConfig config = resolve_config(sweep_flags);
    if (!config.format_explicit) config.format = OutputFormat::csv;  // sweeps are tables
    result = cmd_sweep(config);
    write_result(result, config.output);
  } else if (oracle->parsed()) {
    RunConfig config = resolve_config(oracle_flags);
    if (!config.oracle) config.oracle = OracleSpec{};
    if (oracle_mode) config.oracle->mode = *oracle_mode;
    if (oracle_n) config.oracle->n_qubits = *oracle_n;
    if (oracle_cap) config.oracle->block_cap = *oracle_cap;
    if (oracle_trials) config.oracle->trials = *oracle_trials;
    if (oracle_optimize) config.oracle->optimize = true;
    if (oracle_max_n) config.oracle->max_n = *oracle_max_n;
    result = cmd_oracle(config);
    write_result(result, config.output);
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const spincert::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return spincert::app::exit_config_error;
  } catch (const spincert::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return spincert::app::exit_config_error;
  } catch (const spincert::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return spincert::app::exit_parse_error;
  } catch (const spincert::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return spincert::app::exit_parse_error;
  } catch (const spincert::size_error& e) {
    std::cerr << "size error: " << e.what() << "\n";
    return spincert::app::exit_size_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return spincert::app::exit_failure;
  }
}
