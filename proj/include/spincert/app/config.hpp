#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spincert/noise.hpp"
#include "spincert/states.hpp"

namespace spincert::app {

enum class OutputFormat { json, csv };

OutputFormat format_from_name(const std::string& name);
const char* format_name(OutputFormat format);

// Declarative state description, parsed from the config file. `kind` is one
// of dicke, product, superposition, mixture, biseparable_random;
// superposition and mixture nest component specs.
struct StateSpec {
  std::string kind;
  int n_qubits = 0;
  int jz_twice = 0;
  std::vector<BlochAngles> bloch_angles;
  std::vector<StateSpec> components;
  std::vector<std::complex<double>> amplitudes;  // superposition coefficients
  std::vector<double> weights;                   // mixture weights
  int block_cap = 0;
  int n_components = 1;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

struct SweepSpec {
  std::vector<int> n_qubits;
  int jz_twice = 0;
  std::vector<double> dephasing{0.0};
  std::vector<double> bitflip{0.0};
  std::vector<std::uint64_t> shots{0};
};

struct OracleSpec {
  std::string mode = "violation";  // violation | partition-check | estimate-vs-exact
  int n_qubits = 6;
  int block_cap = 2;
  std::uint64_t trials = 1000;
  bool optimize = false;
  int max_n = 12;                    // partition-check sweep limit
  std::vector<double> dephasing;     // estimate-vs-exact grid
  std::vector<double> bitflip;
};

struct RunConfig {
  StateSpec state;
  NoiseModel noise;
  std::uint64_t shots = 0;  // 0 = exact moments
  std::uint64_t seed = 1;
  int dense_cap = 12;
  std::string output = "-";
  OutputFormat format = OutputFormat::json;
  bool format_explicit = false;  // set when a config key or flag chose the format
  bool bootstrap = false;
  std::optional<SweepSpec> sweep;
  std::optional<OracleSpec> oracle;
};

StateSpec state_spec_from_json(const nlohmann::json& j);
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

nlohmann::ordered_json state_spec_to_json(const StateSpec& spec);
// Resolved-config echo embedded into every report.
nlohmann::ordered_json config_to_json(const RunConfig& config);

Numerics numerics_for(const RunConfig& config);

// Recursive constructor dispatch. biseparable_random specs without their
// own seed use default_seed.
QubitEnsembleState build_state(const StateSpec& spec, std::uint64_t default_seed,
                               const Numerics& num);

}  // namespace spincert::app
