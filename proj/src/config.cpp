#include "spincert/app/config.hpp"

#include <cmath>
#include <fstream>

namespace spincert::app {

using nlohmann::json;
using nlohmann::ordered_json;

OutputFormat format_from_name(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw config_error("unknown format '" + name + "' (expected json or csv)");
}

const char* format_name(OutputFormat format) {
  return format == OutputFormat::json ? "json" : "csv";
}

namespace {

// Accepts either an explicit list or {"from", "to", "step"}.
std::vector<double> value_grid(const json& j, const std::string& key) {
  const json& node = j.at(key);
  std::vector<double> values;
  if (node.is_array()) {
    for (const auto& v : node) values.push_back(v.get<double>());
  } else if (node.is_object()) {
    const double from = node.at("from").get<double>();
    const double to = node.at("to").get<double>();
    const double step = node.at("step").get<double>();
    if (step <= 0.0) throw config_error("grid step for '" + key + "' must be positive");
    for (double v = from; v <= to + 0.5 * step; v += step) values.push_back(std::min(v, to));
  } else {
    values.push_back(node.get<double>());
  }
  if (values.empty()) throw config_error("grid '" + key + "' is empty");
  return values;
}

std::complex<double> complex_from_json(const json& node) {
  if (node.is_number()) return {node.get<double>(), 0.0};
  if (node.is_array() && node.size() == 2) {
    return {node.at(0).get<double>(), node.at(1).get<double>()};
  }
  throw config_error("amplitudes must be numbers or [re, im] pairs");
}

}  // namespace

StateSpec state_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw config_error("state spec must be an object with a 'kind' field");
  }
  StateSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  if (spec.kind == "dicke") {
    spec.n_qubits = j.at("n_qubits").get<int>();
    spec.jz_twice = j.value("jz_twice", 0);
  } else if (spec.kind == "product") {
    for (const auto& pair : j.at("bloch_angles")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw config_error("bloch_angles must be a list of [theta, phi] pairs");
      }
      spec.bloch_angles.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
    }
    spec.n_qubits = static_cast<int>(spec.bloch_angles.size());
  } else if (spec.kind == "superposition" || spec.kind == "mixture") {
    for (const auto& component : j.at("components")) {
      spec.components.push_back(state_spec_from_json(component));
    }
    if (spec.components.empty()) throw config_error(spec.kind + " needs components");
    if (spec.kind == "superposition") {
      if (j.contains("amplitudes")) {
        for (const auto& a : j.at("amplitudes")) spec.amplitudes.push_back(complex_from_json(a));
      } else {
        spec.amplitudes.assign(spec.components.size(), {1.0, 0.0});
      }
      if (spec.amplitudes.size() != spec.components.size()) {
        throw config_error("superposition needs one amplitude per component");
      }
    } else {
      if (j.contains("weights")) {
        for (const auto& w : j.at("weights")) spec.weights.push_back(w.get<double>());
      } else {
        spec.weights.assign(spec.components.size(), 1.0 / spec.components.size());
      }
      if (spec.weights.size() != spec.components.size()) {
        throw config_error("mixture needs one weight per component");
      }
    }
  } else if (spec.kind == "biseparable_random") {
    spec.n_qubits = j.at("n_qubits").get<int>();
    spec.block_cap = j.at("block_cap").get<int>();
    spec.n_components = j.value("n_components", 1);
    if (j.contains("seed")) {
      spec.seed = j.at("seed").get<std::uint64_t>();
      spec.has_seed = true;
    }
  } else {
    throw config_error("unknown state kind '" + spec.kind + "'");
  }
  return spec;
}

RunConfig parse_config(const json& j) {
  RunConfig config;
  if (j.contains("state")) config.state = state_spec_from_json(j.at("state"));
  if (j.contains("noise")) {
    const json& noise = j.at("noise");
    config.noise.dephasing_rate = noise.value("dephasing_rate", 0.0);
    config.noise.bitflip_rate = noise.value("bitflip_rate", 0.0);
  }
  config.shots = j.value("shots", std::uint64_t{0});
  config.seed = j.value("seed", std::uint64_t{1});
  config.dense_cap = j.value("dense_cap", 12);
  config.output = j.value("output", std::string("-"));
  config.format = format_from_name(j.value("format", std::string("json")));
  config.format_explicit = j.contains("format");
  config.bootstrap = j.value("bootstrap", false);

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    SweepSpec sweep;
    if (s.contains("n_qubits")) {
      if (s.at("n_qubits").is_array()) {
        for (const auto& n : s.at("n_qubits")) sweep.n_qubits.push_back(n.get<int>());
      } else {
        sweep.n_qubits.push_back(s.at("n_qubits").get<int>());
      }
    }
    if (sweep.n_qubits.empty()) throw config_error("sweep needs n_qubits");
    sweep.jz_twice = s.value("jz_twice", 0);
    if (s.contains("dephasing")) sweep.dephasing = value_grid(s, "dephasing");
    if (s.contains("bitflip")) sweep.bitflip = value_grid(s, "bitflip");
    if (s.contains("shots")) {
      sweep.shots.clear();
      if (s.at("shots").is_array()) {
        for (const auto& v : s.at("shots")) sweep.shots.push_back(v.get<std::uint64_t>());
      } else {
        sweep.shots.push_back(s.at("shots").get<std::uint64_t>());
      }
    }
    config.sweep = std::move(sweep);
  }

  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    OracleSpec oracle;
    oracle.mode = o.value("mode", std::string("violation"));
    if (oracle.mode != "violation" && oracle.mode != "partition-check" &&
        oracle.mode != "estimate-vs-exact") {
      throw config_error("unknown oracle mode '" + oracle.mode + "'");
    }
    oracle.n_qubits = o.value("n_qubits", 6);
    oracle.block_cap = o.value("block_cap", 2);
    oracle.trials = o.value("trials", std::uint64_t{1000});
    oracle.optimize = o.value("optimize", false);
    oracle.max_n = o.value("max_n", 12);
    if (o.contains("dephasing")) oracle.dephasing = value_grid(o, "dephasing");
    if (o.contains("bitflip")) oracle.bitflip = value_grid(o, "bitflip");
    config.oracle = std::move(oracle);
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw config_error("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

ordered_json state_spec_to_json(const StateSpec& spec) {
  ordered_json j;
  j["kind"] = spec.kind;
  if (spec.kind == "dicke") {
    j["n_qubits"] = spec.n_qubits;
    j["jz_twice"] = spec.jz_twice;
  } else if (spec.kind == "product") {
    ordered_json angles = ordered_json::array();
    for (const auto& a : spec.bloch_angles) angles.push_back({a.theta, a.phi});
    j["bloch_angles"] = std::move(angles);
  } else if (spec.kind == "superposition") {
    ordered_json components = ordered_json::array();
    for (const auto& c : spec.components) components.push_back(state_spec_to_json(c));
    j["components"] = std::move(components);
    ordered_json amplitudes = ordered_json::array();
    for (const auto& a : spec.amplitudes) amplitudes.push_back({a.real(), a.imag()});
    j["amplitudes"] = std::move(amplitudes);
  } else if (spec.kind == "mixture") {
    ordered_json components = ordered_json::array();
    for (const auto& c : spec.components) components.push_back(state_spec_to_json(c));
    j["components"] = std::move(components);
    j["weights"] = spec.weights;
  } else if (spec.kind == "biseparable_random") {
    j["n_qubits"] = spec.n_qubits;
    j["block_cap"] = spec.block_cap;
    j["n_components"] = spec.n_components;
    if (spec.has_seed) j["seed"] = spec.seed;
  }
  return j;
}

ordered_json config_to_json(const RunConfig& config) {
  ordered_json j;
  if (!config.state.kind.empty()) j["state"] = state_spec_to_json(config.state);
  j["noise"] = {{"dephasing_rate", config.noise.dephasing_rate},
                {"bitflip_rate", config.noise.bitflip_rate}};
  j["shots"] = config.shots;
  j["seed"] = config.seed;
  j["dense_cap"] = config.dense_cap;
  j["format"] = format_name(config.format);
  j["bootstrap"] = config.bootstrap;
  return j;
}

Numerics numerics_for(const RunConfig& config) {
  Numerics num = default_numerics();
  if (config.dense_cap < 1) throw config_error("dense_cap must be positive");
  num.dense_cap = config.dense_cap;
  return num;
}

QubitEnsembleState build_state(const StateSpec& spec, std::uint64_t default_seed,
                               const Numerics& num) {
  if (spec.kind == "dicke") {
    return make_dicke(spec.n_qubits, spec.jz_twice);
  }
  if (spec.kind == "product") {
    return make_product(spec.bloch_angles, num);
  }
  if (spec.kind == "superposition") {
    std::vector<std::pair<std::complex<double>, QubitEnsembleState>> terms;
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
      terms.emplace_back(spec.amplitudes[i], build_state(spec.components[i], default_seed, num));
    }
    return make_superposition(terms, num);
  }
  if (spec.kind == "mixture") {
    std::vector<std::pair<double, QubitEnsembleState>> parts;
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
      parts.emplace_back(spec.weights[i], build_state(spec.components[i], default_seed, num));
    }
    return make_mixture(parts, num);
  }
  if (spec.kind == "biseparable_random") {
    const std::uint64_t seed = spec.has_seed ? spec.seed : default_seed;
    return make_biseparable_random(spec.n_qubits, spec.block_cap, spec.n_components, seed, num);
  }
  throw config_error(spec.kind.empty() ? "no state specified"
                                       : "unknown state kind '" + spec.kind + "'");
}

}  // namespace spincert::app
