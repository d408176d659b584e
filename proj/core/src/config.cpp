#include "propfair/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "propfair/errors.hpp"

namespace propfair {

namespace {

using nlohmann::json;

const json& require_field(const json& parent, const std::string& path,
                          const std::string& key) {
  if (!parent.is_object() || !parent.contains(key))
    throw ValidationError("config error at " + (path.empty() ? key : path + "." + key) +
                          ": missing required field");
  return parent.at(key);
}

double require_number(const json& parent, const std::string& path,
                      const std::string& key) {
  const json& value = require_field(parent, path, key);
  if (!value.is_number())
    throw ValidationError("config error at " + path + "." + key + ": expected a number");
  return value.get<double>();
}

int require_int(const json& parent, const std::string& path, const std::string& key) {
  const json& value = require_field(parent, path, key);
  if (!value.is_number_integer())
    throw ValidationError("config error at " + path + "." + key +
                          ": expected an integer");
  return value.get<int>();
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config error: invalid JSON: ") + e.what());
  }

  ExperimentConfig config;

  const json& system = require_field(root, "", "system");
  config.params.num_users = require_int(system, "system", "num_users");
  config.params.num_subcarriers = require_int(system, "system", "num_subcarriers");
  config.params.bandwidth_hz = require_number(system, "system", "bandwidth_hz");
  config.params.noise_density_w_per_hz = dbm_per_hz_to_w_per_hz(
      require_number(system, "system", "noise_density_dbm_per_hz"));
  config.params.total_power_w = require_number(system, "system", "total_power_w");
  config.params.validate();

  const json& channel = require_field(root, "", "channel");
  const json& taps = require_field(channel, "channel", "tap_powers_db");
  if (!taps.is_array() || taps.empty())
    throw ValidationError("config error at channel.tap_powers_db: expected a non-empty array");
  for (const json& tap : taps) {
    if (!tap.is_number())
      throw ValidationError("config error at channel.tap_powers_db: expected numbers");
    config.profile.relative_powers_db.push_back(tap.get<double>());
  }
  config.profile.validate();

  if (root.contains("weights")) {
    const json& weights = root.at("weights");
    if (!weights.is_array())
      throw ValidationError("config error at weights: expected an array");
    if (static_cast<int>(weights.size()) < config.params.num_users)
      throw ValidationError("config error at weights[" + std::to_string(weights.size()) +
                            "]: missing fairness weight for user " +
                            std::to_string(weights.size() + 1) + " (need " +
                            std::to_string(config.params.num_users) + " entries, got " +
                            std::to_string(weights.size()) + ")");
    if (static_cast<int>(weights.size()) > config.params.num_users)
      throw ValidationError("config error at weights: expected " +
                            std::to_string(config.params.num_users) + " entries, got " +
                            std::to_string(weights.size()));
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (!weights[k].is_number() || !(weights[k].get<double>() > 0.0))
        throw ValidationError("config error at weights[" + std::to_string(k) +
                              "]: must be a number > 0");
      config.weights.phi.push_back(weights[k].get<double>());
    }
  } else {
    config.weights = FairnessWeights::uniform(config.params.num_users);
  }

  config.power_sweep = {config.params.total_power_w};
  if (root.contains("experiment")) {
    const json& experiment = root.at("experiment");
    if (!experiment.is_object())
      throw ValidationError("config error at experiment: expected an object");
    if (experiment.contains("power_sweep_w")) {
      const json& sweep = experiment.at("power_sweep_w");
      if (!sweep.is_array() || sweep.empty())
        throw ValidationError(
            "config error at experiment.power_sweep_w: expected a non-empty array");
      config.power_sweep.clear();
      for (const json& p : sweep) {
        if (!p.is_number())
          throw ValidationError(
              "config error at experiment.power_sweep_w: expected numbers");
        config.power_sweep.push_back(p.get<double>());
      }
    }
    if (experiment.contains("methods")) {
      const json& methods = experiment.at("methods");
      if (!methods.is_array() || methods.empty())
        throw ValidationError(
            "config error at experiment.methods: expected a non-empty array");
      for (const json& m : methods) {
        if (!m.is_string())
          throw ValidationError("config error at experiment.methods: expected strings");
        config.methods.push_back(method_from_string(m.get<std::string>()));
      }
    }
    if (experiment.contains("trials"))
      config.trials = require_int(experiment, "experiment", "trials");
    if (experiment.contains("base_seed")) {
      const json& seed = experiment.at("base_seed");
      if (!seed.is_number_integer() || seed.get<long long>() < 0)
        throw ValidationError(
            "config error at experiment.base_seed: expected a non-negative integer");
      config.base_seed = seed.get<std::uint64_t>();
    }
    if (experiment.contains("delta_fraction"))
      config.delta_fraction = require_number(experiment, "experiment", "delta_fraction");
    if (experiment.contains("max_iterations"))
      config.max_iterations = require_int(experiment, "experiment", "max_iterations");
  }
  if (config.methods.empty()) config.methods = {Method::proposed};

  config.validate();
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config error: cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str());
}

std::string config_echo_json(const ExperimentConfig& config) {
  json root;
  root["system"] = {
      {"num_users", config.params.num_users},
      {"num_subcarriers", config.params.num_subcarriers},
      {"bandwidth_hz", config.params.bandwidth_hz},
      {"noise_density_dbm_per_hz",
       w_per_hz_to_dbm_per_hz(config.params.noise_density_w_per_hz)},
      {"total_power_w", config.params.total_power_w},
  };
  root["channel"] = {{"tap_powers_db", config.profile.relative_powers_db}};
  root["weights"] = config.weights.phi;
  std::vector<std::string> method_names;
  for (Method m : config.methods) method_names.push_back(to_string(m));
  root["experiment"] = {
      {"power_sweep_w", config.power_sweep},
      {"methods", method_names},
      {"trials", config.trials},
      {"base_seed", config.base_seed},
      {"delta_fraction", config.delta_fraction},
      {"max_iterations", config.max_iterations},
      {"literal_pseudocode", config.direction == TransferDirection::from_underserved},
  };
  return root.dump(2) + "\n";
}

}  // namespace propfair
