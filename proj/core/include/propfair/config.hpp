#pragma once

#include <string>

#include "propfair/experiments.hpp"

namespace propfair {

// Parse the JSON experiment config. Validation failures throw ValidationError
// with a message naming the offending field (e.g. "weights[6]",
// "system.num_users").
ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Effective config (after CLI overrides) as JSON, written next to results so
// a run can be reproduced from its output directory alone.
std::string config_echo_json(const ExperimentConfig& config);

}  // namespace propfair
