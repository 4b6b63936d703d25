#pragma once

#include <stdexcept>
#include <string>

#include "mmnet/params.hpp"

namespace mmnet {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Loads scenario parameters from a JSON file. Every field is optional and
// overrides the defaults; an empty file yields the defaults. Gains are
// given as {"db": x} or {"linear": y}; angles in degrees; distances in km.
// Unknown keys and malformed values raise ConfigError.
NetworkParams load_params_file(const std::string& path);
NetworkParams parse_params_json(const std::string& text);

// Serializes parameters to the same schema (gains in dB, angles in degrees).
std::string params_to_json(const NetworkParams& params);

}  // namespace mmnet
