#include "mmnet/config_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mmnet {
namespace {

using nlohmann::json;

double parse_gain(const json& j, const std::string& key) {
  if (!j.is_object()) {
    throw ConfigError(key + ": expected {\"db\": x} or {\"linear\": y}");
  }
  const bool has_db = j.contains("db");
  const bool has_linear = j.contains("linear");
  if (has_db == has_linear) {
    throw ConfigError(key + ": give exactly one of \"db\" or \"linear\"");
  }
  for (const auto& item : j.items()) {
    if (item.key() != "db" && item.key() != "linear") {
      throw ConfigError(key + ": unknown key \"" + item.key() + "\"");
    }
  }
  const json& v = has_db ? j.at("db") : j.at("linear");
  if (!v.is_number()) throw ConfigError(key + ": gain must be a number");
  return has_db ? db_to_linear(v.get<double>()) : v.get<double>();
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key + ": expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError(key + ": expected an integer");
  return j.get<int>();
}

void apply_beam(const json& j, BeamPattern& beam) {
  if (!j.is_object()) throw ConfigError("beam: expected an object");
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    const json& v = item.value();
    if (key == "main_gain_ap") {
      beam.main_gain_ap = parse_gain(v, key);
    } else if (key == "side_gain_ap") {
      beam.side_gain_ap = parse_gain(v, key);
    } else if (key == "main_gain_user") {
      beam.main_gain_user = parse_gain(v, key);
    } else if (key == "side_gain_user") {
      beam.side_gain_user = parse_gain(v, key);
    } else if (key == "main_width_ap_deg") {
      beam.main_width_ap = deg_to_rad(number(v, key));
    } else if (key == "main_width_user_deg") {
      beam.main_width_user = deg_to_rad(number(v, key));
    } else {
      throw ConfigError("beam: unknown key \"" + key + "\"");
    }
  }
}

}  // namespace

NetworkParams parse_params_json(const std::string& text) {
  NetworkParams p = paper_defaults();
  bool blank = true;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
      break;
    }
  }
  if (blank) return p;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  for (const auto& item : root.items()) {
    const std::string& key = item.key();
    const json& v = item.value();
    if (key == "beam") {
      apply_beam(v, p.beam);
    } else if (key == "k") {
      p.k = integer(v, key);
    } else if (key == "psi") {
      p.psi = number(v, key);
    } else if (key == "lambda_user") {
      p.lambda_user = number(v, key);
    } else if (key == "r_los_km") {
      p.r_los = number(v, key);
    } else if (key == "alpha_los") {
      p.alpha_los = number(v, key);
    } else if (key == "mu") {
      p.mu = integer(v, key);
    } else if (key == "bandwidth_hz") {
      p.bandwidth_total = number(v, key);
    } else if (key == "bias_factor") {
      p.bias_factor = number(v, key);
    } else {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
  }
  const auto issues = validate(p);
  if (!issues.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& s : issues) msg += " " + s + ";";
    throw ConfigError(msg);
  }
  return p;
}

NetworkParams load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_params_json(buf.str());
}

std::string params_to_json(const NetworkParams& params) {
  json beam = {
      {"main_gain_ap", {{"db", linear_to_db(params.beam.main_gain_ap)}}},
      {"side_gain_ap", {{"db", linear_to_db(params.beam.side_gain_ap)}}},
      {"main_gain_user", {{"db", linear_to_db(params.beam.main_gain_user)}}},
      {"side_gain_user", {{"db", linear_to_db(params.beam.side_gain_user)}}},
      {"main_width_ap_deg", rad_to_deg(params.beam.main_width_ap)},
      {"main_width_user_deg", rad_to_deg(params.beam.main_width_user)},
  };
  json root = {
      {"beam", beam},
      {"k", params.k},
      {"psi", params.psi},
      {"lambda_user", params.lambda_user},
      {"r_los_km", params.r_los},
      {"alpha_los", params.alpha_los},
      {"mu", params.mu},
      {"bandwidth_hz", params.bandwidth_total},
      {"bias_factor", params.bias_factor},
  };
  return root.dump(2) + "\n";
}

}  // namespace mmnet
