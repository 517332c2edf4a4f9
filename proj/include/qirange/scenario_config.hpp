#pragma once

// Flat JSON scenario file. Every field is optional; omitted fields take the
// reference system parameters. Unknown keys are rejected.
//
//   {"sigma_m2": 1, "aperture_m2": 0.5, "bandwidth_hz": 1e9, "tau_s": 1,
//    "noise_power_dbm": -63.82, "snr_min_db": 10, "p_d": 0.7, "p_fa": 1e-6,
//    "frequencies_hz": [7e9, 95e9, 1e12], "attenuation_table_path": null,
//    "four_pi_exponent": 2, "constants": "reference"}

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include "qirange/atmosphere.hpp"
#include "qirange/error.hpp"
#include "qirange/range_solver.hpp"

namespace qirange {

struct ScenarioConfig {
  double sigma_m2 = 1.0;
  double aperture_m2 = 0.5;
  double bandwidth_hz = 1e9;
  double tau_s = 1.0;
  double noise_power_dbm = -63.82;
  double snr_min_db = 10.0;
  double p_d = 0.7;
  double p_fa = 1e-6;
  std::vector<double> frequencies_hz{7e9, 95e9, 1e12};
  std::optional<std::string> attenuation_table_path;
  int four_pi_exponent = 2;
  std::string constants = "reference";  // "reference" | "codata"

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;

  void validate() const {
    detail::require_positive(sigma_m2, "sigma_m2");
    detail::require_positive(aperture_m2, "aperture_m2");
    detail::require_positive(bandwidth_hz, "bandwidth_hz");
    detail::require_positive(tau_s, "tau_s");
    if (!std::isfinite(noise_power_dbm)) throw DomainError("noise_power_dbm must be finite");
    DetectionSpec{p_d, p_fa, snr_min_db}.validate();
    if (frequencies_hz.empty()) throw DomainError("frequencies_hz must not be empty");
    for (const double f : frequencies_hz) detail::require_positive(f, "frequencies_hz entry");
    four_pi_power(four_pi_exponent);
    physical_constants();
  }

  PhysicalConstants physical_constants() const {
    if (constants == "reference") return PhysicalConstants::reference();
    if (constants == "codata") return PhysicalConstants::codata();
    throw DomainError("constants must be \"reference\" or \"codata\", got \"" + constants + "\"");
  }

  std::vector<Frequency> frequencies() const {
    std::vector<Frequency> out;
    for (const double f : frequencies_hz) out.push_back(Frequency{f});
    return out;
  }

  Scenario to_scenario() const {
    validate();
    Scenario s;
    s.radar = {sigma_m2, aperture_m2};
    s.detection = {p_d, p_fa, snr_min_db};
    s.integration = {tau_s};
    s.bandwidth = Bandwidth{bandwidth_hz};
    s.noise_power = Power::from_dbm(noise_power_dbm);
    if (attenuation_table_path) s.attenuation = load_table_file(*attenuation_table_path);
    s.four_pi_exponent = four_pi_exponent;
    s.constants = physical_constants();
    return s;
  }
};

inline nlohmann::json to_json(const ScenarioConfig& c) {
  nlohmann::json j;
  j["sigma_m2"] = c.sigma_m2;
  j["aperture_m2"] = c.aperture_m2;
  j["bandwidth_hz"] = c.bandwidth_hz;
  j["tau_s"] = c.tau_s;
  j["noise_power_dbm"] = c.noise_power_dbm;
  j["snr_min_db"] = c.snr_min_db;
  j["p_d"] = c.p_d;
  j["p_fa"] = c.p_fa;
  j["frequencies_hz"] = c.frequencies_hz;
  j["attenuation_table_path"] = c.attenuation_table_path ? nlohmann::json(*c.attenuation_table_path) : nlohmann::json();
  j["four_pi_exponent"] = c.four_pi_exponent;
  j["constants"] = c.constants;
  return j;
}

/// Relative table paths resolve against `base_dir`.
inline ScenarioConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) throw ParseError("scenario config must be a JSON object");
  static const std::set<std::string> known{"sigma_m2",   "aperture_m2", "bandwidth_hz",   "tau_s",
                                           "noise_power_dbm", "snr_min_db", "p_d",         "p_fa",
                                           "frequencies_hz", "attenuation_table_path", "four_pi_exponent",
                                           "constants"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ParseError("unknown scenario config field '" + key + "'");
  }
  ScenarioConfig c;
  const auto number = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
    out = j[key].get<double>();
  };
  try {
    number("sigma_m2", c.sigma_m2);
    number("aperture_m2", c.aperture_m2);
    number("bandwidth_hz", c.bandwidth_hz);
    number("tau_s", c.tau_s);
    number("noise_power_dbm", c.noise_power_dbm);
    number("snr_min_db", c.snr_min_db);
    number("p_d", c.p_d);
    number("p_fa", c.p_fa);
    if (j.contains("frequencies_hz")) c.frequencies_hz = j["frequencies_hz"].get<std::vector<double>>();
    if (j.contains("attenuation_table_path") && !j["attenuation_table_path"].is_null()) {
      std::filesystem::path p = j["attenuation_table_path"].get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      c.attenuation_table_path = p.lexically_normal().string();
    }
    if (j.contains("four_pi_exponent")) c.four_pi_exponent = j["four_pi_exponent"].get<int>();
    if (j.contains("constants")) c.constants = j["constants"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario config: ") + e.what());
  }
  c.validate();
  return c;
}

inline ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("config '" + path + "': " + e.what());
  }
  return config_from_json(j, std::filesystem::path(path).parent_path());
}

}  // namespace qirange
