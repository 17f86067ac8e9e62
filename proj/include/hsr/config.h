#ifndef HSR_CONFIG_H_
#define HSR_CONFIG_H_

#include <filesystem>
#include <istream>
#include <string>

#include "hsr/scenario.h"

namespace hsr {

// Scenario files are INI-style:
//
//   [geometry]  cell_radius_m, rail_offset_m, speed_kmh, slot_duration_s
//   [radio]     bandwidth_hz, noise_psd_dbm_hz (or noise_psd_w_hz),
//               pathloss_exponent, packet_bits, eta, power_max_w
//   [traffic]   services, arrival_rate, delay_bound_slots, power_avg_w,
//               buffer_cap
//   [control]   omega, epsilon, horizon, seed, policy, warmup
//
// arrival_rate and delay_bound_slots take one value for every service or a
// comma-separated list of K values. Omitted keys keep their defaults; eta is
// always derived from L / (Ts B) and an explicit value must agree with it.
// Unknown sections or keys are errors. All failures throw ConfigError.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_string(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Inverse of parse_config, full precision.
std::string format_config(const ScenarioConfig& config);

}  // namespace hsr

#endif  // HSR_CONFIG_H_
