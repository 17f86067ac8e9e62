#include "hsr/scenario.h"

#include <cmath>

namespace hsr {

namespace {

void require(bool ok, std::string_view field, std::string_view rule) {
  if (!ok) {
    throw ConfigError(std::string(field) + ": " + std::string(rule));
  }
}

}  // namespace

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kProposed:
      return "proposed";
    case PolicyKind::kStaticCpa:
      return "cpa-static";
    case PolicyKind::kStaticWfpa:
      return "wfpa-static";
    case PolicyKind::kDynamicCpa:
      return "cpa-dynamic";
    case PolicyKind::kDynamicWfpa:
      return "wfpa-dynamic";
  }
  return "unknown";
}

PolicyKind parse_policy(std::string_view name) {
  for (PolicyKind kind : kAllPolicies) {
    if (policy_name(kind) == name) return kind;
  }
  throw ConfigError("policy: unknown policy '" + std::string(name) +
                    "' (expected proposed, cpa-static, wfpa-static, "
                    "cpa-dynamic or wfpa-dynamic)");
}

ScenarioConfig ScenarioConfig::defaults() {
  ScenarioConfig c;
  c.radio.noise_psd = dbm_to_watts(-174.0);
  c.radio.eta = c.derived_eta();
  c.set_uniform_traffic(20.0, 15.0);
  return c;
}

double ScenarioConfig::derived_eta() const {
  return radio.packet_bits / (geometry.slot_duration * radio.bandwidth);
}

void ScenarioConfig::set_uniform_traffic(double rate, double delay_bound) {
  traffic.arrival_rates.assign(traffic.num_services, rate);
  traffic.delay_bounds.assign(traffic.num_services, delay_bound);
}

void ScenarioConfig::validate() const {
  require(geometry.cell_radius > 0, "geometry.cell_radius", "must be > 0");
  require(geometry.rail_offset > 0, "geometry.rail_offset", "must be > 0");
  require(geometry.speed > 0, "geometry.speed", "must be > 0");
  require(geometry.slot_duration > 0, "geometry.slot_duration", "must be > 0");
  require(radio.bandwidth > 0, "radio.bandwidth", "must be > 0");
  require(radio.noise_psd > 0, "radio.noise_psd", "must be > 0");
  require(radio.pathloss_exponent >= 2, "radio.pathloss_exponent",
          "must be >= 2");
  require(radio.packet_bits > 0, "radio.packet_bits", "must be > 0");
  require(radio.power_max > 0, "radio.power_max", "must be > 0");
  const double eta = derived_eta();
  require(std::abs(radio.eta - eta) <= 1e-12 * eta, "radio.eta",
          "must equal packet_bits / (slot_duration * bandwidth)");

  require(traffic.num_services >= 1, "traffic.services", "must be >= 1");
  const auto k = static_cast<size_t>(traffic.num_services);
  require(traffic.arrival_rates.size() == k, "traffic.arrival_rate",
          "needs one value per service");
  require(traffic.delay_bounds.size() == k, "traffic.delay_bound",
          "needs one value per service");
  for (size_t i = 0; i < k; ++i) {
    require(traffic.arrival_rates[i] >= 0, "traffic.arrival_rate",
            "must be >= 0");
    require(traffic.delay_bounds[i] > 0, "traffic.delay_bound", "must be > 0");
  }
  require(traffic.power_avg > 0, "traffic.power_avg", "must be > 0");
  require(traffic.power_avg <= radio.power_max, "traffic.power_avg",
          "must not exceed radio.power_max");
  require(traffic.buffer_cap > 0, "traffic.buffer_cap", "must be > 0");

  require(omega >= 0, "control.omega", "must be >= 0");
  require(epsilon > 0, "control.epsilon", "must be > 0");
  require(horizon >= 1, "control.horizon", "must be >= 1");
  require(warmup >= 0 && warmup < horizon, "control.warmup",
          "must lie in [0, horizon)");
}

std::vector<double> ScenarioConfig::noise_trajectory() const {
  std::vector<double> n(static_cast<size_t>(horizon));
  for (int64_t t = 0; t < horizon; ++t) {
    n[t] = noise_equiv(distance_at(t, geometry), radio);
  }
  return n;
}

}  // namespace hsr
