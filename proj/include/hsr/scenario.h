#ifndef HSR_SCENARIO_H_
#define HSR_SCENARIO_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hsr/channel.h"
#include "hsr/queues.h"

namespace hsr {

enum class PolicyKind {
  kProposed,
  kStaticCpa,
  kStaticWfpa,
  kDynamicCpa,
  kDynamicWfpa,
};

inline constexpr PolicyKind kAllPolicies[] = {
    PolicyKind::kProposed,   PolicyKind::kStaticCpa,
    PolicyKind::kStaticWfpa, PolicyKind::kDynamicCpa,
    PolicyKind::kDynamicWfpa,
};

// proposed | cpa-static | wfpa-static | cpa-dynamic | wfpa-dynamic
std::string_view policy_name(PolicyKind kind);
PolicyKind parse_policy(std::string_view name);

// Invalid configuration; what() names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  Geometry geometry;
  RadioParams radio;
  TrafficParams traffic;
  double omega = 0.8;
  double epsilon = 1e-3;
  int64_t horizon = 300'000;
  uint64_t seed = 1;
  PolicyKind policy = PolicyKind::kProposed;
  int64_t warmup = 0;  // slots excluded from summaries

  // Table 1 physics, K = 6 services at 20 packets/slot with a 15-slot
  // delay bound, Pmax = 50 W.
  static ScenarioConfig defaults();

  // L / (Ts B)
  double derived_eta() const;
  void set_uniform_traffic(double rate, double delay_bound);
  // Throws ConfigError.
  void validate() const;
  // N(t) for t in [0, horizon).
  std::vector<double> noise_trajectory() const;
};

}  // namespace hsr

#endif  // HSR_SCENARIO_H_
