#ifndef HSR_POLICY_H_
#define HSR_POLICY_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "hsr/channel.h"
#include "hsr/queues.h"
#include "hsr/scenario.h"
#include "hsr/slot_solver.h"

namespace hsr {

struct ControlAction {
  double power = 0.0;
  std::vector<int64_t> allocation;  // mu_k
  int64_t capacity = 0;             // link capacity at `power`
};

// P(t) = Pav for every slot.
std::vector<double> cpa_profile(double power_avg, int64_t horizon);

struct WaterFilling {
  std::vector<double> power;
  double level = 0.0;  // water level nu
};

// P(t) = clamp(nu - N(t), 0, power_max) with nu found by bisection so that
// the mean of P equals power_avg. Throws std::invalid_argument if
// power_avg <= 0 or any N(t) <= 0.
WaterFilling wfpa_profile(std::span<const double> noise, double power_avg,
                          double power_max =
                              std::numeric_limits<double>::infinity());

// One of the five power-control rules. Static profiles are computed once at
// construction from the trip's channel trajectory and never look at queues.
class Policy {
 public:
  Policy(PolicyKind kind, std::vector<double> profile);

  // Builds the profile the kind needs from config (horizon, noise
  // trajectory, Pav) and checks it against Pmax.
  static Policy make(PolicyKind kind, const ScenarioConfig& config);

  PolicyKind kind() const { return kind_; }
  const std::vector<double>& profile() const { return profile_; }

  // Per-slot peak power the solver may use; Pmax for the proposed policy.
  double power_cap(int64_t slot, const ScenarioConfig& config) const;

  ControlAction decide(const SystemState& state, const ChannelSample& channel,
                       const ScenarioConfig& config) const;

 private:
  PolicyKind kind_;
  std::vector<double> profile_;
};

// The per-slot problem the dynamic policies solve, with Cmax derived from
// `power_cap`.
SlotInstance make_slot_instance(const SystemState& state,
                                const ChannelSample& channel,
                                const ScenarioConfig& config, double power_cap);

}  // namespace hsr

#endif  // HSR_POLICY_H_
