#include "hsr/policy.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hsr {

namespace {

bool is_static(PolicyKind kind) {
  return kind == PolicyKind::kStaticCpa || kind == PolicyKind::kStaticWfpa;
}

double mean_clipped(std::span<const double> noise, double level,
                    double power_max) {
  double sum = 0.0;
  for (double n : noise) sum += std::clamp(level - n, 0.0, power_max);
  return sum / static_cast<double>(noise.size());
}

}  // namespace

std::vector<double> cpa_profile(double power_avg, int64_t horizon) {
  return std::vector<double>(static_cast<size_t>(std::max<int64_t>(horizon, 0)),
                             power_avg);
}

WaterFilling wfpa_profile(std::span<const double> noise, double power_avg,
                          double power_max) {
  if (!(power_avg > 0.0)) {
    throw std::invalid_argument("wfpa_profile: power_avg must be > 0");
  }
  WaterFilling wf;
  if (noise.empty()) return wf;
  for (double n : noise) {
    if (!(n > 0.0)) throw std::invalid_argument("wfpa_profile: N(t) <= 0");
  }
  const auto [min_it, max_it] = std::minmax_element(noise.begin(), noise.end());
  double lo = *min_it;
  double hi = *max_it + power_avg;
  if (power_max <= power_avg) {
    lo = hi;  // every slot sits at the cap
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mean_clipped(noise, mid, power_max) < power_avg) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // The lower bracket keeps the realised mean at or under the budget.
  wf.level = lo;
  wf.power.reserve(noise.size());
  for (double n : noise) {
    wf.power.push_back(std::clamp(wf.level - n, 0.0, power_max));
  }
  return wf;
}

Policy::Policy(PolicyKind kind, std::vector<double> profile)
    : kind_(kind), profile_(std::move(profile)) {
  if (kind_ != PolicyKind::kProposed && profile_.empty()) {
    throw std::invalid_argument("Policy: " + std::string(policy_name(kind_)) +
                                " needs a power profile");
  }
  for (double p : profile_) {
    if (!(p >= 0.0)) throw std::invalid_argument("Policy: negative profile");
  }
}

Policy Policy::make(PolicyKind kind, const ScenarioConfig& config) {
  std::vector<double> profile;
  switch (kind) {
    case PolicyKind::kProposed:
      break;
    case PolicyKind::kStaticCpa:
    case PolicyKind::kDynamicCpa:
      profile = cpa_profile(config.traffic.power_avg, config.horizon);
      break;
    case PolicyKind::kStaticWfpa:
    case PolicyKind::kDynamicWfpa: {
      const std::vector<double> noise = config.noise_trajectory();
      profile = wfpa_profile(noise, config.traffic.power_avg,
                             config.radio.power_max)
                    .power;
      break;
    }
  }
  for (double p : profile) {
    if (p > config.radio.power_max) {
      throw ConfigError(std::string(policy_name(kind)) +
                        ": static power profile exceeds radio.power_max");
    }
  }
  return Policy(kind, std::move(profile));
}

double Policy::power_cap(int64_t slot, const ScenarioConfig& config) const {
  if (kind_ == PolicyKind::kProposed) return config.radio.power_max;
  if (slot < 0 || slot >= static_cast<int64_t>(profile_.size())) {
    throw std::out_of_range("Policy: slot " + std::to_string(slot) +
                            " beyond the power profile");
  }
  return profile_[slot];
}

SlotInstance make_slot_instance(const SystemState& state,
                                const ChannelSample& channel,
                                const ScenarioConfig& config,
                                double power_cap) {
  SlotInstance inst;
  inst.weights = state.delay_queue;
  inst.backlogs = state.backlog;
  inst.beta = config.omega * channel.noise_equiv * state.power_queue_sum();
  inst.eta = config.radio.eta;
  inst.noise = channel.noise_equiv;
  inst.capacity_cap =
      capacity_for_power(power_cap, channel.noise_equiv, config.radio.eta);
  inst.epsilon = config.epsilon;
  return inst;
}

ControlAction Policy::decide(const SystemState& state,
                             const ChannelSample& channel,
                             const ScenarioConfig& config) const {
  const double cap = power_cap(channel.slot, config);
  SlotInstance inst = make_slot_instance(state, channel, config, cap);
  ControlAction action;
  if (is_static(kind_)) {
    action.power = cap;
    action.capacity =
        link_capacity(action.power, channel.noise_equiv, config.radio.eta);
    action.allocation = greedy_allocation(
        std::min(action.capacity, inst.total_backlog()), inst);
    return action;
  }
  if (tolerant_floor(inst.capacity_cap) <= 0) {
    action.allocation.assign(state.backlog.size(), 0);
    return action;
  }
  SlotSolution sol = solve_slot(inst);
  action.power = sol.power;
  action.capacity = sol.capacity;
  action.allocation = std::move(sol.allocation);
  return action;
}

}  // namespace hsr
