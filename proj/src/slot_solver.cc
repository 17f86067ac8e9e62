#include "hsr/slot_solver.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hsr/channel.h"

namespace hsr {

namespace {

// (sqrt(5) - 1) / 2
constexpr double kGoldenRatio = 0.6180339887498949;

// Slack for the nudged floor of Cmax when checking integer candidates.
constexpr double kDomainSlack = 1e-9;

SlotSolution make_solution(int64_t capacity, const SlotInstance& inst) {
  SlotSolution s;
  s.capacity = capacity;
  // The nudged floor may put C* a hair above Cmax; never report power above
  // the cap that Cmax was derived from.
  s.power = std::min(power_for_capacity(static_cast<double>(capacity),
                                        inst.noise, inst.eta),
                     power_for_capacity(inst.capacity_cap, inst.noise,
                                        inst.eta));
  s.allocation = greedy_allocation(capacity, inst);
  s.objective = objective_M(static_cast<double>(capacity), inst);
  return s;
}

}  // namespace

void SlotInstance::validate() const {
  if (weights.size() != backlogs.size()) {
    throw std::invalid_argument("SlotInstance: weights/backlogs size mismatch");
  }
  for (size_t k = 0; k < weights.size(); ++k) {
    if (!(weights[k] >= 0.0) || backlogs[k] < 0) {
      throw std::invalid_argument("SlotInstance: negative weight or backlog at " +
                                  std::to_string(k));
    }
  }
  if (!(beta >= 0.0)) throw std::invalid_argument("SlotInstance: beta < 0");
  if (!(eta > 0.0)) throw std::invalid_argument("SlotInstance: eta <= 0");
  if (!(noise > 0.0)) throw std::invalid_argument("SlotInstance: noise <= 0");
  if (!(capacity_cap >= 0.0)) {
    throw std::invalid_argument("SlotInstance: capacity_cap < 0");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("SlotInstance: epsilon <= 0");
}

int64_t SlotInstance::total_backlog() const {
  return std::accumulate(backlogs.begin(), backlogs.end(), int64_t{0});
}

double SlotInstance::search_upper() const {
  return std::min(static_cast<double>(total_backlog()), capacity_cap);
}

int64_t SlotInstance::integer_upper() const {
  return std::max<int64_t>(
      0, std::min(total_backlog(), tolerant_floor(capacity_cap)));
}

std::vector<int> service_order(const std::vector<double>& weights) {
  std::vector<int> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weights[a] > weights[b]; });
  return order;
}

std::vector<int64_t> greedy_allocation(int64_t capacity,
                                       const SlotInstance& inst) {
  const int64_t total = inst.total_backlog();
  if (capacity < 0 || capacity > total) {
    throw std::invalid_argument("greedy_allocation: C=" +
                                std::to_string(capacity) +
                                " outside [0, " + std::to_string(total) + "]");
  }
  std::vector<int64_t> mu(inst.backlogs.size(), 0);
  int64_t filled = 0;  // sum of backlogs of services ahead in the order
  for (int k : service_order(inst.weights)) {
    mu[k] = std::min(std::max<int64_t>(capacity - filled, 0), inst.backlogs[k]);
    filled += inst.backlogs[k];
  }
  return mu;
}

double m1_value(double capacity, const SlotInstance& inst) {
  const double total = static_cast<double>(inst.total_backlog());
  if (capacity < 0.0 || capacity > total) {
    throw std::invalid_argument("m1_value: C outside [0, sum Q]");
  }
  double value = 0.0;
  double remaining = capacity;
  for (int k : service_order(inst.weights)) {
    if (remaining <= 0.0) break;
    const double take =
        std::min(remaining, static_cast<double>(inst.backlogs[k]));
    value += inst.weights[k] * take;
    remaining -= take;
  }
  return value;
}

double m2_value(double capacity, const SlotInstance& inst) {
  if (inst.beta == 0.0 || capacity <= 0.0) return 0.0;
  const double exponent = inst.eta * capacity * std::numbers::ln2;
  assert(exponent < 700.0 && "2^(eta C) overflows");
  return inst.beta * std::expm1(exponent);
}

double objective_M(double capacity, const SlotInstance& inst) {
  const double upper = std::max(
      inst.search_upper(), static_cast<double>(inst.integer_upper()));
  if (capacity < 0.0 || capacity > upper + kDomainSlack) {
    throw std::domain_error("objective_M: C outside [0, min(sum Q, Cmax)]");
  }
  return m1_value(std::min(capacity, static_cast<double>(inst.total_backlog())),
                  inst) -
         m2_value(capacity, inst);
}

int golden_iterations(double width, double epsilon) {
  if (width <= epsilon) return 0;
  return static_cast<int>(
      std::ceil(std::log(width / epsilon) / std::log(1.0 / kGoldenRatio)));
}

GoldenResult golden_section(const SlotInstance& inst) {
  double lo = 0.0;
  double hi = std::max(inst.search_upper(), 0.0);
  GoldenResult r;
  if (hi - lo <= inst.epsilon) {
    r.argmax = 0.5 * (lo + hi);
    return r;
  }
  auto f = [&](double c) { return objective_M(c, inst); };
  double left = lo + (1.0 - kGoldenRatio) * (hi - lo);
  double right = lo + kGoldenRatio * (hi - lo);
  double f_left = f(left);
  double f_right = f(right);
  while (hi - lo > inst.epsilon) {
    if (f_left >= f_right) {
      hi = right;
      right = left;
      f_right = f_left;
      left = lo + (1.0 - kGoldenRatio) * (hi - lo);
      f_left = f(left);
    } else {
      lo = left;
      left = right;
      f_left = f_right;
      right = lo + kGoldenRatio * (hi - lo);
      f_right = f(right);
    }
    ++r.iterations;
  }
  r.argmax = 0.5 * (lo + hi);
  return r;
}

double golden_section_search(const SlotInstance& inst) {
  return golden_section(inst).argmax;
}

int64_t integer_round(double relaxed, const SlotInstance& inst) {
  const int64_t upper = inst.integer_upper();
  const int64_t below =
      std::clamp<int64_t>(static_cast<int64_t>(std::floor(relaxed)), 0, upper);
  const int64_t above =
      std::clamp<int64_t>(static_cast<int64_t>(std::ceil(relaxed)), 0, upper);
  if (above == below) return below;
  return objective_M(static_cast<double>(above), inst) >
                 objective_M(static_cast<double>(below), inst)
             ? above
             : below;
}

SlotSolution solve_slot(const SlotInstance& inst) {
  inst.validate();
  if (inst.integer_upper() == 0) return make_solution(0, inst);
  return make_solution(integer_round(golden_section_search(inst), inst), inst);
}

SlotSolution brute_force_slot(const SlotInstance& inst) {
  inst.validate();
  const int64_t upper = inst.integer_upper();
  if (upper > kBruteForceLimit) {
    throw std::length_error("brute_force_slot: " + std::to_string(upper) +
                            " candidates exceed the oracle limit");
  }
  int64_t best_c = 0;
  double best = 0.0;  // M(0)
  for (int64_t c = 1; c <= upper; ++c) {
    const std::vector<int64_t> mu = greedy_allocation(c, inst);
    double gain = 0.0;
    for (size_t k = 0; k < mu.size(); ++k) {
      gain += inst.weights[k] * static_cast<double>(mu[k]);
    }
    const double value =
        gain - inst.beta * (std::exp2(inst.eta * static_cast<double>(c)) - 1.0);
    if (value > best) {
      best = value;
      best_c = c;
    }
  }
  return make_solution(best_c, inst);
}

}  // namespace hsr
