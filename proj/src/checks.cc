#include "hsr/checks.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "hsr/channel.h"
#include "hsr/policy.h"

namespace hsr::checks {

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

CheckResult finish(std::string name, bool passed, std::string detail,
                   const Stopwatch& watch) {
  return {std::move(name), passed, std::move(detail), watch.seconds()};
}

bool close_relative(double a, double b, double tol) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::string describe(const SlotInstance& inst) {
  std::ostringstream out;
  out.precision(17);
  out << "X=(";
  for (double x : inst.weights) out << x << ' ';
  out << ") Q=(";
  for (int64_t q : inst.backlogs) out << q << ' ';
  out << ") beta=" << inst.beta << " Cmax=" << inst.capacity_cap;
  return out.str();
}

}  // namespace

SlotInstance random_instance(std::mt19937_64& rng, const InstanceBounds& b) {
  std::uniform_int_distribution<int> services(1, b.max_services);
  std::uniform_int_distribution<int64_t> backlog(0, b.max_backlog);
  std::uniform_real_distribution<double> weight(0.0, b.max_weight);
  std::uniform_real_distribution<double> log_beta(std::log(b.min_beta),
                                                  std::log(b.max_beta));
  std::uniform_real_distribution<double> cap(0.0, b.max_capacity_cap);
  std::uniform_real_distribution<double> log_noise(std::log(1e-7),
                                                   std::log(0.1));
  SlotInstance inst;
  const int k = services(rng);
  for (int i = 0; i < k; ++i) {
    inst.weights.push_back(weight(rng));
    inst.backlogs.push_back(backlog(rng));
  }
  inst.beta = std::exp(log_beta(rng));
  inst.eta = b.eta;
  inst.noise = std::exp(log_noise(rng));
  inst.capacity_cap = cap(rng);
  inst.epsilon = 1e-3;
  return inst;
}

std::vector<double> exhaustive_allocation_values(
    const std::vector<double>& weights, const std::vector<int64_t>& backlogs) {
  int64_t total = 0;
  for (int64_t q : backlogs) total += q;
  std::vector<double> best(total + 1,
                           -std::numeric_limits<double>::infinity());
  std::vector<int64_t> mu(weights.size(), 0);
  std::function<void(size_t, int64_t)> visit = [&](size_t k, int64_t sum) {
    if (k == weights.size()) {
      double value = 0.0;
      for (size_t i = 0; i < mu.size(); ++i) {
        value += weights[i] * static_cast<double>(mu[i]);
      }
      best[sum] = std::max(best[sum], value);
      return;
    }
    for (int64_t m = 0; m <= backlogs[k]; ++m) {
      mu[k] = m;
      visit(k + 1, sum + m);
    }
    mu[k] = 0;
  };
  visit(0, 0);
  return best;
}

CheckResult check_solver_oracle(int instances, uint64_t seed) {
  Stopwatch watch;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < instances; ++i) {
    const SlotInstance inst = random_instance(rng);
    const SlotSolution fast = solve_slot(inst);
    const SlotSolution slow = brute_force_slot(inst);
    const double fast_m = objective_M(static_cast<double>(fast.capacity), inst);
    const double slow_m = objective_M(static_cast<double>(slow.capacity), inst);
    if (!close_relative(fast_m, slow_m, 1e-9)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "instance " << i << ": solver C*=" << fast.capacity
          << " M=" << fast_m << ", oracle C*=" << slow.capacity
          << " M=" << slow_m << "; " << describe(inst);
      return finish("solver-oracle", false, msg.str(), watch);
    }
    int64_t served = 0;
    for (size_t k = 0; k < fast.allocation.size(); ++k) {
      if (fast.allocation[k] < 0 || fast.allocation[k] > inst.backlogs[k]) {
        return finish("solver-oracle", false,
                      "allocation exceeds backlog; " + describe(inst), watch);
      }
      served += fast.allocation[k];
    }
    const double power_cap =
        power_for_capacity(inst.capacity_cap, inst.noise, inst.eta);
    if (served != fast.capacity || fast.power > power_cap ||
        link_capacity(fast.power, inst.noise, inst.eta) != fast.capacity) {
      return finish("solver-oracle", false,
                    "infeasible solution; " + describe(inst), watch);
    }
  }
  return finish("solver-oracle", true,
                std::to_string(instances) + " random instances agree", watch);
}

CheckResult check_greedy_exhaustive(uint64_t seed) {
  Stopwatch watch;
  std::mt19937_64 rng(seed);
  // Multiples of 1/8 keep every sum exact in double precision.
  std::uniform_int_distribution<int> eighths(0, 800);
  std::uniform_int_distribution<int> tied(0, 2);
  int64_t compared = 0;
  for (int k = 1; k <= 4; ++k) {
    std::vector<int64_t> q(k, 0);
    while (true) {
      for (int variant = 0; variant < 4; ++variant) {
        SlotInstance inst;
        inst.backlogs = q;
        for (int i = 0; i < k; ++i) {
          inst.weights.push_back(variant == 0 ? tied(rng)
                                              : eighths(rng) / 8.0);
        }
        const std::vector<double> best =
            exhaustive_allocation_values(inst.weights, inst.backlogs);
        const int64_t top =
            std::min<int64_t>(12, static_cast<int64_t>(best.size()) - 1);
        for (int64_t c = 0; c <= top; ++c) {
          const std::vector<int64_t> mu = greedy_allocation(c, inst);
          double value = 0.0;
          for (int i = 0; i < k; ++i) {
            value += inst.weights[i] * static_cast<double>(mu[i]);
          }
          ++compared;
          if (value != best[c]) {
            std::ostringstream msg;
            msg << "C=" << c << " greedy " << value << " vs exhaustive "
                << best[c] << "; " << describe(inst);
            return finish("greedy-exhaustive", false, msg.str(), watch);
          }
        }
      }
      int i = 0;
      while (i < k && q[i] == 6) q[i++] = 0;
      if (i == k) break;
      ++q[i];
    }
  }
  return finish("greedy-exhaustive", true,
                std::to_string(compared) + " (instance, C) pairs match", watch);
}

CheckResult check_discrete_concavity(int instances, uint64_t seed) {
  Stopwatch watch;
  std::mt19937_64 rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < instances; ++i) {
    const SlotInstance inst = random_instance(rng);
    const int64_t upper = inst.integer_upper();
    for (int64_t c = 1; c < upper; ++c) {
      const double second =
          objective_M(static_cast<double>(c + 1), inst) -
          2.0 * objective_M(static_cast<double>(c), inst) +
          objective_M(static_cast<double>(c - 1), inst);
      worst = std::max(worst, second);
      if (second > 1e-9) {
        std::ostringstream msg;
        msg << "instance " << i << " C=" << c << " second difference "
            << second << "; " << describe(inst);
        return finish("discrete-concavity", false, msg.str(), watch);
      }
    }
  }
  std::ostringstream msg;
  msg << instances << " instances, max second difference " << worst;
  return finish("discrete-concavity", true, msg.str(), watch);
}

CheckResult check_capacity_round_trip() {
  Stopwatch watch;
  for (double noise : {1.2440849079796789e-07, 1e-3, 0.10099493723828113}) {
    for (int64_t c = 0; c <= 2000; ++c) {
      const double p = power_for_capacity(static_cast<double>(c), noise, 0.048);
      if (link_capacity(p, noise, 0.048) != c) {
        return finish("capacity-round-trip", false,
                      "c=" + std::to_string(c) + " fails at N=" +
                          std::to_string(noise),
                      watch);
      }
    }
  }
  return finish("capacity-round-trip", true, "c in [0, 2000] at 3 noise levels",
                watch);
}

CheckResult check_water_filling(uint64_t seed) {
  Stopwatch watch;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_noise(std::log(1e-7),
                                                   std::log(50.0));
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> noise(200);
    for (double& n : noise) n = std::exp(log_noise(rng));
    const double budget = 36.0;
    const WaterFilling wf = wfpa_profile(noise, budget);
    double mean = 0.0;
    for (double p : wf.power) mean += p;
    mean /= static_cast<double>(noise.size());
    if (std::abs(mean - budget) / budget > 1e-6) {
      return finish("water-filling", false,
                    "budget off by " + std::to_string(mean - budget), watch);
    }
    for (size_t t = 0; t < noise.size(); ++t) {
      const bool active = wf.power[t] > 0.0;
      const bool ok =
          active ? std::abs(wf.power[t] + noise[t] - wf.level) <=
                       1e-9 * wf.level
                 : noise[t] >= wf.level * (1.0 - 1e-12);
      if (!ok) {
        return finish("water-filling", false,
                      "KKT structure violated at slot " + std::to_string(t),
                      watch);
      }
    }
  }
  return finish("water-filling", true, "50 random trajectories", watch);
}

std::vector<CheckResult> run_selftest(uint64_t seed) {
  return {
      check_solver_oracle(1000, seed),
      check_greedy_exhaustive(seed + 1),
      check_discrete_concavity(1000, seed + 2),
      check_capacity_round_trip(),
      check_water_filling(seed + 3),
  };
}

}  // namespace hsr::checks
