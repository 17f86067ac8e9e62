#ifndef HSR_CHECKS_H_
#define HSR_CHECKS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hsr/slot_solver.h"

namespace hsr::checks {

// Oracle and property checks behind `hsrsim selftest` and the acceptance
// suite. Oracles here enumerate; they never call the golden-section path.

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct InstanceBounds {
  int max_services = 8;
  int64_t max_backlog = 50;
  double max_weight = 100.0;
  double min_beta = 1e-6;  // beta is drawn log-uniformly
  double max_beta = 1e2;
  double eta = 0.048;
  double max_capacity_cap = 600.0;
};

SlotInstance random_instance(std::mt19937_64& rng,
                             const InstanceBounds& bounds = {});

// Best sum_k X_k mu_k over every integer vector 0 <= mu <= Q with
// sum mu = C, for each C in [0, sum Q]. Entry C holds the maximum.
std::vector<double> exhaustive_allocation_values(
    const std::vector<double>& weights, const std::vector<int64_t>& backlogs);

// solve_slot against brute_force_slot, relative tolerance 1e-9, plus
// feasibility of every returned solution.
CheckResult check_solver_oracle(int instances, uint64_t seed);
// Greedy M1 against exhaustive enumeration for K <= 4, Q_k <= 6, C <= 12;
// exact equality (weights are dyadic so sums are exact).
CheckResult check_greedy_exhaustive(uint64_t seed);
// M(C+1) - 2 M(C) + M(C-1) <= 1e-9 over the feasible integer range.
CheckResult check_discrete_concavity(int instances, uint64_t seed);
// link_capacity(power_for_capacity(c)) == c for c in [0, 2000].
CheckResult check_capacity_round_trip();
// Water-filling budget and KKT structure on random trajectories.
CheckResult check_water_filling(uint64_t seed);

std::vector<CheckResult> run_selftest(uint64_t seed);

}  // namespace hsr::checks

#endif  // HSR_CHECKS_H_
