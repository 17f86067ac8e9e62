#ifndef HSR_SLOT_SOLVER_H_
#define HSR_SLOT_SOLVER_H_

#include <cstdint>
#include <vector>

namespace hsr {

// One slot's deterministic problem
//
//   max_C  M(C) = M1(C) - M2(C),  0 <= C <= min(sum_k Q_k, Cmax), C integer
//
// where M1(C) is the best weighted allocation of C packets over the backlogs
// and M2(C) = beta (2^(eta C) - 1) is the weighted power cost.
struct SlotInstance {
  std::vector<double> weights;    // X_k >= 0
  std::vector<int64_t> backlogs;  // Q_k >= 0
  double beta = 0.0;              // omega N sum_k Y_k
  double eta = 0.048;
  double noise = 1.0;             // N, used to map C* back to power
  double capacity_cap = 0.0;      // Cmax, real-valued
  double epsilon = 1e-3;          // golden-section stopping width

  void validate() const;
  int64_t total_backlog() const;
  // Relaxed search interval upper end: min(sum Q, Cmax).
  double search_upper() const;
  // Largest feasible integer capacity: min(sum Q, floor(Cmax)).
  int64_t integer_upper() const;
};

struct SlotSolution {
  int64_t capacity = 0;          // C*
  double power = 0.0;            // P* = N (2^(eta C*) - 1)
  std::vector<int64_t> allocation;
  double objective = 0.0;        // M(C*)
};

// Service indices sorted by descending X_k, ties by ascending index.
std::vector<int> service_order(const std::vector<double>& weights);

// Fills services in service_order(); throws std::invalid_argument when C is
// outside [0, sum Q].
std::vector<int64_t> greedy_allocation(int64_t capacity,
                                       const SlotInstance& inst);

// Piecewise-linear continuation of the greedy optimum to real C.
double m1_value(double capacity, const SlotInstance& inst);
double m2_value(double capacity, const SlotInstance& inst);
// Throws std::domain_error outside [0, min(sum Q, Cmax)].
double objective_M(double capacity, const SlotInstance& inst);

// Number of golden-section iterations for an interval of `width`.
int golden_iterations(double width, double epsilon);

struct GoldenResult {
  double argmax = 0.0;
  int iterations = 0;
};
GoldenResult golden_section(const SlotInstance& inst);
// Relaxed maximizer C~ of M over [0, search_upper()].
double golden_section_search(const SlotInstance& inst);

// Best of floor(C~) and ceil(C~) inside [0, integer_upper()], ties toward
// the smaller capacity.
int64_t integer_round(double relaxed, const SlotInstance& inst);

SlotSolution solve_slot(const SlotInstance& inst);

// Exhaustive scan of every integer C; independent reference for solve_slot.
// Throws std::length_error when integer_upper() exceeds kBruteForceLimit.
inline constexpr int64_t kBruteForceLimit = 100'000;
SlotSolution brute_force_slot(const SlotInstance& inst);

}  // namespace hsr

#endif  // HSR_SLOT_SOLVER_H_
