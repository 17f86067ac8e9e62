#ifndef HSR_SIMULATION_H_
#define HSR_SIMULATION_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hsr/policy.h"
#include "hsr/queues.h"
#include "hsr/scenario.h"

namespace hsr {

// One slot of a run. Queue fields hold the state at the start of the slot;
// the action, arrivals and drops are what happened during it.
struct SlotRecord {
  int64_t slot = 0;
  double distance = 0.0;
  double noise = 0.0;
  double power = 0.0;
  int64_t capacity = 0;
  int64_t served = 0;
  std::vector<int64_t> arrivals;
  std::vector<int64_t> allocation;
  std::vector<int64_t> backlog;
  std::vector<double> delay_queue;
  double power_queue = 0.0;  // Y_k, identical for every k
  int64_t drops = 0;

  bool operator==(const SlotRecord&) const = default;
};

using Trace = std::vector<SlotRecord>;

struct SimSummary {
  int64_t slots = 0;
  double avg_power = 0.0;
  std::vector<double> avg_backlog;     // Q_k bar
  std::vector<double> avg_delay;       // W_k bar = Q_k bar / lambda_k hat
  std::vector<double> empirical_rate;  // admitted arrivals per slot
  std::vector<bool> delay_ok;          // W_k bar <= W_k^av
  bool power_ok = false;               // P bar <= Pav
  std::vector<int64_t> total_drops;
  // Mean per-packet FIFO sojourn, only filled when packets are tracked.
  std::vector<double> packet_delay;

  double mean_delay() const;
  double max_delay() const;
  bool all_delay_ok() const;
};

// Accumulates time averages over the slots it is fed; shared by the engine
// and summarize() so both produce identical numbers.
class SummaryBuilder {
 public:
  SummaryBuilder(const ScenarioConfig& config, int64_t warmup);
  void add(const SlotRecord& record, std::span<const int64_t> dropped);
  SimSummary finish() const;

 private:
  const ScenarioConfig& config_;
  int64_t warmup_;
  int64_t slots_ = 0;
  double power_sum_ = 0.0;
  std::vector<double> backlog_sum_;
  std::vector<int64_t> admitted_;
  std::vector<int64_t> drops_;
};

// A run aborted because an invariant check failed.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  bool keep_trace = true;
  bool check_invariants = true;
  bool track_packets = false;
};

struct RunResult {
  Trace trace;
  SimSummary summary;
  SystemState final_state;
};

// Slot loop: observe, decide, transmit, sample arrivals, then update Q, X
// (with the new Q) and Y (with the chosen P).
RunResult run(const ScenarioConfig& config, const Policy& policy,
              uint64_t seed, const RunOptions& options = {});

// Throws std::invalid_argument on an empty trace (or warmup >= size).
SimSummary summarize(const Trace& trace, const ScenarioConfig& config);
SimSummary summarize(const Trace& trace, const ScenarioConfig& config,
                     int64_t warmup);

// Index of the first record whose successor is not reproduced by the queue
// updates, or nullopt if every transition replays exactly.
std::optional<int64_t> find_replay_mismatch(const Trace& trace,
                                            const ScenarioConfig& config);

}  // namespace hsr

#endif  // HSR_SIMULATION_H_
