#ifndef HSR_SWEEP_H_
#define HSR_SWEEP_H_

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hsr/scenario.h"
#include "hsr/simulation.h"

namespace hsr {

enum class SweepParameter { kOmega, kLambda, kPmax };

std::string_view parameter_name(SweepParameter p);
SweepParameter parse_parameter(std::string_view name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kOmega;
  std::vector<double> values;
  std::vector<PolicyKind> policies = {PolicyKind::kProposed};
  int replications = 1;
  // Replication r runs with seed base_seed + r, shared by every value and
  // policy so comparisons see the same arrival sample paths.
  uint64_t base_seed = 1;

  void validate() const;
  uint64_t seed_for(int replication) const;
};

// base with the swept parameter set: omega, every lambda_k, or Pmax.
ScenarioConfig apply_parameter(const ScenarioConfig& base,
                               SweepParameter parameter, double value);

struct SweepRow {
  double value = 0.0;
  PolicyKind policy = PolicyKind::kProposed;
  int replication = 0;
  uint64_t seed = 0;
  bool ok = false;
  std::string error;
  SimSummary summary;
};

struct SweepAggregate {
  double value = 0.0;
  PolicyKind policy = PolicyKind::kProposed;
  int runs = 0;
  double power_mean = 0.0;
  double power_sd = 0.0;  // sample standard deviation, 0 for a single run
  double delay_mean = 0.0;
  double delay_sd = 0.0;
  bool delay_ok = false;  // every run met every delay bound
  bool power_ok = false;
};

struct SweepTable {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // value-major, then policy, then replication

  bool complete() const;
  int64_t failures() const;
  std::vector<SweepAggregate> aggregate() const;
};

struct SweepOptions {
  int workers = 1;
  // When set, each cell's summary is written to <cell_dir>/cell_<i>.json as
  // soon as the cell finishes.
  std::filesystem::path cell_dir;
};

// A failing cell is recorded with ok = false and its error; the remaining
// cells still run.
SweepTable run_sweep(const SweepSpec& spec, const ScenarioConfig& base,
                     const SweepOptions& options = {});

// Long format, one row per cell:
//   parameter,value,policy,replication,seed,status,avg_power,mean_delay,
//   max_delay,delay_1..delay_K,delay_ok,power_ok,error
void write_sweep_table(const SweepTable& table, std::ostream& out);
// One row per (value, policy) with mean and sample stddev.
void write_sweep_aggregate(const SweepTable& table, std::ostream& out);

}  // namespace hsr

#endif  // HSR_SWEEP_H_
