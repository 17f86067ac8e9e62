#include "hsr/sweep.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "hsr/policy.h"
#include "hsr/trace_io.h"
#include "text_util.h"

namespace hsr {

std::string_view parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::kOmega:
      return "omega";
    case SweepParameter::kLambda:
      return "lambda";
    case SweepParameter::kPmax:
      return "pmax";
  }
  return "unknown";
}

SweepParameter parse_parameter(std::string_view name) {
  for (SweepParameter p : {SweepParameter::kOmega, SweepParameter::kLambda,
                           SweepParameter::kPmax}) {
    if (parameter_name(p) == name) return p;
  }
  throw ConfigError("sweep: unknown parameter '" + std::string(name) +
                    "' (expected omega, lambda or pmax)");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep: no values");
  if (policies.empty()) throw ConfigError("sweep: no policies");
  if (replications < 1) throw ConfigError("sweep: replications must be >= 1");
}

uint64_t SweepSpec::seed_for(int replication) const {
  return base_seed + static_cast<uint64_t>(replication);
}

ScenarioConfig apply_parameter(const ScenarioConfig& base,
                               SweepParameter parameter, double value) {
  ScenarioConfig c = base;
  switch (parameter) {
    case SweepParameter::kOmega:
      c.omega = value;
      break;
    case SweepParameter::kLambda:
      c.traffic.arrival_rates.assign(c.traffic.num_services, value);
      break;
    case SweepParameter::kPmax:
      c.radio.power_max = value;
      break;
  }
  return c;
}

bool SweepTable::complete() const {
  return rows.size() == spec.values.size() * spec.policies.size() *
                            static_cast<size_t>(spec.replications) &&
         failures() == 0;
}

int64_t SweepTable::failures() const {
  return std::count_if(rows.begin(), rows.end(),
                       [](const SweepRow& r) { return !r.ok; });
}

std::vector<SweepAggregate> SweepTable::aggregate() const {
  std::vector<SweepAggregate> out;
  for (double value : spec.values) {
    for (PolicyKind policy : spec.policies) {
      SweepAggregate agg;
      agg.value = value;
      agg.policy = policy;
      agg.delay_ok = true;
      agg.power_ok = true;
      std::vector<double> power;
      std::vector<double> delay;
      for (const SweepRow& r : rows) {
        if (!r.ok || r.value != value || r.policy != policy) continue;
        power.push_back(r.summary.avg_power);
        delay.push_back(r.summary.mean_delay());
        agg.delay_ok = agg.delay_ok && r.summary.all_delay_ok();
        agg.power_ok = agg.power_ok && r.summary.power_ok;
      }
      agg.runs = static_cast<int>(power.size());
      if (agg.runs == 0) {
        agg.delay_ok = agg.power_ok = false;
        out.push_back(agg);
        continue;
      }
      auto mean_sd = [](const std::vector<double>& v, double& mean,
                        double& sd) {
        mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        sd = 0.0;
        if (v.size() > 1) {
          for (double x : v) sd += (x - mean) * (x - mean);
          sd = std::sqrt(sd / static_cast<double>(v.size() - 1));
        }
      };
      mean_sd(power, agg.power_mean, agg.power_sd);
      mean_sd(delay, agg.delay_mean, agg.delay_sd);
      out.push_back(agg);
    }
  }
  return out;
}

SweepTable run_sweep(const SweepSpec& spec, const ScenarioConfig& base,
                     const SweepOptions& options) {
  spec.validate();
  SweepTable table;
  table.spec = spec;
  for (double value : spec.values) {
    for (PolicyKind policy : spec.policies) {
      for (int r = 0; r < spec.replications; ++r) {
        SweepRow row;
        row.value = value;
        row.policy = policy;
        row.replication = r;
        row.seed = spec.seed_for(r);
        table.rows.push_back(std::move(row));
      }
    }
  }
  if (!options.cell_dir.empty()) {
    std::filesystem::create_directories(options.cell_dir);
  }

  // Each worker owns the rows it claims; nothing else is shared.
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < table.rows.size(); i = next++) {
      SweepRow& row = table.rows[i];
      try {
        ScenarioConfig config =
            apply_parameter(base, spec.parameter, row.value);
        config.policy = row.policy;
        config.seed = row.seed;
        const Policy policy = Policy::make(row.policy, config);
        RunOptions run_options;
        run_options.keep_trace = false;
        row.summary = run(config, policy, row.seed, run_options).summary;
        row.ok = true;
        if (!options.cell_dir.empty()) {
          write_summary(row.summary, config,
                        options.cell_dir / ("cell_" + std::to_string(i) +
                                            ".json"));
        }
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
      }
    }
  };
  const int workers = std::clamp<int>(
      options.workers, 1, static_cast<int>(std::max<size_t>(table.rows.size(), 1)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return table;
}

void write_sweep_table(const SweepTable& table, std::ostream& out) {
  size_t services = 0;
  for (const SweepRow& r : table.rows) {
    services = std::max(services, r.summary.avg_delay.size());
  }
  out << "parameter,value,policy,replication,seed,status,avg_power,"
         "mean_delay,max_delay";
  for (size_t k = 1; k <= services; ++k) out << ",delay_" << k;
  out << ",delay_ok,power_ok,error\n";
  const std::string param(parameter_name(table.spec.parameter));
  for (const SweepRow& r : table.rows) {
    out << param << ',' << text::format_double(r.value) << ','
        << policy_name(r.policy) << ',' << r.replication << ',' << r.seed
        << ',' << (r.ok ? "ok" : "failed") << ',';
    if (r.ok) {
      out << text::format_double(r.summary.avg_power) << ','
          << text::format_double(r.summary.mean_delay()) << ','
          << text::format_double(r.summary.max_delay());
      for (size_t k = 0; k < services; ++k) {
        out << ',' << text::format_double(r.summary.avg_delay[k]);
      }
      out << ',' << (r.summary.all_delay_ok() ? 1 : 0) << ','
          << (r.summary.power_ok ? 1 : 0) << ",\n";
    } else {
      out << ",,";
      for (size_t k = 0; k < services; ++k) out << ',';
      std::string msg = r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      out << ",,," << msg << '\n';
    }
  }
}

void write_sweep_aggregate(const SweepTable& table, std::ostream& out) {
  out << "parameter,value,policy,runs,avg_power_mean,avg_power_sd,"
         "mean_delay_mean,mean_delay_sd,delay_ok,power_ok\n";
  const std::string param(parameter_name(table.spec.parameter));
  for (const SweepAggregate& a : table.aggregate()) {
    out << param << ',' << text::format_double(a.value) << ','
        << policy_name(a.policy) << ',' << a.runs << ','
        << text::format_double(a.power_mean) << ','
        << text::format_double(a.power_sd) << ','
        << text::format_double(a.delay_mean) << ','
        << text::format_double(a.delay_sd) << ',' << (a.delay_ok ? 1 : 0)
        << ',' << (a.power_ok ? 1 : 0) << '\n';
  }
}

}  // namespace hsr
