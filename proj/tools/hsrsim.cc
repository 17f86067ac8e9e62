// hsrsim: run, sweep and plot-data front end for the downlink resource
// management simulator.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime or invariant
// failure, 3 sweep finished with failed cells.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hsr/checks.h"
#include "hsr/config.h"
#include "hsr/plotdata.h"
#include "hsr/policy.h"
#include "hsr/simulation.h"
#include "hsr/sweep.h"
#include "hsr/trace_io.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitPartial = 3;

struct CommonFlags {
  std::string config_path;
  std::optional<std::string> policy;
  std::optional<uint64_t> seed;
  std::optional<int64_t> horizon;
  std::string out_dir = ".";
  int workers = 1;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "Scenario file (INI)");
  cmd->add_option("--seed", f.seed, "Master RNG seed");
  cmd->add_option("--horizon", f.horizon, "Number of slots");
  cmd->add_option("--out", f.out_dir, "Output directory");
}

hsr::ScenarioConfig resolve_config(const CommonFlags& f) {
  hsr::ScenarioConfig c = f.config_path.empty()
                              ? hsr::ScenarioConfig::defaults()
                              : hsr::load_config(f.config_path);
  if (f.policy) c.policy = hsr::parse_policy(*f.policy);
  if (f.seed) c.seed = *f.seed;
  if (f.horizon) c.horizon = *f.horizon;
  c.validate();
  return c;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_values(const std::string& s) {
  std::vector<double> values;
  for (const std::string& item : split_list(s)) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw hsr::ConfigError("--values: cannot parse '" + item + "'");
    }
  }
  return values;
}

std::vector<hsr::PolicyKind> parse_policies(const std::string& s) {
  std::vector<hsr::PolicyKind> out;
  for (const std::string& item : split_list(s)) {
    if (item == "all") {
      return {std::begin(hsr::kAllPolicies), std::end(hsr::kAllPolicies)};
    }
    out.push_back(hsr::parse_policy(item));
  }
  return out;
}

void print_summary(const hsr::SimSummary& s, const hsr::ScenarioConfig& c) {
  std::printf("policy %s, %lld slots\n",
              std::string(hsr::policy_name(c.policy)).c_str(),
              static_cast<long long>(s.slots));
  std::printf("  avg power %.4f W (bound %.4f W) %s\n", s.avg_power,
              c.traffic.power_avg, s.power_ok ? "ok" : "VIOLATED");
  for (size_t k = 0; k < s.avg_delay.size(); ++k) {
    std::printf("  service %zu: backlog %.4f, delay %.4f slots (bound %.4f) %s\n",
                k + 1, s.avg_backlog[k], s.avg_delay[k],
                c.traffic.delay_bounds[k], s.delay_ok[k] ? "ok" : "VIOLATED");
  }
}

int cmd_run(const CommonFlags& f, bool no_trace, bool track_packets) {
  const hsr::ScenarioConfig config = resolve_config(f);
  const hsr::Policy policy = hsr::Policy::make(config.policy, config);
  hsr::RunOptions options;
  options.keep_trace = !no_trace;
  options.track_packets = track_packets;
  const hsr::RunResult result = hsr::run(config, policy, config.seed, options);
  fs::create_directories(f.out_dir);
  if (!no_trace) {
    hsr::write_trace(result.trace, config.traffic.num_services,
                     fs::path(f.out_dir) / "trace.csv");
  }
  hsr::write_summary(result.summary, config,
                     fs::path(f.out_dir) / "summary.json");
  print_summary(result.summary, config);
  return 0;
}

int cmd_sweep(const CommonFlags& f, const std::string& param,
              const std::string& values, const std::string& policies,
              int replications) {
  const hsr::ScenarioConfig config = resolve_config(f);
  hsr::SweepSpec spec;
  spec.parameter = hsr::parse_parameter(param);
  spec.values = parse_values(values);
  spec.policies = parse_policies(policies);
  spec.replications = replications;
  spec.base_seed = config.seed;
  spec.validate();

  hsr::SweepOptions options;
  options.workers = f.workers;
  options.cell_dir = fs::path(f.out_dir) / "cells";
  const hsr::SweepTable table = hsr::run_sweep(spec, config, options);

  std::ofstream rows(fs::path(f.out_dir) / "sweep.csv");
  hsr::write_sweep_table(table, rows);
  std::ofstream agg(fs::path(f.out_dir) / "sweep_summary.csv");
  hsr::write_sweep_aggregate(table, agg);
  hsr::write_sweep_aggregate(table, std::cout);
  if (table.failures() > 0) {
    std::cerr << table.failures() << " sweep cell(s) failed; see sweep.csv\n";
    return kExitPartial;
  }
  return 0;
}

int cmd_plotdata(const CommonFlags& f, const std::string& figure_name,
                 std::optional<int64_t> window_start,
                 const std::string& values, int replications) {
  const hsr::Figure figure = hsr::parse_figure(figure_name);
  const hsr::ScenarioConfig base = resolve_config(f);
  hsr::FigurePreset preset = hsr::figure_preset(figure, base);
  fs::create_directories(f.out_dir);
  const fs::path path =
      fs::path(f.out_dir) / (std::string(hsr::figure_name(figure)) + ".csv");

  if (figure == hsr::Figure::kFig3) {
    hsr::ScenarioConfig& c = preset.config;
    const int64_t window = hsr::cell_period_window(c.geometry);
    const int64_t start = window_start.value_or(0);
    if (!f.horizon) c.horizon = start + window;
    c.validate();
    std::vector<hsr::Trace> traces;
    std::vector<hsr::PolicyTrace> series;
    traces.reserve(std::size(hsr::kAllPolicies));
    for (hsr::PolicyKind kind : hsr::kAllPolicies) {
      c.policy = kind;
      const hsr::Policy policy = hsr::Policy::make(kind, c);
      traces.push_back(hsr::run(c, policy, c.seed).trace);
      series.push_back({kind, &traces.back()});
    }
    hsr::emit_plotdata(series, figure, start, window, path);
  } else {
    if (!values.empty()) preset.sweep.values = parse_values(values);
    preset.sweep.replications = replications;
    hsr::SweepOptions options;
    options.workers = f.workers;
    const hsr::SweepTable table =
        hsr::run_sweep(preset.sweep, preset.config, options);
    if (table.failures() > 0) {
      std::ofstream rows(fs::path(f.out_dir) /
                         (std::string(hsr::figure_name(figure)) + "_cells.csv"));
      hsr::write_sweep_table(table, rows);
      std::cerr << table.failures() << " cell(s) failed; no figure written\n";
      return kExitPartial;
    }
    hsr::emit_plotdata(table, figure, preset.config, path);
  }
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_selftest(uint64_t seed) {
  bool ok = true;
  for (const auto& r : hsr::checks::run_selftest(seed)) {
    std::printf("%-4s %-22s %7.3fs  %s\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slotted downlink simulator: Lyapunov-based power control and "
               "packet allocation for a moving receiver"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  bool no_trace = false;
  bool track_packets = false;
  auto* run = app.add_subcommand("run", "Simulate one scenario");
  add_common(run, run_flags);
  run->add_option("--policy", run_flags.policy,
                  "proposed | cpa-static | wfpa-static | cpa-dynamic | "
                  "wfpa-dynamic");
  run->add_flag("--no-trace", no_trace, "Write only the summary");
  run->add_flag("--track-packets", track_packets,
                "Also measure per-packet FIFO delay");

  CommonFlags sweep_flags;
  std::string param = "omega";
  std::string values;
  std::string policies = "proposed";
  int replications = 1;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over policies");
  add_common(sweep, sweep_flags);
  sweep->add_option("--param", param, "omega | lambda | pmax");
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--policies", policies,
                    "Comma-separated policy names, or 'all'");
  sweep->add_option("--replications", replications, "Seeds per cell");
  sweep->add_option("--workers", sweep_flags.workers, "Concurrent cells");

  CommonFlags plot_flags;
  std::string figure = "fig3";
  std::optional<int64_t> window_start;
  std::string plot_values;
  int plot_replications = 1;
  auto* plot = app.add_subcommand("plotdata", "Emit data series for a figure");
  add_common(plot, plot_flags);
  plot->add_option("--figure", figure, "fig3 | fig4 | fig5 | fig6");
  plot->add_option("--window-start", window_start,
                   "First slot of the fig3 window (default 0)");
  plot->add_option("--values", plot_values, "Override the swept values");
  plot->add_option("--replications", plot_replications, "Seeds per cell");
  plot->add_option("--workers", plot_flags.workers, "Concurrent cells");

  uint64_t selftest_seed = 20240601;
  auto* selftest = app.add_subcommand("selftest", "Oracle and property checks");
  selftest->add_option("--seed", selftest_seed, "Seed for random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags, no_trace, track_packets);
    if (sweep->parsed()) {
      return cmd_sweep(sweep_flags, param, values, policies, replications);
    }
    if (plot->parsed()) {
      return cmd_plotdata(plot_flags, figure, window_start, plot_values,
                          plot_replications);
    }
    if (selftest->parsed()) return cmd_selftest(selftest_seed);
  } catch (const hsr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
