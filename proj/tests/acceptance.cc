// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   acceptance            run criteria 1..10
//   acceptance 4 7        run only the listed criteria
//
// Exit status is 0 only when every requested criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hsr/checks.h"
#include "hsr/config.h"
#include "hsr/plotdata.h"
#include "hsr/policy.h"
#include "hsr/simulation.h"
#include "hsr/trace_io.h"

namespace {

using hsr::PolicyKind;
using hsr::ScenarioConfig;

constexpr int64_t kHorizon = 300'000;
const std::vector<uint64_t> kSeeds = {1, 2, 3};

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

ScenarioConfig base_config(double rate, double power_max, double omega) {
  ScenarioConfig c = ScenarioConfig::defaults();
  c.set_uniform_traffic(rate, 15.0);
  c.radio.power_max = power_max;
  c.omega = omega;
  c.horizon = kHorizon;
  return c;
}

hsr::RunResult simulate(const ScenarioConfig& c, PolicyKind kind,
                        uint64_t seed, bool keep_trace) {
  hsr::RunOptions o;
  o.keep_trace = keep_trace;
  return hsr::run(c, hsr::Policy::make(kind, c), seed, o);
}

Outcome from_check(const hsr::checks::CheckResult& r, double time_limit) {
  Outcome o;
  o.passed = r.passed && r.seconds < time_limit;
  o.detail = r.detail + ", " + fmt(r.seconds, 3) + " s (limit " +
             fmt(time_limit, 0) + " s)";
  return o;
}

Outcome criterion1() {
  return from_check(hsr::checks::check_solver_oracle(1000, 20240601), 5.0);
}

Outcome criterion2() {
  return from_check(hsr::checks::check_greedy_exhaustive(20240602), 10.0);
}

Outcome criterion3() {
  const auto r = hsr::checks::check_discrete_concavity(1000, 20240603);
  return {r.passed, r.detail};
}

// Proposed policy, lambda 20, W 15, omega 0.8, Pmax 50, T = 3e5, 3 seeds.
Outcome criterion4() {
  const ScenarioConfig c = base_config(20.0, 50.0, 0.8);
  Outcome o{true, ""};
  std::ostringstream d;
  for (uint64_t seed : kSeeds) {
    const auto start = std::chrono::steady_clock::now();
    const hsr::SimSummary s =
        simulate(c, PolicyKind::kProposed, seed, false).summary;
    const double secs = seconds_since(start);
    const bool ok = s.max_delay() <= 16.5 && s.avg_power <= 37.8 &&
                    secs < 120.0;
    o.passed = o.passed && ok;
    d << "seed " << seed << ": max W " << fmt(s.max_delay()) << " (<= 16.5), P "
      << fmt(s.avg_power) << " W (<= 37.8), " << fmt(secs, 1) << " s; ";
  }
  o.detail = d.str();
  return o;
}

// Mean served packets per slot while d(t) <= 1.1 d0, criterion-4 config.
Outcome criterion5() {
  const ScenarioConfig c = base_config(20.0, 50.0, 0.8);
  const double limit = 1.1 * c.geometry.rail_offset;
  Outcome o{true, ""};
  std::ostringstream d;
  for (uint64_t seed : kSeeds) {
    const hsr::Trace t = simulate(c, PolicyKind::kProposed, seed, true).trace;
    double served = 0.0;
    int64_t slots = 0;
    for (const hsr::SlotRecord& r : t) {
      if (r.distance <= limit) {
        served += static_cast<double>(r.served);
        ++slots;
      }
    }
    const double mean = slots > 0 ? served / static_cast<double>(slots) : 0.0;
    const bool ok = slots > 0 && mean >= 105.0 && mean <= 135.0;
    o.passed = o.passed && ok;
    d << "seed " << seed << ": " << fmt(mean, 2) << " packets/slot over "
      << slots << " slots; ";
  }
  o.detail = d.str() + "band [105, 135]";
  return o;
}

// One cell period starting under a base station, split into thirds by slot:
// [0, W/3) is the cell-center third and [W/3, 2W/3) the cell-edge third.
Outcome criterion6() {
  ScenarioConfig c = base_config(20.0, 50.0, 0.8);
  const int64_t window = hsr::cell_period_window(c.geometry);
  c.horizon = window;
  Outcome o{true, ""};
  std::ostringstream d;
  for (PolicyKind kind : {PolicyKind::kProposed, PolicyKind::kDynamicCpa,
                          PolicyKind::kDynamicWfpa}) {
    const hsr::Trace t = simulate(c, kind, kSeeds.front(), true).trace;
    double center = 0.0;
    double edge = 0.0;
    for (int64_t i = 0; i < window / 3; ++i) center += t[i].power;
    for (int64_t i = window / 3; i < 2 * window / 3; ++i) edge += t[i].power;
    center /= static_cast<double>(window / 3);
    edge /= static_cast<double>(2 * window / 3 - window / 3);
    o.passed = o.passed && edge > center;
    d << hsr::policy_name(kind) << ": edge " << fmt(edge) << " W vs center "
      << fmt(center) << " W; ";
  }
  o.detail = d.str();
  return o;
}

// lambda 25, Pmax 100, omega 0.8, T = 3e5, same seeds for every policy.
Outcome criterion7() {
  const ScenarioConfig c = base_config(25.0, 100.0, 0.8);
  std::map<PolicyKind, double> delay;
  for (PolicyKind kind : {PolicyKind::kProposed, PolicyKind::kDynamicWfpa,
                          PolicyKind::kDynamicCpa}) {
    double sum = 0.0;
    for (uint64_t seed : kSeeds) {
      sum += simulate(c, kind, seed, false).summary.mean_delay();
    }
    delay[kind] = sum / static_cast<double>(kSeeds.size());
  }
  const double prop = delay[PolicyKind::kProposed];
  const double wfpa = delay[PolicyKind::kDynamicWfpa];
  const double cpa = delay[PolicyKind::kDynamicCpa];
  Outcome o;
  o.passed = prop < wfpa && wfpa < cpa && prop <= 0.6 * wfpa;
  o.detail = "mean W: proposed " + fmt(prop, 6) + ", wfpa-dynamic " +
             fmt(wfpa, 6) + ", cpa-dynamic " + fmt(cpa, 6) +
             "; need proposed < wfpa < cpa and proposed <= 0.6 wfpa";
  return o;
}

// Counts adjacent pairs that move against `direction` (+1 non-decreasing,
// -1 non-increasing). Passes with no violation, or one violation of at most
// 2% relative to the earlier value.
bool monotone_with_allowance(const std::vector<double>& v, int direction,
                             std::string& note) {
  int violations = 0;
  double worst = 0.0;
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    const double step = direction * (v[i + 1] - v[i]);
    if (step < 0.0) {
      ++violations;
      worst = std::max(worst, -step / std::max(std::abs(v[i]), 1e-300));
    }
  }
  note = std::to_string(violations) + " violation(s), worst " +
         fmt(100.0 * worst, 3) + "%";
  return violations == 0 || (violations == 1 && worst <= 0.02);
}

std::string series(const std::vector<double>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt(v[i]);
  }
  return s + "]";
}

struct SweepPoint {
  double power;
  double delay;
  bool feasible;
};

std::vector<SweepPoint> sweep_points(
    const std::vector<double>& values,
    const std::function<ScenarioConfig(double)>& make) {
  std::vector<SweepPoint> out;
  for (double v : values) {
    const hsr::SimSummary s =
        simulate(make(v), PolicyKind::kProposed, kSeeds.front(), false)
            .summary;
    out.push_back({s.avg_power, s.mean_delay(), s.power_ok && s.all_delay_ok()});
  }
  return out;
}

Outcome criterion8() {
  const std::vector<double> omegas = {0.2, 0.4, 0.6, 0.8, 1.0, 1.2};
  const auto pts = sweep_points(omegas, [](double w) {
    return base_config(23.0, 100.0, w);
  });
  std::vector<double> p;
  std::vector<double> w;
  std::string feasible;
  for (size_t i = 0; i < pts.size(); ++i) {
    p.push_back(pts[i].power);
    w.push_back(pts[i].delay);
    if (pts[i].feasible) feasible += fmt(omegas[i], 1) + " ";
  }
  std::string np;
  std::string nw;
  const bool power_ok = monotone_with_allowance(p, -1, np);
  const bool delay_ok = monotone_with_allowance(w, +1, nw);
  Outcome o;
  o.passed = power_ok && delay_ok && !feasible.empty();
  o.detail = "P " + series(p) + " non-increasing: " + np + "; W " + series(w) +
             " non-decreasing: " + nw + "; feasible omega: " +
             (feasible.empty() ? "none" : feasible);
  return o;
}

Outcome criterion9() {
  const std::vector<double> pmax = {40, 60, 80, 100};
  const auto pts = sweep_points(pmax, [](double pm) {
    return base_config(23.0, pm, 0.6);
  });
  std::vector<double> p;
  std::vector<double> w;
  for (const SweepPoint& s : pts) {
    p.push_back(s.power);
    w.push_back(s.delay);
  }
  std::string np;
  std::string nw;
  const bool power_ok = monotone_with_allowance(p, +1, np);
  const bool delay_ok = monotone_with_allowance(w, -1, nw);
  return {power_ok && delay_ok, "P " + series(p) + " non-decreasing: " + np +
                                    "; W " + series(w) +
                                    " non-increasing: " + nw};
}

std::string trace_text(const hsr::Trace& t, int services) {
  std::ostringstream out;
  hsr::write_trace(t, services, out);
  return out.str();
}

// Replay every transition of every policy's trace, then check that equal
// seeds give byte-identical trace files.
Outcome criterion10() {
  ScenarioConfig c = base_config(20.0, 50.0, 0.8);
  c.horizon = 60'000;
  Outcome o{true, ""};
  std::ostringstream d;
  for (PolicyKind kind : hsr::kAllPolicies) {
    const hsr::Trace t = simulate(c, kind, 7, true).trace;
    const auto bad = hsr::find_replay_mismatch(t, c);
    if (bad) {
      o.passed = false;
      d << hsr::policy_name(kind) << " replay breaks at slot " << *bad << "; ";
    }
  }
  const int k = c.traffic.num_services;
  const std::string a = trace_text(simulate(c, PolicyKind::kProposed, 7, true).trace, k);
  const std::string b = trace_text(simulate(c, PolicyKind::kProposed, 7, true).trace, k);
  std::istringstream in(a);
  const std::string again = trace_text(hsr::read_trace(in), k);
  if (a != b) {
    o.passed = false;
    d << "same seed gave different trace files; ";
  }
  if (a != again) {
    o.passed = false;
    d << "write/read/write changed the trace file; ";
  }
  if (o.passed) {
    d << "5 policies x " << c.horizon << " transitions replay exactly; "
      << a.size() << "-byte trace reproduced byte for byte";
  }
  o.detail = d.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4,  criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    wanted.push_back(n);
  }
  if (wanted.empty()) {
    for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) {
      wanted.push_back(n);
    }
  }
  bool all = true;
  for (int n : wanted) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[n - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d: %s (%.1f s) %s\n", n,
                o.passed ? "PASS" : "FAIL", seconds_since(start),
                o.detail.c_str());
    std::fflush(stdout);
    all = all && o.passed;
  }
  return all ? 0 : 1;
}
