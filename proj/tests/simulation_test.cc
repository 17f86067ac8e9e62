#include "hsr/simulation.h"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "hsr/queues.h"

namespace hsr {
namespace {

ScenarioConfig small(int64_t horizon, double rate = 20.0) {
  ScenarioConfig c = ScenarioConfig::defaults();
  c.horizon = horizon;
  c.set_uniform_traffic(rate, 15.0);
  return c;
}

RunResult run_kind(const ScenarioConfig& c, PolicyKind kind, uint64_t seed,
                   RunOptions options = {}) {
  return run(c, Policy::make(kind, c), seed, options);
}

TEST(SimulationTest, NoTrafficNoPower) {
  const ScenarioConfig c = small(2000, 0.0);
  const RunResult r = run_kind(c, PolicyKind::kProposed, 1);
  EXPECT_EQ(r.summary.avg_power, 0.0);
  for (const SlotRecord& rec : r.trace) {
    EXPECT_EQ(std::accumulate(rec.backlog.begin(), rec.backlog.end(),
                              int64_t{0}),
              0);
  }
  for (double w : r.summary.avg_delay) EXPECT_EQ(w, 0.0);
}

TEST(SimulationTest, DeterministicForFixedSeed) {
  const ScenarioConfig c = small(3000);
  for (PolicyKind kind : kAllPolicies) {
    const RunResult a = run_kind(c, kind, 7);
    const RunResult b = run_kind(c, kind, 7);
    EXPECT_TRUE(a.trace == b.trace) << policy_name(kind);
  }
  EXPECT_FALSE(run_kind(c, PolicyKind::kProposed, 7).trace ==
               run_kind(c, PolicyKind::kProposed, 8).trace);
}

TEST(SimulationTest, PoliciesShareArrivalPaths) {
  const ScenarioConfig c = small(2000);
  const Trace a = run_kind(c, PolicyKind::kProposed, 3).trace;
  const Trace b = run_kind(c, PolicyKind::kStaticWfpa, 3).trace;
  for (size_t t = 0; t < a.size(); ++t) {
    ASSERT_EQ(a[t].arrivals, b[t].arrivals);
  }
}

TEST(SimulationTest, TraceReplays) {
  ScenarioConfig c = small(5000, 25.0);
  c.radio.power_max = 100.0;
  for (PolicyKind kind : kAllPolicies) {
    const Trace t = run_kind(c, kind, 11).trace;
    EXPECT_FALSE(find_replay_mismatch(t, c).has_value()) << policy_name(kind);
  }
}

TEST(SimulationTest, ReplayDetectsTampering) {
  const ScenarioConfig c = small(500);
  Trace t = run_kind(c, PolicyKind::kProposed, 2).trace;
  t[200].backlog[3] += 1;
  const std::optional<int64_t> bad = find_replay_mismatch(t, c);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(*bad, 199);
  Trace u = run_kind(c, PolicyKind::kProposed, 2).trace;
  u[300].power_queue += 1e-9;
  EXPECT_TRUE(find_replay_mismatch(u, c).has_value());
}

TEST(SimulationTest, TraceRecordsStartOfSlotState) {
  const ScenarioConfig c = small(50);
  const Trace t = run_kind(c, PolicyKind::kProposed, 4).trace;
  EXPECT_EQ(t.front().backlog, std::vector<int64_t>(6, 0));
  EXPECT_EQ(t.front().power, 0.0);
  for (size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t[i].slot, static_cast<int64_t>(i));
    EXPECT_EQ(t[i].served, std::accumulate(t[i].allocation.begin(),
                                           t[i].allocation.end(), int64_t{0}));
    EXPECT_LE(t[i].served, t[i].capacity);
  }
}

TEST(SimulationTest, PowerNeverAbovePeak) {
  ScenarioConfig c = small(30000, 23.0);
  c.radio.power_max = 40.0;
  for (PolicyKind kind : kAllPolicies) {
    const Trace t = run_kind(c, kind, 5).trace;
    for (const SlotRecord& r : t) ASSERT_LE(r.power, 40.0);
  }
}

TEST(SimulationTest, ProfileAbovePeakAborts) {
  const ScenarioConfig c = small(100);
  const Policy bad(PolicyKind::kStaticCpa, std::vector<double>(100, 60.0));
  EXPECT_THROW(run(c, bad, 1), InvariantError);
}

TEST(SimulationTest, ShortProfileAborts) {
  const ScenarioConfig c = small(100);
  const Policy bad(PolicyKind::kStaticCpa, std::vector<double>(10, 30.0));
  EXPECT_THROW(run(c, bad, 1), std::out_of_range);
}

TEST(SimulationTest, SummaryMatchesTrace) {
  const ScenarioConfig c = small(4000);
  const RunResult r = run_kind(c, PolicyKind::kDynamicWfpa, 9);
  const SimSummary s = summarize(r.trace, c);
  EXPECT_EQ(s.avg_power, r.summary.avg_power);
  EXPECT_EQ(s.avg_backlog, r.summary.avg_backlog);
  EXPECT_EQ(s.avg_delay, r.summary.avg_delay);
  EXPECT_EQ(s.delay_ok, r.summary.delay_ok);
  EXPECT_EQ(s.total_drops, r.summary.total_drops);
  double p = 0.0;
  for (const SlotRecord& rec : r.trace) p += rec.power;
  EXPECT_DOUBLE_EQ(s.avg_power, p / 4000.0);
  EXPECT_THROW(summarize(Trace{}, c), std::invalid_argument);
}

TEST(SimulationTest, KeepTraceOffGivesSameSummary) {
  const ScenarioConfig c = small(3000);
  RunOptions lean;
  lean.keep_trace = false;
  const RunResult a = run_kind(c, PolicyKind::kProposed, 6);
  const RunResult b = run_kind(c, PolicyKind::kProposed, 6, lean);
  EXPECT_TRUE(b.trace.empty());
  EXPECT_EQ(a.summary.avg_power, b.summary.avg_power);
  EXPECT_EQ(a.summary.avg_backlog, b.summary.avg_backlog);
  EXPECT_EQ(a.final_state.delay_queue, b.final_state.delay_queue);
}

TEST(SimulationTest, WarmupExcludesLeadingSlots) {
  const ScenarioConfig c = small(1000);
  const Trace t = run_kind(c, PolicyKind::kStaticCpa, 1).trace;
  const SimSummary s = summarize(t, c, 100);
  EXPECT_EQ(s.slots, 900);
  double q = 0.0;
  for (size_t i = 100; i < t.size(); ++i) q += t[i].backlog[0];
  EXPECT_DOUBLE_EQ(s.avg_backlog[0], q / 900.0);
}

SlotRecord synthetic(int64_t slot, double power, int64_t q, int64_t a) {
  SlotRecord r;
  r.slot = slot;
  r.power = power;
  r.backlog = {q};
  r.allocation = {0};
  r.arrivals = {a};
  r.delay_queue = {static_cast<double>(q)};
  return r;
}

TEST(SummaryTest, ArithmeticExamples) {
  ScenarioConfig c = ScenarioConfig::defaults();
  c.traffic.num_services = 1;
  c.traffic.arrival_rates = {20.0};
  c.traffic.delay_bounds = {15.0};
  Trace t;
  for (int i = 0; i < 10; ++i) t.push_back(synthetic(i, 36.0, 300, 20));
  const SimSummary s = summarize(t, c);
  EXPECT_EQ(s.avg_power, 36.0);
  EXPECT_TRUE(s.power_ok);
  EXPECT_EQ(s.empirical_rate[0], 20.0);
  EXPECT_EQ(s.avg_delay[0], 15.0);
  EXPECT_TRUE(s.delay_ok[0]);

  Trace over;
  for (int i = 0; i < 10; ++i) over.push_back(synthetic(i, 36.5, 301, 20));
  const SimSummary o = summarize(over, c);
  EXPECT_FALSE(o.power_ok);
  EXPECT_FALSE(o.delay_ok[0]);
  EXPECT_EQ(o.delay_ok[0], o.avg_backlog[0] <= 15.0 * o.empirical_rate[0]);
}

TEST(SummaryTest, NoArrivalsWithBacklogIsInfiniteDelay) {
  ScenarioConfig c = ScenarioConfig::defaults();
  c.traffic.num_services = 1;
  c.traffic.arrival_rates = {20.0};
  c.traffic.delay_bounds = {15.0};
  const Trace t{synthetic(0, 0.0, 5, 0)};
  EXPECT_TRUE(std::isinf(summarize(t, c).avg_delay[0]));
}

TEST(SimulationTest, LittleLawMatchesPacketDelay) {
  ScenarioConfig c = small(30000, 23.0);
  c.radio.power_max = 100.0;
  c.omega = 60.0;  // expensive power, so queues build up
  RunOptions o;
  o.track_packets = true;
  const RunResult r = run_kind(c, PolicyKind::kProposed, 12, o);
  for (size_t k = 0; k < r.summary.avg_delay.size(); ++k) {
    EXPECT_GT(r.summary.avg_delay[k], 1.0);
    // Packets still queued at the horizon make up the only difference.
    EXPECT_NEAR(r.summary.packet_delay[k] / r.summary.avg_delay[k], 1.0, 0.02)
        << "service " << k;
  }
}

TEST(SimulationTest, EmpiricalRateWithinThreeSigma) {
  const ScenarioConfig c = small(20000);
  const RunResult r = run_kind(c, PolicyKind::kProposed, 21);
  for (double rate : r.summary.empirical_rate) {
    EXPECT_LE(std::abs(rate - 20.0) / 20.0, 3.0 / std::sqrt(20.0 * 20000.0));
  }
}

TEST(SimulationTest, StaticCpaSpendsExactlyAverage) {
  const ScenarioConfig c = small(2000);
  const RunResult r = run_kind(c, PolicyKind::kStaticCpa, 1);
  EXPECT_EQ(r.summary.avg_power, 36.0);
  EXPECT_TRUE(r.summary.power_ok);
}

TEST(SimulationTest, DriftBoundAlongTrajectory) {
  ScenarioConfig c = small(5000, 23.0);
  c.traffic.buffer_cap = 5000;
  c.omega = 30.0;
  const Trace t = run_kind(c, PolicyKind::kProposed, 8).trace;
  const double d =
      drift_constant_D(c.traffic, c.radio.power_max, c.omega);
  for (size_t i = 0; i + 1 < t.size(); ++i) {
    SystemState s = SystemState::zero(6);
    s.backlog = t[i].backlog;
    s.delay_queue = t[i].delay_queue;
    s.power_queue.assign(6, t[i].power_queue);
    SystemState n = SystemState::zero(6);
    n.delay_queue = t[i + 1].delay_queue;
    n.power_queue.assign(6, t[i + 1].power_queue);
    const double g = penalty_G(s, t[i].allocation, t[i].arrivals, t[i].power,
                               c.traffic, c.omega);
    const double drift = lyapunov_value(n, c.omega) - lyapunov_value(s, c.omega);
    ASSERT_LE(drift, 0.5 * d + g + 1e-9 * (1.0 + lyapunov_value(n, c.omega)));
  }
}

// X_k(T)/T <= X_k(T/2)/(T/2) on the reference scenario (lambda 20, W 15,
// omega 0.8, Pmax 50, T = 3e5): the virtual delay queue does not grow
// linearly under the proposed policy.
TEST(SimulationTest, VirtualQueueRateStabilityProxy) {
  ScenarioConfig full = small(300000);
  ScenarioConfig half = small(150000);
  RunOptions lean;
  lean.keep_trace = false;
  const SystemState end = run_kind(full, PolicyKind::kProposed, 1, lean).final_state;
  const SystemState mid = run_kind(half, PolicyKind::kProposed, 1, lean).final_state;
  for (int k = 0; k < 6; ++k) {
    EXPECT_LE(end.delay_queue[k] / 300000.0, mid.delay_queue[k] / 150000.0)
        << "service " << k << ": X(T)=" << end.delay_queue[k]
        << " X(T/2)=" << mid.delay_queue[k];
  }
}

}  // namespace
}  // namespace hsr
