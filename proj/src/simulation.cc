#include "hsr/simulation.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace hsr {

double SimSummary::mean_delay() const {
  if (avg_delay.empty()) return 0.0;
  return std::accumulate(avg_delay.begin(), avg_delay.end(), 0.0) /
         static_cast<double>(avg_delay.size());
}

double SimSummary::max_delay() const {
  if (avg_delay.empty()) return 0.0;
  return *std::max_element(avg_delay.begin(), avg_delay.end());
}

bool SimSummary::all_delay_ok() const {
  return std::all_of(delay_ok.begin(), delay_ok.end(), [](bool b) { return b; });
}

SummaryBuilder::SummaryBuilder(const ScenarioConfig& config, int64_t warmup)
    : config_(config),
      warmup_(warmup),
      backlog_sum_(config.traffic.num_services, 0.0),
      admitted_(config.traffic.num_services, 0),
      drops_(config.traffic.num_services, 0) {}

void SummaryBuilder::add(const SlotRecord& record,
                         std::span<const int64_t> dropped) {
  if (record.slot < warmup_) return;
  ++slots_;
  power_sum_ += record.power;
  for (size_t k = 0; k < backlog_sum_.size(); ++k) {
    backlog_sum_[k] += static_cast<double>(record.backlog[k]);
    admitted_[k] += record.arrivals[k] - dropped[k];
    drops_[k] += dropped[k];
  }
}

SimSummary SummaryBuilder::finish() const {
  if (slots_ == 0) {
    throw std::invalid_argument("summarize: no slots after warm-up");
  }
  const auto n = static_cast<double>(slots_);
  const size_t k_count = backlog_sum_.size();
  SimSummary s;
  s.slots = slots_;
  s.avg_power = power_sum_ / n;
  s.power_ok = s.avg_power <= config_.traffic.power_avg;
  s.total_drops = drops_;
  s.avg_backlog.resize(k_count);
  s.avg_delay.resize(k_count);
  s.empirical_rate.resize(k_count);
  s.delay_ok.resize(k_count);
  for (size_t k = 0; k < k_count; ++k) {
    s.avg_backlog[k] = backlog_sum_[k] / n;
    s.empirical_rate[k] = static_cast<double>(admitted_[k]) / n;
    if (s.empirical_rate[k] > 0.0) {
      s.avg_delay[k] = s.avg_backlog[k] / s.empirical_rate[k];
    } else {
      s.avg_delay[k] = s.avg_backlog[k] > 0.0
                           ? std::numeric_limits<double>::infinity()
                           : 0.0;
    }
    s.delay_ok[k] = s.avg_backlog[k] <=
                    config_.traffic.delay_bounds[k] * s.empirical_rate[k];
  }
  return s;
}

namespace {

void check_action(const ControlAction& action, const SystemState& state,
                  const ChannelSample& channel, const ScenarioConfig& config,
                  double cap) {
  const int64_t t = channel.slot;
  if (!(action.power >= 0.0) || action.power > cap * (1.0 + 1e-12)) {
    throw InvariantError("slot " + std::to_string(t) + ": power " +
                         std::to_string(action.power) + " outside [0, cap]");
  }
  if (action.power > config.radio.power_max * (1.0 + 1e-12)) {
    throw InvariantError("slot " + std::to_string(t) + ": power above Pmax");
  }
  const int64_t served = std::accumulate(action.allocation.begin(),
                                         action.allocation.end(), int64_t{0});
  if (served >
      link_capacity(action.power, channel.noise_equiv, config.radio.eta)) {
    throw InvariantError("slot " + std::to_string(t) +
                         ": allocation exceeds link capacity");
  }
  for (size_t k = 0; k < action.allocation.size(); ++k) {
    if (action.allocation[k] < 0 || action.allocation[k] > state.backlog[k]) {
      throw InvariantError("slot " + std::to_string(t) +
                           ": allocation exceeds backlog");
    }
  }
}

void check_state(const SystemState& state) {
  const double y0 = state.power_queue.front();
  for (int k = 0; k < state.size(); ++k) {
    if (state.backlog[k] < 0 ||
        state.delay_queue[k] < static_cast<double>(state.backlog[k])) {
      throw InvariantError("slot " + std::to_string(state.slot) +
                           ": X_k < Q_k or Q_k < 0");
    }
    if (state.power_queue[k] != y0 || state.power_queue[k] < 0.0) {
      throw InvariantError("slot " + std::to_string(state.slot) +
                           ": Y_k components diverged");
    }
  }
}

// FIFO bookkeeping of (arrival slot, packets) batches per service.
class PacketClock {
 public:
  explicit PacketClock(int services)
      : fifo_(services), delay_sum_(services, 0.0), delivered_(services, 0) {}

  void serve(int64_t now, std::span<const int64_t> mu) {
    for (size_t k = 0; k < fifo_.size(); ++k) {
      int64_t left = mu[k];
      while (left > 0) {
        auto& head = fifo_[k].front();
        const int64_t take = std::min(left, head.second);
        delay_sum_[k] += static_cast<double>(take * (now - head.first));
        delivered_[k] += take;
        head.second -= take;
        left -= take;
        if (head.second == 0) fifo_[k].pop_front();
      }
    }
  }

  void admit(int64_t now, const ArrivalBatch& batch) {
    for (size_t k = 0; k < fifo_.size(); ++k) {
      const int64_t n = batch.counts[k] - batch.dropped[k];
      if (n > 0) fifo_[k].emplace_back(now, n);
    }
  }

  std::vector<double> mean_delay() const {
    std::vector<double> out(fifo_.size(), 0.0);
    for (size_t k = 0; k < fifo_.size(); ++k) {
      if (delivered_[k] > 0) {
        out[k] = delay_sum_[k] / static_cast<double>(delivered_[k]);
      }
    }
    return out;
  }

 private:
  std::vector<std::deque<std::pair<int64_t, int64_t>>> fifo_;
  std::vector<double> delay_sum_;
  std::vector<int64_t> delivered_;
};

}  // namespace

RunResult run(const ScenarioConfig& config, const Policy& policy,
              uint64_t seed, const RunOptions& options) {
  config.validate();
  const int services = config.traffic.num_services;
  SystemState state = SystemState::zero(services);
  ArrivalSource source(seed, config.traffic.arrival_rates);
  SummaryBuilder summary(config, config.warmup);
  PacketClock packets(services);

  RunResult result;
  if (options.keep_trace) result.trace.reserve(config.horizon);

  for (int64_t t = 0; t < config.horizon; ++t) {
    state.slot = t;
    const ChannelSample channel =
        sample_channel(t, config.geometry, config.radio);
    ControlAction action = policy.decide(state, channel, config);
    if (options.check_invariants) {
      check_action(action, state, channel, config,
                   policy.power_cap(t, config));
    }

    SlotRecord rec;
    rec.slot = t;
    rec.distance = channel.distance;
    rec.noise = channel.noise_equiv;
    rec.power = action.power;
    rec.capacity = action.capacity;
    rec.served = std::accumulate(action.allocation.begin(),
                                 action.allocation.end(), int64_t{0});
    rec.backlog = state.backlog;
    rec.delay_queue = state.delay_queue;
    rec.power_queue = state.power_queue.front();

    ArrivalBatch batch = sample_arrivals(source);
    if (options.track_packets) packets.serve(t, action.allocation);
    update_real_queue(state, action.allocation, batch,
                      config.traffic.buffer_cap);
    if (options.track_packets) packets.admit(t, batch);
    update_virtual_delay(state, config.traffic);
    update_virtual_power(state, action.power, config.traffic.power_avg);
    state.slot = t + 1;

    rec.allocation = std::move(action.allocation);
    rec.arrivals = std::move(batch.counts);
    rec.drops = std::accumulate(batch.dropped.begin(), batch.dropped.end(),
                                int64_t{0});
    summary.add(rec, batch.dropped);
    if (options.check_invariants) check_state(state);
    if (options.keep_trace) result.trace.push_back(std::move(rec));
  }

  result.summary = summary.finish();
  if (options.track_packets) result.summary.packet_delay = packets.mean_delay();
  result.final_state = std::move(state);
  return result;
}

SimSummary summarize(const Trace& trace, const ScenarioConfig& config) {
  return summarize(trace, config, config.warmup);
}

SimSummary summarize(const Trace& trace, const ScenarioConfig& config,
                     int64_t warmup) {
  if (trace.empty()) throw std::invalid_argument("summarize: empty trace");
  SummaryBuilder builder(config, warmup);
  std::vector<int64_t> dropped(config.traffic.num_services);
  for (const SlotRecord& r : trace) {
    for (size_t k = 0; k < dropped.size(); ++k) {
      const int64_t next = r.backlog[k] - r.allocation[k] + r.arrivals[k];
      dropped[k] = std::max<int64_t>(next - config.traffic.buffer_cap, 0);
    }
    builder.add(r, dropped);
  }
  return builder.finish();
}

std::optional<int64_t> find_replay_mismatch(const Trace& trace,
                                            const ScenarioConfig& config) {
  const TrafficParams& traffic = config.traffic;
  for (size_t i = 0; i + 1 < trace.size(); ++i) {
    const SlotRecord& cur = trace[i];
    const SlotRecord& next = trace[i + 1];
    int64_t drops = 0;
    int64_t served = 0;
    for (int k = 0; k < traffic.num_services; ++k) {
      const int64_t raw = cur.backlog[k] - cur.allocation[k] + cur.arrivals[k];
      const int64_t q = std::min(raw, traffic.buffer_cap);
      drops += raw - q;
      served += cur.allocation[k];
      const double x = std::max(cur.delay_queue[k] - traffic.delay_budget(k),
                                0.0) +
                       static_cast<double>(q);
      if (q != next.backlog[k] || x != next.delay_queue[k]) {
        return static_cast<int64_t>(i);
      }
    }
    const double y =
        std::max(cur.power_queue - traffic.power_avg, 0.0) + cur.power;
    if (y != next.power_queue || drops != cur.drops || served != cur.served ||
        next.slot != cur.slot + 1) {
      return static_cast<int64_t>(i);
    }
  }
  return std::nullopt;
}

}  // namespace hsr
