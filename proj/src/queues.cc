#include "hsr/queues.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hsr {

SystemState SystemState::zero(int num_services) {
  SystemState s;
  s.backlog.assign(num_services, 0);
  s.delay_queue.assign(num_services, 0.0);
  s.power_queue.assign(num_services, 0.0);
  return s;
}

int64_t SystemState::total_backlog() const {
  return std::accumulate(backlog.begin(), backlog.end(), int64_t{0});
}

double SystemState::power_queue_sum() const {
  return std::accumulate(power_queue.begin(), power_queue.end(), 0.0);
}

double PoissonSampler::unit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

int64_t PoissonSampler::draw(std::mt19937_64& engine, double rate) {
  if (rate <= 0.0) return 0;
  const int chunks = static_cast<int>(std::ceil(rate / kMaxChunk));
  const double chunk_rate = rate / chunks;
  const double p0 = std::exp(-chunk_rate);
  int64_t total = 0;
  for (int c = 0; c < chunks; ++c) {
    const double u = unit(engine);
    int64_t k = 0;
    double p = p0;
    double cdf = p0;
    while (u > cdf && p > 0.0) {
      ++k;
      p *= chunk_rate / static_cast<double>(k);
      cdf += p;
    }
    total += k;
  }
  return total;
}

uint64_t ArrivalSource::stream_seed(uint64_t seed, int service) {
  return seed + 0x9E3779B97F4A7C15ULL * static_cast<uint64_t>(service + 1);
}

ArrivalSource::ArrivalSource(uint64_t seed, std::vector<double> rates)
    : rates_(std::move(rates)) {
  streams_.reserve(rates_.size());
  for (size_t k = 0; k < rates_.size(); ++k) {
    streams_.emplace_back(stream_seed(seed, static_cast<int>(k)));
  }
}

ArrivalBatch ArrivalSource::sample() {
  ArrivalBatch batch;
  batch.counts.resize(rates_.size());
  batch.dropped.assign(rates_.size(), 0);
  for (size_t k = 0; k < rates_.size(); ++k) {
    batch.counts[k] = PoissonSampler::draw(streams_[k], rates_[k]);
  }
  return batch;
}

ArrivalBatch sample_arrivals(ArrivalSource& source) { return source.sample(); }

void update_real_queue(SystemState& state, std::span<const int64_t> mu,
                       ArrivalBatch& arrivals, int64_t buffer_cap) {
  const size_t n = state.backlog.size();
  if (mu.size() != n || arrivals.counts.size() != n) {
    throw std::invalid_argument("update_real_queue: size mismatch");
  }
  for (size_t k = 0; k < n; ++k) {
    if (mu[k] < 0 || mu[k] > state.backlog[k]) {
      throw std::invalid_argument(
          "update_real_queue: mu[" + std::to_string(k) + "]=" +
          std::to_string(mu[k]) + " outside [0, " +
          std::to_string(state.backlog[k]) + "]");
    }
  }
  arrivals.dropped.assign(n, 0);
  for (size_t k = 0; k < n; ++k) {
    const int64_t next = state.backlog[k] - mu[k] + arrivals.counts[k];
    if (next > buffer_cap) {
      arrivals.dropped[k] = next - buffer_cap;
      state.backlog[k] = buffer_cap;
    } else {
      state.backlog[k] = next;
    }
  }
}

void update_virtual_delay(SystemState& state, const TrafficParams& traffic) {
  for (int k = 0; k < state.size(); ++k) {
    state.delay_queue[k] =
        std::max(state.delay_queue[k] - traffic.delay_budget(k), 0.0) +
        static_cast<double>(state.backlog[k]);
  }
}

void update_virtual_power(SystemState& state, double power, double power_avg) {
  for (double& y : state.power_queue) {
    y = std::max(y - power_avg, 0.0) + power;
  }
}

double lyapunov_value(const SystemState& state, double omega) {
  double xx = 0.0;
  double yy = 0.0;
  for (double x : state.delay_queue) xx += x * x;
  for (double y : state.power_queue) yy += y * y;
  return 0.5 * (xx + omega * yy);
}

double drift_constant_D(const TrafficParams& traffic, double power_max,
                        double omega) {
  const double qmax = static_cast<double>(traffic.buffer_cap);
  double d = 0.0;
  for (int k = 0; k < traffic.num_services; ++k) {
    const double budget = traffic.delay_budget(k);
    d += qmax * qmax + budget * budget +
         omega * (power_max * power_max +
                  traffic.power_avg * traffic.power_avg);
  }
  return d;
}

double penalty_G(const SystemState& state, std::span<const int64_t> mu,
                 std::span<const int64_t> arrivals, double power,
                 const TrafficParams& traffic, double omega) {
  double g = 0.0;
  for (int k = 0; k < state.size(); ++k) {
    const double net = static_cast<double>(state.backlog[k] - mu[k] +
                                           arrivals[k]) -
                       traffic.delay_budget(k);
    g += state.delay_queue[k] * net +
         omega * state.power_queue[k] * (power - traffic.power_avg);
  }
  return g;
}

}  // namespace hsr
