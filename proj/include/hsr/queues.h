#ifndef HSR_QUEUES_H_
#define HSR_QUEUES_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace hsr {

struct TrafficParams {
  int num_services = 6;                 // K
  std::vector<double> arrival_rates;    // lambda_k [packets/slot]
  std::vector<double> delay_bounds;     // W_k^av [slots]
  double power_avg = 36.0;              // Pav [W]
  int64_t buffer_cap = 1'000'000;       // Qmax [packets]

  // lambda_k W_k^av, the per-slot service offered to X_k.
  double delay_budget(int k) const { return arrival_rates[k] * delay_bounds[k]; }
};

// Real queues Q_k, virtual delay queues X_k and virtual power queues Y_k.
// Y holds K identical entries; check_invariants() guards that.
struct SystemState {
  std::vector<int64_t> backlog;
  std::vector<double> delay_queue;
  std::vector<double> power_queue;
  int64_t slot = 0;

  static SystemState zero(int num_services);
  int size() const { return static_cast<int>(backlog.size()); }
  int64_t total_backlog() const;
  double power_queue_sum() const;
};

struct ArrivalBatch {
  std::vector<int64_t> counts;
  std::vector<int64_t> dropped;
};

// Exact Poisson sampler by sequential inversion. Rates above kMaxChunk are
// split into equal chunks and summed, which keeps the draw exact.
class PoissonSampler {
 public:
  static constexpr double kMaxChunk = 30.0;

  static int64_t draw(std::mt19937_64& engine, double rate);

  // 53-bit uniform in [0, 1) from a 64-bit engine; stable across platforms.
  static double unit(std::mt19937_64& engine);
};

// One mt19937_64 stream per service, seeded from the master seed at fixed
// offsets so two policies run with the same seed see identical arrivals.
class ArrivalSource {
 public:
  ArrivalSource(uint64_t seed, std::vector<double> rates);

  ArrivalBatch sample();
  const std::vector<double>& rates() const { return rates_; }

  static uint64_t stream_seed(uint64_t seed, int service);

 private:
  std::vector<double> rates_;
  std::vector<std::mt19937_64> streams_;
};

ArrivalBatch sample_arrivals(ArrivalSource& source);

// Q_k(t+1) = min(Q_k(t) - mu_k + A_k, Qmax). Overflow lands in
// arrivals.dropped. Throws std::invalid_argument if mu_k is outside
// [0, Q_k(t)].
void update_real_queue(SystemState& state, std::span<const int64_t> mu,
                       ArrivalBatch& arrivals, int64_t buffer_cap);

// X_k(t+1) = max(X_k(t) - W_k^av lambda_k, 0) + Q_k(t+1). Expects the real
// queues to already hold Q(t+1).
void update_virtual_delay(SystemState& state, const TrafficParams& traffic);

// Y_k(t+1) = max(Y_k(t) - Pav, 0) + P for every k.
void update_virtual_power(SystemState& state, double power, double power_avg);

// 1/2 (sum X_k^2 + omega sum Y_k^2)
double lyapunov_value(const SystemState& state, double omega);

// sum_k [Qmax^2 + (lambda_k W_k^av)^2 + omega (Pmax^2 + Pav^2)]
double drift_constant_D(const TrafficParams& traffic, double power_max,
                        double omega);

// sum_k [X_k (Q_k - mu_k + A_k - lambda_k W_k^av) + omega Y_k (P - Pav)]
double penalty_G(const SystemState& state, std::span<const int64_t> mu,
                 std::span<const int64_t> arrivals, double power,
                 const TrafficParams& traffic, double omega);

}  // namespace hsr

#endif  // HSR_QUEUES_H_
