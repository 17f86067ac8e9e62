#ifndef HSR_CHANNEL_H_
#define HSR_CHANNEL_H_

#include <cstdint>

namespace hsr {

// Track layout and slotting. Base stations sit at x = 0, 2R, 4R, ... along
// the rail, each d0 meters away from it; the train moves at constant speed.
struct Geometry {
  double cell_radius = 1500.0;   // R [m]
  double rail_offset = 50.0;     // d0 [m]
  double speed = 100.0;          // v [m/s]
  double slot_duration = 1e-3;   // Ts [s]

  double max_distance() const;    // sqrt(R^2 + d0^2)
  double cell_period_slots() const;  // 2R / (v Ts)
};

// Physical-layer constants. noise_psd is already in W/Hz.
struct RadioParams {
  double bandwidth = 5e6;          // B [Hz]
  double noise_psd = 3.98107170553497e-21;  // N0 [W/Hz], -174 dBm/Hz
  double pathloss_exponent = 4.0;  // alpha
  double packet_bits = 240.0;      // L [bit]
  double eta = 0.048;              // L / (Ts B)
  double power_max = 50.0;         // Pmax [W]
};

struct ChannelSample {
  int64_t slot = 0;
  double distance = 0.0;     // d(t) [m]
  double noise_equiv = 0.0;  // N(t) = B N0 d^alpha [W]
  double capacity_cap = 0.0; // Cmax(t), real-valued packets
};

double dbm_to_watts(double dbm);

// Floor with a 1e-9 upward nudge so that integer capacities survive the
// power <-> capacity round trip.
int64_t tolerant_floor(double x);

// Distance to the nearest base station at the start of slot t.
double distance_at(int64_t slot, const Geometry& geom);

double noise_equiv(double distance, const RadioParams& radio);

// Packets per slot at power P: floor((1/eta) log2(1 + P/N)).
int64_t link_capacity(double power, double noise, double eta);

// N (2^(eta C) - 1), the inverse of the un-floored capacity.
double power_for_capacity(double capacity, double noise, double eta);

// (1/eta) log2(1 + power_cap/N) for an arbitrary cap.
double capacity_for_power(double power_cap, double noise, double eta);

// Cmax at the radio's peak power.
double capacity_cap(const RadioParams& radio, double noise);

ChannelSample sample_channel(int64_t slot, const Geometry& geom,
                             const RadioParams& radio);

}  // namespace hsr

#endif  // HSR_CHANNEL_H_
