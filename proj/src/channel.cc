#include "hsr/channel.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace hsr {

namespace {
constexpr double kFloorNudge = 1e-9;
}  // namespace

double Geometry::max_distance() const {
  return std::hypot(cell_radius, rail_offset);
}

double Geometry::cell_period_slots() const {
  return 2.0 * cell_radius / (speed * slot_duration);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

int64_t tolerant_floor(double x) {
  return static_cast<int64_t>(std::floor(x + kFloorNudge));
}

double distance_at(int64_t slot, const Geometry& geom) {
  const double span = 2.0 * geom.cell_radius;
  const double travelled =
      geom.speed * static_cast<double>(slot) * geom.slot_duration;
  const double x = std::fmod(travelled, span);
  const double horizontal = std::min(x, span - x);
  return std::hypot(horizontal, geom.rail_offset);
}

double noise_equiv(double distance, const RadioParams& radio) {
  return radio.bandwidth * radio.noise_psd *
         std::pow(distance, radio.pathloss_exponent);
}

int64_t link_capacity(double power, double noise, double eta) {
  if (power <= 0.0) return 0;
  return std::max<int64_t>(
      0, tolerant_floor(std::log2(1.0 + power / noise) / eta));
}

double power_for_capacity(double capacity, double noise, double eta) {
  if (capacity <= 0.0) return 0.0;
  const double exponent = eta * capacity * std::numbers::ln2;
  assert(exponent < 700.0 && "2^(eta C) overflows");
  return noise * std::expm1(exponent);
}

double capacity_for_power(double power_cap, double noise, double eta) {
  if (power_cap <= 0.0) return 0.0;
  return std::log2(1.0 + power_cap / noise) / eta;
}

double capacity_cap(const RadioParams& radio, double noise) {
  return capacity_for_power(radio.power_max, noise, radio.eta);
}

ChannelSample sample_channel(int64_t slot, const Geometry& geom,
                             const RadioParams& radio) {
  ChannelSample s;
  s.slot = slot;
  s.distance = distance_at(slot, geom);
  s.noise_equiv = noise_equiv(s.distance, radio);
  s.capacity_cap = capacity_cap(radio, s.noise_equiv);
  return s;
}

}  // namespace hsr
