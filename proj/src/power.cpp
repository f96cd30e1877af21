#include "fogplace/power.hpp"

#include <cmath>
#include <stdexcept>

namespace fogplace {

double energy_per_bit(const NetworkProfile& profile) {
  if (profile.max_bitrate <= 0) {
    throw std::invalid_argument("profile " + profile.name + ": max_bitrate must be positive");
  }
  return (profile.p_max - profile.p_idle) / profile.max_bitrate;
}

double energy_per_instruction(const ProcessingProfile& profile) {
  if (profile.cpu_capacity <= 0) {
    throw std::invalid_argument("profile " + profile.name + ": cpu_capacity must be positive");
  }
  return (profile.p_max - profile.p_idle) / (profile.cpu_capacity * 1e6);
}

Watts wireless_tx_power(const WirelessModel& model, BitsPerSecond rate, Meters distance) {
  if (rate < 0) throw std::invalid_argument("wireless rate must be non-negative");
  if (distance <= 0) throw std::invalid_argument("wireless distance must be positive");
  return (model.e_elec + model.eps_amp * std::pow(distance, model.alpha)) * rate;
}

bool exceeds_capacity(double load, double capacity) {
  return load > capacity * (1.0 + 1e-12) + 1e-12;
}

int replicas_needed(Mips load, Mips per_replica) {
  if (load <= 0) return 0;
  int n = static_cast<int>(std::ceil(load / per_replica));
  // An exact multiple can round up one past the needed count.
  if (n > 1 && !exceeds_capacity(load, (n - 1) * per_replica)) --n;
  return n;
}

PowerSplit element_network_power(const NetworkProfile& profile, BitsPerSecond carried,
                                 IdleRule rule) {
  if (carried < 0) throw std::invalid_argument("carried load must be non-negative");
  if (exceeds_capacity(carried, profile.max_bitrate)) {
    throw CapacityError(profile.name, carried, profile.max_bitrate);
  }
  PowerSplit split;
  switch (rule) {
    case IdleRule::Full:
      split.idle = carried > 0 ? profile.p_idle : 0.0;
      break;
    case IdleRule::Shared:
      split.idle = profile.p_idle * (carried / profile.max_bitrate);
      break;
    case IdleRule::None:
      split.idle = 0.0;
      break;
  }
  split.proportional = energy_per_bit(profile) * carried;
  return split;
}

PowerSplit server_processing_power(const ProcessingProfile& profile, Mips load,
                                   int active_replicas) {
  if (load < 0) throw std::invalid_argument("processing load must be non-negative");
  if (active_replicas < 0) throw std::invalid_argument("active_replicas must be non-negative");
  if (exceeds_capacity(load, active_replicas * profile.cpu_capacity)) {
    throw CapacityError(profile.name, load, active_replicas * profile.cpu_capacity);
  }
  PowerSplit split;
  split.idle = active_replicas * profile.p_idle;
  split.proportional = energy_per_instruction(profile) * load * 1e6;
  return split;
}

Mips processing_demand(BitsPerSecond rate, double instructions_per_bit) {
  if (rate < 0) throw std::invalid_argument("rate must be non-negative");
  if (instructions_per_bit <= 0) {
    throw std::invalid_argument("instructions_per_bit must be positive");
  }
  return instructions_per_bit * rate / 1e6;
}

}  // namespace fogplace
