#ifndef FOGPLACE_POWER_HPP
#define FOGPLACE_POWER_HPP

#include "fogplace/model.hpp"

namespace fogplace {

/// Idle and load-proportional watt components of one element or server pool.
struct PowerSplit {
  Watts idle = 0;
  Watts proportional = 0;
  Watts total() const { return idle + proportional; }
};

/// Load-proportional slope of a network element: (p_max - p_idle) / bitrate.
double energy_per_bit(const NetworkProfile& profile);

/// Load-proportional slope of a server: (p_max - p_idle) / (capacity * 1e6).
double energy_per_instruction(const ProcessingProfile& profile);

/// Transmit power of the first-order radio model,
/// (e_elec + eps_amp * distance^alpha) * rate.
Watts wireless_tx_power(const WirelessModel& model, BitsPerSecond rate, Meters distance);

/// Power attributed to a wired element carrying `carried` bits/s:
///   Full   -> p_idle when loaded, plus energy_per_bit * carried
///   Shared -> p_idle * carried / max_bitrate, plus energy_per_bit * carried
///   None   -> energy_per_bit * carried
/// Throws CapacityError when carried exceeds the element bitrate.
PowerSplit element_network_power(const NetworkProfile& profile, BitsPerSecond carried,
                                 IdleRule rule);

/// Power of a server pool: p_idle per activated replica plus
/// energy_per_instruction * load. Idle is always charged in full per replica.
/// Throws CapacityError when load exceeds the activated capacity.
PowerSplit server_processing_power(const ProcessingProfile& profile, Mips load,
                                   int active_replicas);

/// MIPS required to process `rate` bits/s at `instructions_per_bit`.
Mips processing_demand(BitsPerSecond rate, double instructions_per_bit);

/// Default processing intensity: 750 instructions per data bit.
inline constexpr double kDefaultInstructionsPerBit = 750.0;

/// FP-tolerant capacity test used everywhere a load is compared against a
/// capacity, so that exact-fit placements never trip rounding.
bool exceeds_capacity(double load, double capacity);

/// Replicas needed for `load` MIPS at `per_replica` MIPS each (0 for no load).
int replicas_needed(Mips load, Mips per_replica);

}  // namespace fogplace

#endif  // FOGPLACE_POWER_HPP
