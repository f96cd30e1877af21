#ifndef FOGPLACE_INSTANCE_HPP
#define FOGPLACE_INSTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fogplace/model.hpp"
#include "fogplace/power.hpp"

namespace fogplace {

enum class AssignmentMode { Random, Balanced };

const char* to_string(AssignmentMode mode);
std::optional<AssignmentMode> assignment_mode_from_string(const std::string& name);

/// Parameters of one generated problem instance. Defaults reproduce the
/// studied setup: 25 devices over 8 ONUs, 10-50 m from their access point,
/// homogeneous demands.
struct InstanceSpec {
  int n_devices = 25;
  int n_onus = 8;
  BitsPerSecond rate = 0.5e6;
  Meters distance_min = 10.0;
  Meters distance_max = 50.0;
  AssignmentMode assignment_mode = AssignmentMode::Balanced;
  std::uint64_t seed = 1;
  double instructions_per_bit = kDefaultInstructionsPerBit;
};

/// Knobs of the fixed aggregation tree that are not spelled out by the
/// device tables: how many core hops the aggregate IP/WDM element stands for,
/// and the wireless radio constants.
struct TopologyOptions {
  int core_hop_count = 3;
  WirelessModel wireless = default_wireless();
  int edge_dc_servers = 10;  // GP servers in the micro-DC at the OLT
};

struct Instance {
  Topology topology;
  std::vector<ServiceRequest> requests;
};

/// Node ids of the fixed tree built by generate().
namespace node_ids {
inline const std::string kOlt = "olt";
inline const std::string kMicroDcSwitch = "microdc-switch";
inline const std::string kMicroDc = "microdc";
inline const std::string kMetroSwitch = "metro-switch";
inline const std::string kEdgeRouter = "edge-router";
inline const std::string kCoreAggregate = "core-aggregate";
inline const std::string kDcSwitch = "dc-switch";
inline const std::string kCloudDc = "cloud-dc";
std::string iot(int i);
std::string onu(int i);
std::string request(int i);
}  // namespace node_ids

/// Builds the four-layer instance deterministically from (spec, options).
/// Random mode draws each device's ONU uniformly; Balanced assigns
/// round-robin. Distances are uniform in [distance_min, distance_max]. The
/// same inputs always yield bit-identical output.
Instance generate(const InstanceSpec& spec, const TopologyOptions& options = {});

/// Copies of `requests` re-rated to `rate`, with proc_demand recomputed.
std::vector<ServiceRequest> with_rate(const std::vector<ServiceRequest>& requests,
                                      BitsPerSecond rate, double instructions_per_bit);

/// [start, start+step, ...] in Mbps, never exceeding end.
std::vector<double> sweep_rates(double start_mbps, double end_mbps, double step_mbps);

/// Default sweep studied in the experiment: 0.5 to 4.5 Mbps in 0.5 steps.
std::vector<double> default_sweep_rates();

/// Replay serialization: a dumped instance reloads bit-identically.
nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

}  // namespace fogplace

#endif  // FOGPLACE_INSTANCE_HPP
