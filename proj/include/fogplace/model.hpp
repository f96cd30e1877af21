#ifndef FOGPLACE_MODEL_HPP
#define FOGPLACE_MODEL_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fogplace {

using Watts = double;
using BitsPerSecond = double;
using Mips = double;  // millions of instructions per second
using Meters = double;

/// Thrown when an element or server pool is offered more load than it can carry.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& subject, double offered, double capacity);
  const std::string& subject() const { return subject_; }

 private:
  std::string subject_;
};

/// Aggregation layers in uplink order. Metro and Core carry transit traffic
/// only and never host processing.
enum class Layer { IoT, AccessFog, EdgeFog, Metro, Core, CloudDC };

inline constexpr int kLayerCount = 6;

/// Layers that may host processing, in placement preference order.
inline constexpr std::array<Layer, 4> kProcessingLayers = {
    Layer::IoT, Layer::AccessFog, Layer::EdgeFog, Layer::CloudDC};

const char* to_string(Layer layer);
std::optional<Layer> layer_from_string(const std::string& name);
bool is_processing_layer(Layer layer);

/// CPU capacity and power envelope of one server class.
struct ProcessingProfile {
  std::string name;
  Mips cpu_capacity = 0;  // per server
  Watts p_max = 0;
  Watts p_idle = 0;
  double instructions_per_hz = 0;
  double clock_ghz = 0;
  Layer layer = Layer::IoT;
};

/// Bitrate and power envelope of one network element class.
struct NetworkProfile {
  std::string name;
  BitsPerSecond max_bitrate = 0;
  Watts p_max = 0;
  Watts p_idle = 0;
  Layer layer = Layer::IoT;
};

/// How much of an element's idle draw is attributed to the studied traffic.
enum class IdleRule { Full, Shared, None };

const char* to_string(IdleRule rule);
std::optional<IdleRule> idle_rule_from_string(const std::string& name);

/// Per-layer idle-attribution rule for network elements. Processing idle is
/// not configurable: every activated server replica is charged its full
/// p_idle.
///
/// Defaults charge edge equipment (IoT, Access Fog) in full once it carries
/// any load, and shared aggregation fabric (Edge Fog and above) in proportion
/// to the carried fraction of its capacity.
class IdleAttributionPolicy {
 public:
  IdleAttributionPolicy();
  IdleRule network_rule(Layer layer) const;
  void set_network_rule(Layer layer, IdleRule rule);
  bool operator==(const IdleAttributionPolicy&) const = default;

 private:
  std::array<IdleRule, kLayerCount> rules_;
};

/// First-order radio model for the IoT uplink hop: transmitting at `rate`
/// over distance d costs (e_elec + eps_amp * d^alpha) * rate watts.
struct WirelessModel {
  double e_elec = 0;     // J/bit, electronics energy
  double eps_amp = 0;    // J/bit/m^alpha, amplifier coefficient
  double alpha = 2.0;    // path-loss exponent
};

/// Wireless constants used unless a run configuration overrides them:
/// e_elec from the WiFi interface profile, eps_amp 10 pJ/bit/m^2, alpha 2.
WirelessModel default_wireless();

/// Replica marker for the cloud's unlimited server pool.
inline constexpr int kUnboundedReplicas = -1;

struct Node {
  std::string id;
  Layer layer = Layer::IoT;
  std::optional<ProcessingProfile> processing;
  int replica_count = 0;  // servers at this node; kUnboundedReplicas for cloud
  std::optional<NetworkProfile> networking;
  std::string parent;     // empty only for the cloud-DC root
};

/// One uplink demand originating at an IoT device. A request is atomic: it is
/// assigned to exactly one processing node.
struct ServiceRequest {
  std::string id;
  std::string source;       // IoT node id
  BitsPerSecond rate = 0;
  Mips proc_demand = 0;     // instructions_per_bit * rate / 1e6
};

/// A problem found by validate_topology. Values outside the parameter ranges
/// studied in the reference experiment are warnings; structural breaks are
/// errors.
struct Violation {
  enum class Severity { Warning, Error };
  Severity severity = Severity::Error;
  std::string subject;
  std::string message;

  std::string str() const { return subject + ": " + message; }
};

/// Rooted aggregation tree of IoT devices, access/aggregation elements and
/// server pools, plus the per-device wireless distances. Immutable once
/// finalize() has run; safe to share read-only across threads.
class Topology {
 public:
  void add_node(Node node);
  void set_distance(const std::string& iot_id, Meters distance);
  void set_wireless(const WirelessModel& model);

  /// Builds the node index and the per-device path table. Tolerates broken
  /// trees (validate_topology reports them); devices without a resolvable
  /// host at some layer simply have no path entry there.
  void finalize();

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node* find(const std::string& id) const;
  const Node* root() const;
  const std::map<std::string, Meters>& distances() const { return distances_; }
  Meters distance(const std::string& iot_id) const;
  const WirelessModel& wireless() const { return wireless_; }

  /// Network elements (node ids carrying a networking profile) traversed from
  /// `source` to the processing host at `dest_layer`, in uplink order. Local
  /// processing uses no network, so dest_layer == IoT yields an empty list.
  /// Throws std::invalid_argument for unknown sources and for the transit-only
  /// Metro/Core layers.
  std::vector<std::string> path(const std::string& source, Layer dest_layer) const;

  /// The unique node hosting processing for `source` at `layer`, or nullptr
  /// when the layer offers none for this device.
  const Node* processing_host(const std::string& source, Layer layer) const;

 private:
  struct HostPath {
    std::string host;
    std::vector<std::string> elements;
  };

  static int processing_layer_index(Layer layer);

  std::vector<Node> nodes_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, Meters> distances_;
  std::map<std::string, std::array<std::optional<HostPath>, 4>> path_table_;
  WirelessModel wireless_ = default_wireless();
  bool finalized_ = false;
};

/// Distance range studied in the reference experiment; values outside it are
/// flagged as warnings, not errors.
inline constexpr Meters kPaperDistanceMin = 10.0;
inline constexpr Meters kPaperDistanceMax = 50.0;

/// Checks every structural invariant (tree shape, parent links, replica
/// counts, profile sanity, per-device reachability) plus the studied distance
/// range. Returns an empty list iff the topology is clean.
std::vector<Violation> validate_topology(const Topology& topology);

/// Which server class the cloud data center runs.
enum class CloudServerType { GP, SP };

const char* to_string(CloudServerType type);
std::optional<CloudServerType> cloud_server_from_string(const std::string& name);

/// One placement policy under study: which layers may host services, which
/// cloud server class backs them, and how idle power is attributed.
struct Scenario {
  std::string name;
  std::set<Layer> allowed_layers;
  CloudServerType cloud_server = CloudServerType::GP;
  IdleAttributionPolicy idle_policy;
  bool cloud_fallback = false;  // cloud admissible as overflow even when not allowed
};

/// Assignment of every service to a processing node, plus the number of
/// powered-on server replicas per node.
struct Placement {
  std::map<std::string, std::string> assignment;   // service id -> node id
  std::map<std::string, int> active_replicas;      // node id -> powered-on servers
};

/// Power totals of an evaluated placement. grand_total carries the same sum
/// partitioned two ways: processing + network, and idle + proportional.
struct PowerBreakdown {
  std::map<std::string, Watts> per_element;  // node id -> watts at that node
  Watts processing_total = 0;
  Watts network_total = 0;
  Watts idle_total = 0;
  Watts proportional_total = 0;
  Watts grand_total = 0;
};

/// Built-in device rows (MIPS, max/idle watts, instructions per Hz, clock).
namespace profiles {
const ProcessingProfile& rpi_zero();
const ProcessingProfile& rpi3();
const ProcessingProfile& gp_server();
const ProcessingProfile& sp_server();
std::vector<ProcessingProfile> all_processing();

const NetworkProfile& wifi_interface();
const NetworkProfile& onu();
const NetworkProfile& olt();
const NetworkProfile& ethernet_switch();
const NetworkProfile& edge_router();
const NetworkProfile& ip_wdm();
std::vector<NetworkProfile> all_network();
}  // namespace profiles

}  // namespace fogplace

#endif  // FOGPLACE_MODEL_HPP
