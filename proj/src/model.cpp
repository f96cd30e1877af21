#include "fogplace/model.hpp"

#include <algorithm>
#include <sstream>

namespace fogplace {

namespace {

std::string capacity_message(const std::string& subject, double offered, double capacity) {
  std::ostringstream oss;
  oss << subject << ": offered load " << offered << " exceeds capacity " << capacity;
  return oss.str();
}

}  // namespace

CapacityError::CapacityError(const std::string& subject, double offered, double capacity)
    : std::runtime_error(capacity_message(subject, offered, capacity)), subject_(subject) {}

const char* to_string(Layer layer) {
  switch (layer) {
    case Layer::IoT: return "IoT";
    case Layer::AccessFog: return "AccessFog";
    case Layer::EdgeFog: return "EdgeFog";
    case Layer::Metro: return "Metro";
    case Layer::Core: return "Core";
    case Layer::CloudDC: return "CloudDC";
  }
  return "?";
}

std::optional<Layer> layer_from_string(const std::string& name) {
  for (int i = 0; i < kLayerCount; ++i) {
    Layer layer = static_cast<Layer>(i);
    if (name == to_string(layer)) return layer;
  }
  return std::nullopt;
}

bool is_processing_layer(Layer layer) {
  return layer != Layer::Metro && layer != Layer::Core;
}

const char* to_string(IdleRule rule) {
  switch (rule) {
    case IdleRule::Full: return "Full";
    case IdleRule::Shared: return "Shared";
    case IdleRule::None: return "None";
  }
  return "?";
}

std::optional<IdleRule> idle_rule_from_string(const std::string& name) {
  if (name == "Full" || name == "full") return IdleRule::Full;
  if (name == "Shared" || name == "shared") return IdleRule::Shared;
  if (name == "None" || name == "none") return IdleRule::None;
  return std::nullopt;
}

IdleAttributionPolicy::IdleAttributionPolicy() {
  rules_.fill(IdleRule::Shared);
  rules_[static_cast<int>(Layer::IoT)] = IdleRule::Full;
  rules_[static_cast<int>(Layer::AccessFog)] = IdleRule::Full;
}

IdleRule IdleAttributionPolicy::network_rule(Layer layer) const {
  return rules_[static_cast<int>(layer)];
}

void IdleAttributionPolicy::set_network_rule(Layer layer, IdleRule rule) {
  rules_[static_cast<int>(layer)] = rule;
}

const char* to_string(CloudServerType type) {
  return type == CloudServerType::GP ? "GP" : "SP";
}

std::optional<CloudServerType> cloud_server_from_string(const std::string& name) {
  if (name == "GP" || name == "gp") return CloudServerType::GP;
  if (name == "SP" || name == "sp") return CloudServerType::SP;
  return std::nullopt;
}

WirelessModel default_wireless() {
  const NetworkProfile& wifi = profiles::wifi_interface();
  WirelessModel model;
  model.e_elec = (wifi.p_max - wifi.p_idle) / wifi.max_bitrate;
  model.eps_amp = 1.0e-11;  // 10 pJ/bit/m^2
  model.alpha = 2.0;
  return model;
}

void Topology::add_node(Node node) {
  if (index_.count(node.id) != 0) {
    throw std::invalid_argument("duplicate node id: " + node.id);
  }
  index_.emplace(node.id, nodes_.size());
  nodes_.push_back(std::move(node));
  finalized_ = false;
}

void Topology::set_distance(const std::string& iot_id, Meters distance) {
  distances_[iot_id] = distance;
}

void Topology::set_wireless(const WirelessModel& model) { wireless_ = model; }

const Node* Topology::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

const Node* Topology::root() const {
  for (const Node& node : nodes_) {
    if (node.parent.empty()) return &node;
  }
  return nullptr;
}

Meters Topology::distance(const std::string& iot_id) const {
  auto it = distances_.find(iot_id);
  if (it == distances_.end()) {
    throw std::invalid_argument("no wireless distance recorded for " + iot_id);
  }
  return it->second;
}

int Topology::processing_layer_index(Layer layer) {
  switch (layer) {
    case Layer::IoT: return 0;
    case Layer::AccessFog: return 1;
    case Layer::EdgeFog: return 2;
    case Layer::CloudDC: return 3;
    default: return -1;
  }
}

namespace {

// Ancestor chain starting at `id` (inclusive). Stops on missing parents or
// cycles; the caller decides whether that matters.
std::vector<const Node*> ancestor_chain(const Topology& t, const std::string& id) {
  std::vector<const Node*> chain;
  const Node* cur = t.find(id);
  std::size_t guard = t.nodes().size() + 1;
  while (cur != nullptr && chain.size() < guard) {
    chain.push_back(cur);
    if (cur->parent.empty()) break;
    cur = t.find(cur->parent);
  }
  return chain;
}

// Tree path from `from` to `to` via their lowest common ancestor, inclusive of
// both endpoints. Empty when the two nodes are not in the same tree.
std::vector<const Node*> tree_path(const Topology& t, const std::string& from,
                                   const std::string& to) {
  auto up = ancestor_chain(t, from);
  auto down = ancestor_chain(t, to);
  const Node* lca = nullptr;
  std::size_t up_len = 0;
  for (std::size_t i = 0; i < up.size() && lca == nullptr; ++i) {
    for (std::size_t j = 0; j < down.size(); ++j) {
      if (up[i] == down[j]) {
        lca = up[i];
        up_len = i;
        down.resize(j);
        break;
      }
    }
  }
  if (lca == nullptr) return {};
  std::vector<const Node*> result(up.begin(), up.begin() + up_len + 1);
  result.insert(result.end(), down.rbegin(), down.rend());
  return result;
}

}  // namespace

void Topology::finalize() {
  path_table_.clear();
  for (const Node& device : nodes_) {
    if (device.layer != Layer::IoT) continue;
    std::array<std::optional<HostPath>, 4> entries;
    for (Layer layer : kProcessingLayers) {
      // The host at `layer` is the unique processing node reachable from the
      // device through nodes of layer <= `layer`.
      const Node* host = nullptr;
      std::vector<const Node*> host_walk;
      bool ambiguous = false;
      for (const Node& cand : nodes_) {
        if (!cand.processing.has_value() || cand.layer != layer) continue;
        auto walk = tree_path(*this, device.id, cand.id);
        if (walk.empty()) continue;
        bool monotone = std::all_of(walk.begin(), walk.end(), [&](const Node* n) {
          return static_cast<int>(n->layer) <= static_cast<int>(layer);
        });
        if (!monotone) continue;
        if (host != nullptr) {
          ambiguous = true;
          break;
        }
        host = &cand;
        host_walk = std::move(walk);
      }
      if (host == nullptr || ambiguous) continue;
      HostPath entry;
      entry.host = host->id;
      if (host != &device) {
        for (const Node* n : host_walk) {
          if (n->networking.has_value()) entry.elements.push_back(n->id);
        }
      }
      entries[processing_layer_index(layer)] = std::move(entry);
    }
    path_table_.emplace(device.id, std::move(entries));
  }
  finalized_ = true;
}

std::vector<std::string> Topology::path(const std::string& source, Layer dest_layer) const {
  if (!is_processing_layer(dest_layer)) {
    throw std::invalid_argument(std::string("layer ") + to_string(dest_layer) +
                                " is transit-only, not a processing destination");
  }
  auto it = path_table_.find(source);
  if (it == path_table_.end()) {
    throw std::invalid_argument("unknown IoT source node: " + source);
  }
  const auto& entry = it->second[processing_layer_index(dest_layer)];
  if (!entry.has_value()) {
    throw std::invalid_argument(source + ": no processing host at layer " +
                                to_string(dest_layer));
  }
  return entry->elements;
}

const Node* Topology::processing_host(const std::string& source, Layer layer) const {
  if (!is_processing_layer(layer)) return nullptr;
  auto it = path_table_.find(source);
  if (it == path_table_.end()) return nullptr;
  const auto& entry = it->second[processing_layer_index(layer)];
  if (!entry.has_value()) return nullptr;
  return find(entry->host);
}

std::vector<Violation> validate_topology(const Topology& topology) {
  std::vector<Violation> out;
  auto error = [&out](const std::string& subject, const std::string& message) {
    out.push_back({Violation::Severity::Error, subject, message});
  };
  auto warning = [&out](const std::string& subject, const std::string& message) {
    out.push_back({Violation::Severity::Warning, subject, message});
  };

  const Node* root = nullptr;
  for (const Node& node : topology.nodes()) {
    const std::string subject = "node " + node.id;
    if (node.parent.empty()) {
      if (node.layer != Layer::CloudDC) {
        error(subject, "no parent");
      } else if (root != nullptr) {
        error(subject, "second root (root already at " + root->id + ")");
      } else {
        root = &node;
      }
    } else if (topology.find(node.parent) == nullptr) {
      error(subject, "unknown parent '" + node.parent + "'");
    }

    if (node.processing.has_value()) {
      const ProcessingProfile& p = *node.processing;
      if (node.replica_count != kUnboundedReplicas && node.replica_count < 1) {
        error(subject, "processing present but replica_count < 1");
      }
      if (node.replica_count == kUnboundedReplicas && node.layer != Layer::CloudDC) {
        error(subject, "unbounded replicas outside the cloud layer");
      }
      if (p.cpu_capacity <= 0) error(subject, "profile " + p.name + ": cpu_capacity <= 0");
      if (p.p_idle < 0 || p.p_idle > p.p_max) {
        error(subject, "profile " + p.name + ": p_idle outside [0, p_max]");
      }
    } else if (node.replica_count > 0) {
      error(subject, "replica_count set without a processing profile");
    }

    if (node.networking.has_value()) {
      const NetworkProfile& n = *node.networking;
      if (n.max_bitrate <= 0) error(subject, "profile " + n.name + ": max_bitrate <= 0");
      if (n.p_idle < 0 || n.p_idle > n.p_max) {
        error(subject, "profile " + n.name + ": p_idle outside [0, p_max]");
      }
    }
  }
  if (root == nullptr) {
    error("topology", "no cloud-DC root node");
  }

  for (const Node& node : topology.nodes()) {
    if (node.layer != Layer::IoT) continue;
    const std::string subject = node.id;
    auto chain = ancestor_chain(topology, node.id);
    const Node* last = chain.back();
    if (!last->parent.empty() && topology.find(last->parent) != nullptr) {
      error(subject, "parent chain contains a cycle");
    } else if (root != nullptr && last != root && last->parent.empty() &&
               last->layer != Layer::CloudDC) {
      // chain stopped at a parentless non-root; already reported above
    } else if (root != nullptr && last != root) {
      error(subject, "no path to the cloud-DC root");
    }

    auto it = topology.distances().find(node.id);
    if (it == topology.distances().end()) {
      error(subject, "no wireless distance to its access point");
    } else if (it->second <= 0) {
      error(subject, "non-positive wireless distance");
    } else if (it->second < kPaperDistanceMin || it->second > kPaperDistanceMax) {
      std::ostringstream oss;
      oss << "distance " << it->second << " out of [" << kPaperDistanceMin << ","
          << kPaperDistanceMax << "]";
      warning(subject, oss.str());
    }
  }

  const WirelessModel& w = topology.wireless();
  if (w.e_elec < 0) error("wireless", "e_elec < 0");
  if (w.eps_amp < 0) error("wireless", "eps_amp < 0");
  if (w.alpha < 2) error("wireless", "alpha < 2");

  return out;
}

namespace profiles {

const ProcessingProfile& rpi_zero() {
  static const ProcessingProfile p{"rpi-zero", 1000, 3.6, 0.45, 1, 1.0, Layer::IoT};
  return p;
}

const ProcessingProfile& rpi3() {
  static const ProcessingProfile p{"rpi-3", 2400, 12.5, 2.0, 2, 1.2, Layer::AccessFog};
  return p;
}

const ProcessingProfile& gp_server() {
  static const ProcessingProfile p{"gp-server", 10800, 363, 112, 4, 2.7, Layer::EdgeFog};
  return p;
}

const ProcessingProfile& sp_server() {
  static const ProcessingProfile p{"sp-server", 108000, 363, 112, 40, 2.7, Layer::CloudDC};
  return p;
}

std::vector<ProcessingProfile> all_processing() {
  return {rpi_zero(), rpi3(), gp_server(), sp_server()};
}

const NetworkProfile& wifi_interface() {
  static const NetworkProfile p{"wifi-interface", 0.15e9, 1.2, 0.45, Layer::IoT};
  return p;
}

const NetworkProfile& onu() {
  static const NetworkProfile p{"onu-wifi", 0.3e9, 15, 9, Layer::AccessFog};
  return p;
}

const NetworkProfile& olt() {
  static const NetworkProfile p{"olt-port", 2.4e9, 48, 43, Layer::EdgeFog};
  return p;
}

const NetworkProfile& ethernet_switch() {
  static const NetworkProfile p{"ethernet-switch", 320e9, 3800, 3420, Layer::Metro};
  return p;
}

const NetworkProfile& edge_router() {
  static const NetworkProfile p{"edge-router", 560e9, 4550, 4010, Layer::Metro};
  return p;
}

const NetworkProfile& ip_wdm() {
  static const NetworkProfile p{"ip-wdm", 40e9, 1150, 1000, Layer::Core};
  return p;
}

std::vector<NetworkProfile> all_network() {
  return {wifi_interface(), onu(), olt(), ethernet_switch(), edge_router(), ip_wdm()};
}

}  // namespace profiles

}  // namespace fogplace
