#include "fogplace/instance.hpp"

#include <random>
#include <stdexcept>

namespace fogplace {

const char* to_string(AssignmentMode mode) {
  return mode == AssignmentMode::Random ? "random" : "balanced";
}

std::optional<AssignmentMode> assignment_mode_from_string(const std::string& name) {
  if (name == "random" || name == "Random") return AssignmentMode::Random;
  if (name == "balanced" || name == "Balanced") return AssignmentMode::Balanced;
  return std::nullopt;
}

namespace node_ids {
std::string iot(int i) { return "iot-" + std::to_string(i); }
std::string onu(int i) { return "onu-" + std::to_string(i); }
std::string request(int i) { return "req-" + std::to_string(i); }
}  // namespace node_ids

namespace {

// std::uniform_*_distribution is implementation-defined, so map the raw
// mt19937_64 stream ourselves to keep generated instances bit-identical
// across standard libraries.
double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + uniform_unit(rng) * (hi - lo);
}

int uniform_index(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

void check_spec(const InstanceSpec& spec) {
  if (spec.n_devices < 1) throw std::invalid_argument("instance.n_devices must be >= 1");
  if (spec.n_onus < 1) throw std::invalid_argument("instance.n_onus must be >= 1");
  if (spec.rate <= 0) throw std::invalid_argument("instance.rate must be positive");
  if (spec.distance_min <= 0) {
    throw std::invalid_argument("instance.distance_range low bound must be positive");
  }
  if (spec.distance_min > spec.distance_max) {
    throw std::invalid_argument("instance.distance_range low bound exceeds high bound");
  }
  if (spec.instructions_per_bit <= 0) {
    throw std::invalid_argument("instance.instructions_per_bit must be positive");
  }
}

NetworkProfile core_aggregate_profile(int hop_count) {
  NetworkProfile p = profiles::ip_wdm();
  p.name = "ip-wdm-x" + std::to_string(hop_count);
  p.p_max *= hop_count;
  p.p_idle *= hop_count;
  return p;
}

}  // namespace

Instance generate(const InstanceSpec& spec, const TopologyOptions& options) {
  check_spec(spec);
  if (options.core_hop_count < 1) {
    throw std::invalid_argument("core_hop_count must be >= 1");
  }
  if (options.edge_dc_servers < 1) {
    throw std::invalid_argument("edge_dc_servers must be >= 1");
  }

  std::mt19937_64 rng(spec.seed);

  std::vector<int> onu_of(spec.n_devices);
  std::vector<Meters> dist_of(spec.n_devices);
  for (int i = 0; i < spec.n_devices; ++i) {
    onu_of[i] = spec.assignment_mode == AssignmentMode::Random
                    ? uniform_index(rng, spec.n_onus)
                    : i % spec.n_onus;
    dist_of[i] = uniform_in(rng, spec.distance_min, spec.distance_max);
  }

  Instance inst;
  Topology& t = inst.topology;
  for (int i = 0; i < spec.n_devices; ++i) {
    Node dev;
    dev.id = node_ids::iot(i);
    dev.layer = Layer::IoT;
    dev.processing = profiles::rpi_zero();
    dev.replica_count = 1;
    dev.networking = profiles::wifi_interface();
    dev.parent = node_ids::onu(onu_of[i]);
    t.add_node(std::move(dev));
    t.set_distance(node_ids::iot(i), dist_of[i]);
  }
  for (int k = 0; k < spec.n_onus; ++k) {
    Node onu;
    onu.id = node_ids::onu(k);
    onu.layer = Layer::AccessFog;
    onu.processing = profiles::rpi3();
    onu.replica_count = 1;
    onu.networking = profiles::onu();
    onu.parent = node_ids::kOlt;
    t.add_node(std::move(onu));
  }

  Node olt;
  olt.id = node_ids::kOlt;
  olt.layer = Layer::EdgeFog;
  olt.networking = profiles::olt();
  olt.parent = node_ids::kMetroSwitch;
  t.add_node(std::move(olt));

  Node mdc_switch;
  mdc_switch.id = node_ids::kMicroDcSwitch;
  mdc_switch.layer = Layer::EdgeFog;
  mdc_switch.networking = profiles::ethernet_switch();
  mdc_switch.parent = node_ids::kOlt;
  t.add_node(std::move(mdc_switch));

  Node mdc;
  mdc.id = node_ids::kMicroDc;
  mdc.layer = Layer::EdgeFog;
  mdc.processing = profiles::gp_server();
  mdc.replica_count = options.edge_dc_servers;
  mdc.parent = node_ids::kMicroDcSwitch;
  t.add_node(std::move(mdc));

  Node metro;
  metro.id = node_ids::kMetroSwitch;
  metro.layer = Layer::Metro;
  metro.networking = profiles::ethernet_switch();
  metro.parent = node_ids::kEdgeRouter;
  t.add_node(std::move(metro));

  Node router;
  router.id = node_ids::kEdgeRouter;
  router.layer = Layer::Metro;
  router.networking = profiles::edge_router();
  router.parent = node_ids::kCoreAggregate;
  t.add_node(std::move(router));

  Node core;
  core.id = node_ids::kCoreAggregate;
  core.layer = Layer::Core;
  core.networking = core_aggregate_profile(options.core_hop_count);
  core.parent = node_ids::kDcSwitch;
  t.add_node(std::move(core));

  Node dc_switch;
  dc_switch.id = node_ids::kDcSwitch;
  dc_switch.layer = Layer::CloudDC;
  dc_switch.networking = profiles::ethernet_switch();
  dc_switch.parent = node_ids::kCloudDc;
  t.add_node(std::move(dc_switch));

  Node cloud;
  cloud.id = node_ids::kCloudDc;
  cloud.layer = Layer::CloudDC;
  cloud.processing = profiles::gp_server();
  cloud.replica_count = kUnboundedReplicas;
  t.add_node(std::move(cloud));

  t.set_wireless(options.wireless);
  t.finalize();

  for (const Violation& v : validate_topology(t)) {
    if (v.severity == Violation::Severity::Error) {
      throw std::logic_error("generated topology is invalid: " + v.str());
    }
  }

  inst.requests.reserve(spec.n_devices);
  for (int i = 0; i < spec.n_devices; ++i) {
    ServiceRequest req;
    req.id = node_ids::request(i);
    req.source = node_ids::iot(i);
    req.rate = spec.rate;
    req.proc_demand = processing_demand(spec.rate, spec.instructions_per_bit);
    inst.requests.push_back(std::move(req));
  }
  return inst;
}

std::vector<ServiceRequest> with_rate(const std::vector<ServiceRequest>& requests,
                                      BitsPerSecond rate, double instructions_per_bit) {
  std::vector<ServiceRequest> out = requests;
  for (ServiceRequest& req : out) {
    req.rate = rate;
    req.proc_demand = processing_demand(rate, instructions_per_bit);
  }
  return out;
}

std::vector<double> sweep_rates(double start_mbps, double end_mbps, double step_mbps) {
  if (step_mbps <= 0) throw std::invalid_argument("rates.step_mbps must be positive");
  if (start_mbps > end_mbps) {
    throw std::invalid_argument("rates.start_mbps exceeds rates.end_mbps");
  }
  std::vector<double> rates;
  const int count = static_cast<int>((end_mbps - start_mbps) / step_mbps + 1e-9) + 1;
  rates.reserve(count);
  for (int i = 0; i < count; ++i) rates.push_back(start_mbps + i * step_mbps);
  return rates;
}

std::vector<double> default_sweep_rates() { return sweep_rates(0.5, 4.5, 0.5); }

namespace {

nlohmann::json processing_to_json(const ProcessingProfile& p) {
  return {{"name", p.name},
          {"cpu_capacity_mips", p.cpu_capacity},
          {"p_max_w", p.p_max},
          {"p_idle_w", p.p_idle},
          {"instructions_per_hz", p.instructions_per_hz},
          {"clock_ghz", p.clock_ghz},
          {"layer", to_string(p.layer)}};
}

ProcessingProfile processing_from_json(const nlohmann::json& j) {
  ProcessingProfile p;
  p.name = j.at("name").get<std::string>();
  p.cpu_capacity = j.at("cpu_capacity_mips").get<double>();
  p.p_max = j.at("p_max_w").get<double>();
  p.p_idle = j.at("p_idle_w").get<double>();
  p.instructions_per_hz = j.at("instructions_per_hz").get<double>();
  p.clock_ghz = j.at("clock_ghz").get<double>();
  auto layer = layer_from_string(j.at("layer").get<std::string>());
  if (!layer) throw std::invalid_argument("unknown layer in processing profile");
  p.layer = *layer;
  return p;
}

nlohmann::json network_to_json(const NetworkProfile& p) {
  return {{"name", p.name},
          {"max_bitrate_bps", p.max_bitrate},
          {"p_max_w", p.p_max},
          {"p_idle_w", p.p_idle},
          {"layer", to_string(p.layer)}};
}

NetworkProfile network_from_json(const nlohmann::json& j) {
  NetworkProfile p;
  p.name = j.at("name").get<std::string>();
  p.max_bitrate = j.at("max_bitrate_bps").get<double>();
  p.p_max = j.at("p_max_w").get<double>();
  p.p_idle = j.at("p_idle_w").get<double>();
  auto layer = layer_from_string(j.at("layer").get<std::string>());
  if (!layer) throw std::invalid_argument("unknown layer in network profile");
  p.layer = *layer;
  return p;
}

}  // namespace

nlohmann::json instance_to_json(const Instance& instance) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const Node& n : instance.topology.nodes()) {
    nlohmann::json jn{{"id", n.id}, {"layer", to_string(n.layer)}};
    if (!n.parent.empty()) jn["parent"] = n.parent;
    if (n.processing) {
      jn["processing"] = processing_to_json(*n.processing);
      jn["replica_count"] = n.replica_count;
    }
    if (n.networking) jn["networking"] = network_to_json(*n.networking);
    nodes.push_back(std::move(jn));
  }

  nlohmann::json distances = nlohmann::json::object();
  for (const auto& [id, d] : instance.topology.distances()) distances[id] = d;

  const WirelessModel& w = instance.topology.wireless();
  nlohmann::json requests = nlohmann::json::array();
  for (const ServiceRequest& r : instance.requests) {
    requests.push_back({{"id", r.id},
                        {"source", r.source},
                        {"rate_bps", r.rate},
                        {"proc_demand_mips", r.proc_demand}});
  }

  return {{"nodes", std::move(nodes)},
          {"distances", std::move(distances)},
          {"wireless", {{"e_elec", w.e_elec}, {"eps_amp", w.eps_amp}, {"alpha", w.alpha}}},
          {"requests", std::move(requests)}};
}

Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  for (const auto& jn : j.at("nodes")) {
    Node n;
    n.id = jn.at("id").get<std::string>();
    auto layer = layer_from_string(jn.at("layer").get<std::string>());
    if (!layer) throw std::invalid_argument("unknown layer for node " + n.id);
    n.layer = *layer;
    if (jn.contains("parent")) n.parent = jn.at("parent").get<std::string>();
    if (jn.contains("processing")) {
      n.processing = processing_from_json(jn.at("processing"));
      n.replica_count = jn.at("replica_count").get<int>();
    }
    if (jn.contains("networking")) n.networking = network_from_json(jn.at("networking"));
    inst.topology.add_node(std::move(n));
  }
  for (const auto& [id, d] : j.at("distances").items()) {
    inst.topology.set_distance(id, d.get<double>());
  }
  const auto& jw = j.at("wireless");
  WirelessModel w;
  w.e_elec = jw.at("e_elec").get<double>();
  w.eps_amp = jw.at("eps_amp").get<double>();
  w.alpha = jw.at("alpha").get<double>();
  inst.topology.set_wireless(w);
  inst.topology.finalize();

  for (const auto& jr : j.at("requests")) {
    ServiceRequest r;
    r.id = jr.at("id").get<std::string>();
    r.source = jr.at("source").get<std::string>();
    r.rate = jr.at("rate_bps").get<double>();
    r.proc_demand = jr.at("proc_demand_mips").get<double>();
    inst.requests.push_back(std::move(r));
  }
  return inst;
}

}  // namespace fogplace
