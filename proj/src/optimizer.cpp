#include "fogplace/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace fogplace {

const char* to_string(SolveStatus status) {
  return status == SolveStatus::Optimal ? "optimal" : "infeasible";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Power of one network element. IoT-layer hops are wireless: their
// proportional part follows the radio model instead of the wired
// energy-per-bit slope.
PowerSplit network_split(const NetworkProfile& profile, bool wireless_hop,
                         const WirelessModel& wireless, Meters distance,
                         BitsPerSecond carried, IdleRule rule) {
  if (!wireless_hop) return element_network_power(profile, carried, rule);
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
  split.proportional = wireless_tx_power(wireless, carried, distance);
  return split;
}

const ProcessingProfile& cloud_profile(const Node& node, const Scenario& scenario) {
  if (node.layer == Layer::CloudDC && scenario.cloud_server == CloudServerType::SP) {
    return profiles::sp_server();
  }
  return *node.processing;
}

// ---------------------------------------------------------------------------
// Dense working view shared by the branch-and-bound search and the oracle.

struct DenseElement {
  std::string id;
  NetworkProfile profile;
  IdleRule rule = IdleRule::None;
  bool wireless_hop = false;
  Meters distance = 0;
  int sole_user = -1;        // service index when only one service can load it
  int max_forcing = -1;      // highest service index that must traverse it
};

struct DenseSite {
  std::string id;
  ProcessingProfile profile;
  double cap_per_replica = 0;
  double cap_total = 0;      // replica cap * per-replica capacity
  int replica_cap = 0;
  int user_count = 0;
};

struct DenseOption {
  int site = -1;
  std::vector<int> elements;
  double marginal = 0;
  bool usable = true;        // the demand alone fits the site
};

struct DenseModel {
  std::vector<DenseElement> elements;  // in topology node order
  std::vector<DenseSite> sites;        // in topology node order
  std::vector<std::vector<DenseOption>> options;  // per service, preference order
  std::vector<double> rates;
  std::vector<double> demands;
  std::vector<int> group_site;         // Access-Fog site shared by the service, or -1
  WirelessModel wireless;
};

DenseModel make_dense(const PlacementModel& model) {
  DenseModel dm;
  dm.wireless = model.topology.wireless();

  std::map<std::string, int> element_index;
  std::map<std::string, int> site_index;
  std::set<std::string> used_elements;
  std::set<std::string> used_sites;
  for (const auto& cands : model.candidates) {
    for (const CandidateSite& c : cands) {
      used_sites.insert(c.node);
      for (const std::string& e : c.path) used_elements.insert(e);
    }
  }
  for (const Node& node : model.topology.nodes()) {
    if (node.networking && used_elements.count(node.id) != 0) {
      DenseElement e;
      e.id = node.id;
      e.profile = *node.networking;
      e.rule = model.scenario.idle_policy.network_rule(node.layer);
      e.wireless_hop = node.layer == Layer::IoT;
      if (e.wireless_hop) e.distance = model.topology.distance(node.id);
      element_index.emplace(node.id, static_cast<int>(dm.elements.size()));
      dm.elements.push_back(std::move(e));
    }
    if (node.processing && used_sites.count(node.id) != 0) {
      DenseSite s;
      s.id = node.id;
      s.replica_cap = node.replica_count;
      site_index.emplace(node.id, static_cast<int>(dm.sites.size()));
      dm.sites.push_back(std::move(s));
    }
  }

  const std::size_t n = model.services.size();
  dm.rates.resize(n);
  dm.demands.resize(n);
  dm.options.resize(n);
  dm.group_site.assign(n, -1);

  std::vector<std::set<int>> element_users(dm.elements.size());
  std::vector<std::set<int>> site_users(dm.sites.size());
  for (std::size_t s = 0; s < n; ++s) {
    dm.rates[s] = model.services[s].rate;
    dm.demands[s] = model.services[s].proc_demand;
    for (const CandidateSite& c : model.candidates[s]) {
      DenseOption& opt = dm.options[s].emplace_back();
      opt.site = site_index.at(c.node);
      DenseSite& site = dm.sites[opt.site];
      site.profile = c.profile;
      site.cap_per_replica = c.profile.cpu_capacity;
      site.cap_total = c.replica_cap == kUnboundedReplicas
                           ? kInf
                           : c.replica_cap * c.profile.cpu_capacity;
      opt.usable = !exceeds_capacity(dm.demands[s], site.cap_total);
      for (const std::string& e : c.path) opt.elements.push_back(element_index.at(e));
      if (opt.usable) {
        site_users[opt.site].insert(static_cast<int>(s));
        for (int e : opt.elements) element_users[e].insert(static_cast<int>(s));
      }
      if (c.layer == Layer::AccessFog) dm.group_site[s] = opt.site;
    }
  }
  for (std::size_t e = 0; e < dm.elements.size(); ++e) {
    if (element_users[e].size() == 1) dm.elements[e].sole_user = *element_users[e].begin();
  }
  for (std::size_t i = 0; i < dm.sites.size(); ++i) {
    dm.sites[i].user_count = static_cast<int>(site_users[i].size());
  }
  // Demand-bearing sites shared by a single service get their tightening from
  // the marginal itself; only shared Access-Fog pools are group-tightened.
  for (std::size_t s = 0; s < n; ++s) {
    if (dm.group_site[s] >= 0 && dm.sites[dm.group_site[s]].user_count < 2) {
      dm.group_site[s] = -1;
    }
  }

  // Linear marginals: proportional power along the path plus idle terms this
  // service alone is responsible for. Shared activations stay out so the
  // marginal never overstates the cost of any completion.
  for (std::size_t s = 0; s < n; ++s) {
    for (DenseOption& opt : dm.options[s]) {
      double m = 0;
      for (int ei : opt.elements) {
        const DenseElement& e = dm.elements[ei];
        if (e.wireless_hop) {
          m += wireless_tx_power(dm.wireless, dm.rates[s], e.distance);
        } else {
          m += energy_per_bit(e.profile) * dm.rates[s];
        }
        if (e.rule == IdleRule::Shared) {
          m += e.profile.p_idle * (dm.rates[s] / e.profile.max_bitrate);
        } else if (e.rule == IdleRule::Full && e.sole_user == static_cast<int>(s)) {
          m += e.profile.p_idle;
        }
      }
      const DenseSite& site = dm.sites[opt.site];
      m += energy_per_instruction(site.profile) * dm.demands[s] * 1e6;
      if (site.user_count == 1) {
        m += site.profile.p_idle * replicas_needed(dm.demands[s], site.cap_per_replica);
      }
      opt.marginal = m;
    }
  }

  // Shared Full-rule elements every usable option of some service traverses:
  // their idle is certain once that service is placed.
  for (std::size_t s = 0; s < n; ++s) {
    std::map<int, int> seen;
    int usable = 0;
    for (const DenseOption& opt : dm.options[s]) {
      if (!opt.usable) continue;
      ++usable;
      for (int ei : opt.elements) ++seen[ei];
    }
    if (usable == 0) continue;
    for (const auto& [ei, count] : seen) {
      DenseElement& e = dm.elements[ei];
      if (count == usable && e.rule == IdleRule::Full && e.sole_user < 0) {
        e.max_forcing = std::max(e.max_forcing, static_cast<int>(s));
      }
    }
  }
  return dm;
}

// Canonical power of a (possibly partial) load state. Mirrors evaluate():
// node-major, network before processing, so leaf costs and the reported
// breakdown agree.
double state_cost(const DenseModel& dm, const std::vector<double>& element_load,
                  const std::vector<double>& site_load) {
  double network = 0;
  double processing = 0;
  for (std::size_t e = 0; e < dm.elements.size(); ++e) {
    const DenseElement& el = dm.elements[e];
    PowerSplit split = network_split(el.profile, el.wireless_hop, dm.wireless, el.distance,
                                     element_load[e], el.rule);
    network += split.total();
  }
  for (std::size_t i = 0; i < dm.sites.size(); ++i) {
    const DenseSite& site = dm.sites[i];
    int replicas = replicas_needed(site_load[i], site.cap_per_replica);
    processing += replicas * site.profile.p_idle +
                  energy_per_instruction(site.profile) * site_load[i] * 1e6;
  }
  return network + processing;
}

struct Search {
  const PlacementModel& model;
  const DenseModel& dm;
  std::vector<double> element_load;
  std::vector<double> site_load;
  std::vector<int> chosen;
  std::vector<int> best;
  double best_cost = kInf;
  bool found = false;
  std::uint64_t nodes = 0;

  explicit Search(const PlacementModel& m, const DenseModel& d)
      : model(m),
        dm(d),
        element_load(d.elements.size(), 0.0),
        site_load(d.sites.size(), 0.0),
        chosen(d.options.size(), -1) {}

  bool fits(std::size_t s, const DenseOption& opt) const {
    if (exceeds_capacity(site_load[opt.site] + dm.demands[s], dm.sites[opt.site].cap_total)) {
      return false;
    }
    for (int ei : opt.elements) {
      if (exceeds_capacity(element_load[ei] + dm.rates[s], dm.elements[ei].profile.max_bitrate)) {
        return false;
      }
    }
    return true;
  }

  void apply(std::size_t s, const DenseOption& opt, double sign) {
    site_load[opt.site] += sign * dm.demands[s];
    for (int ei : opt.elements) element_load[ei] += sign * dm.rates[s];
  }

  // Admissible bound on the cost of completing the assignment from
  // `first_unassigned`: current committed power, plus idle of shared elements
  // that some remaining service is certain to load, plus capacity-relaxed
  // minimum marginals (exact fractional relaxation of each Access-Fog pool).
  double lower_bound(std::size_t first_unassigned, double committed) const {
    double lb = committed;
    for (std::size_t e = 0; e < dm.elements.size(); ++e) {
      if (dm.elements[e].max_forcing >= static_cast<int>(first_unassigned) &&
          element_load[e] == 0) {
        lb += dm.elements[e].profile.p_idle;
      }
    }

    struct GroupGain {
      double gain;
      double demand;
    };
    std::map<int, std::vector<GroupGain>> group_gains;
    std::map<int, double> group_must_demand;

    for (std::size_t s = first_unassigned; s < dm.options.size(); ++s) {
      double alt = kInf;
      double group_marginal = kInf;
      int group = dm.group_site[s];
      for (const DenseOption& opt : dm.options[s]) {
        if (!opt.usable) continue;
        if (exceeds_capacity(site_load[opt.site] + dm.demands[s], dm.sites[opt.site].cap_total)) {
          continue;
        }
        if (group >= 0 && opt.site == group) {
          group_marginal = std::min(group_marginal, opt.marginal);
        } else {
          alt = std::min(alt, opt.marginal);
        }
      }
      if (group_marginal == kInf) {
        if (alt == kInf) return kInf;  // dead end: no feasible option left
        lb += alt;
        continue;
      }
      if (alt == kInf) {
        // Must use its Access-Fog pool.
        lb += group_marginal;
        group_must_demand[group] += dm.demands[s];
        continue;
      }
      lb += alt;
      if (group_marginal < alt) {
        group_gains[group].push_back({alt - group_marginal, dm.demands[s]});
      }
    }

    for (auto& [site, must] : group_must_demand) {
      if (exceeds_capacity(site_load[site] + must, dm.sites[site].cap_total)) return kInf;
    }
    for (auto& [site, gains] : group_gains) {
      double rem = dm.sites[site].cap_total - site_load[site];
      auto it = group_must_demand.find(site);
      if (it != group_must_demand.end()) rem -= it->second;
      if (rem <= 0) continue;
      std::stable_sort(gains.begin(), gains.end(), [](const GroupGain& a, const GroupGain& b) {
        return a.gain * b.demand > b.gain * a.demand;  // density, cross-multiplied
      });
      for (const GroupGain& g : gains) {
        if (rem <= 0) break;
        double take = std::min(g.demand, rem);
        lb -= g.gain * (take / g.demand);
        rem -= take;
      }
    }
    return lb;
  }

  void dfs(std::size_t depth) {
    ++nodes;
    if (depth == dm.options.size()) {
      double cost = state_cost(dm, element_load, site_load);
      if (cost < best_cost) {
        best_cost = cost;
        best = chosen;
        found = true;
      }
      return;
    }
    for (std::size_t i = 0; i < dm.options[depth].size(); ++i) {
      const DenseOption& opt = dm.options[depth][i];
      if (!opt.usable || !fits(depth, opt)) continue;
      apply(depth, opt, +1.0);
      chosen[depth] = static_cast<int>(i);
      double committed = state_cost(dm, element_load, site_load);
      if (lower_bound(depth + 1, committed) < best_cost) dfs(depth + 1);
      chosen[depth] = -1;
      apply(depth, opt, -1.0);
    }
  }
};

SolveReport report_from_choice(const PlacementModel& model, const DenseModel& dm,
                               const std::vector<int>& chosen, std::uint64_t nodes,
                               double seconds) {
  Placement placement;
  std::vector<double> site_load(dm.sites.size(), 0.0);
  for (std::size_t s = 0; s < model.services.size(); ++s) {
    const DenseOption& opt = dm.options[s][chosen[s]];
    placement.assignment[model.services[s].id] = dm.sites[opt.site].id;
    site_load[opt.site] += dm.demands[s];
  }
  for (std::size_t i = 0; i < dm.sites.size(); ++i) {
    if (site_load[i] > 0) {
      placement.active_replicas[dm.sites[i].id] =
          replicas_needed(site_load[i], dm.sites[i].cap_per_replica);
    }
  }
  SolveReport report;
  report.placement = std::move(placement);
  report.breakdown = evaluate(model.topology, model.services, report.placement, model.scenario);
  report.objective = report.breakdown.grand_total;
  report.status = SolveStatus::Optimal;
  report.node_count = nodes;
  report.wall_time_s = seconds;
  return report;
}

SolveReport infeasible_report(std::uint64_t nodes, double seconds) {
  SolveReport report;
  report.status = SolveStatus::Infeasible;
  report.node_count = nodes;
  report.wall_time_s = seconds;
  return report;
}

}  // namespace

PlacementModel build_model(const Topology& topology,
                           const std::vector<ServiceRequest>& requests,
                           const Scenario& scenario) {
  PlacementModel model;
  model.topology = topology;
  model.services = requests;
  model.scenario = scenario;

  std::set<Layer> layers = scenario.allowed_layers;
  if (scenario.cloud_fallback) layers.insert(Layer::CloudDC);
  if (layers.empty()) {
    throw std::invalid_argument("scenario '" + scenario.name + "' admits no processing layer");
  }

  for (const ServiceRequest& req : requests) {
    std::vector<CandidateSite> cands;
    for (Layer layer : kProcessingLayers) {
      if (layers.count(layer) == 0) continue;
      const Node* host = topology.processing_host(req.source, layer);
      if (host == nullptr || !host->processing.has_value()) continue;
      CandidateSite c;
      c.node = host->id;
      c.layer = layer;
      c.profile = cloud_profile(*host, scenario);
      c.replica_cap = host->replica_count;
      c.path = topology.path(req.source, layer);
      cands.push_back(std::move(c));
    }
    if (cands.empty()) {
      throw std::invalid_argument("scenario '" + scenario.name + "' admits no site for service " +
                                  req.id);
    }
    model.candidates.push_back(std::move(cands));
  }

  // Expose the cost coefficients on the public model.
  DenseModel dm = make_dense(model);
  for (std::size_t s = 0; s < model.candidates.size(); ++s) {
    for (std::size_t i = 0; i < model.candidates[s].size(); ++i) {
      model.candidates[s][i].linear_marginal = dm.options[s][i].marginal;
    }
  }
  return model;
}

SolveReport BranchAndBoundSolver::solve(const PlacementModel& model) const {
  auto start = std::chrono::steady_clock::now();
  DenseModel dm = make_dense(model);
  Search search(model, dm);
  search.dfs(0);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!search.found) return infeasible_report(search.nodes, seconds);
  return report_from_choice(model, dm, search.best, search.nodes, seconds);
}

SolveReport solve(const PlacementModel& model) {
  return BranchAndBoundSolver().solve(model);
}

SolveReport brute_force(const PlacementModel& model, std::size_t max_services) {
  if (model.services.size() > max_services) {
    throw std::invalid_argument("brute_force guard: " + std::to_string(model.services.size()) +
                                " services exceed the enumeration limit of " +
                                std::to_string(max_services));
  }
  auto start = std::chrono::steady_clock::now();
  DenseModel dm = make_dense(model);

  std::vector<double> element_load(dm.elements.size(), 0.0);
  std::vector<double> site_load(dm.sites.size(), 0.0);
  std::vector<int> chosen(model.services.size(), -1);
  std::vector<int> best;
  double best_cost = kInf;
  bool found = false;
  std::uint64_t leaves = 0;

  auto enumerate = [&](auto&& self, std::size_t depth) -> void {
    if (depth == model.services.size()) {
      ++leaves;
      double cost = state_cost(dm, element_load, site_load);
      if (cost < best_cost) {
        best_cost = cost;
        best = chosen;
        found = true;
      }
      return;
    }
    for (std::size_t i = 0; i < dm.options[depth].size(); ++i) {
      const DenseOption& opt = dm.options[depth][i];
      if (!opt.usable) continue;
      bool feasible = !exceeds_capacity(site_load[opt.site] + dm.demands[depth],
                                        dm.sites[opt.site].cap_total);
      for (std::size_t e = 0; feasible && e < opt.elements.size(); ++e) {
        feasible = !exceeds_capacity(element_load[opt.elements[e]] + dm.rates[depth],
                                     dm.elements[opt.elements[e]].profile.max_bitrate);
      }
      if (!feasible) continue;
      site_load[opt.site] += dm.demands[depth];
      for (int ei : opt.elements) element_load[ei] += dm.rates[depth];
      chosen[depth] = static_cast<int>(i);
      self(self, depth + 1);
      chosen[depth] = -1;
      site_load[opt.site] -= dm.demands[depth];
      for (int ei : opt.elements) element_load[ei] -= dm.rates[depth];
    }
  };
  enumerate(enumerate, 0);

  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!found) return infeasible_report(leaves, seconds);
  return report_from_choice(model, dm, best, leaves, seconds);
}

PowerBreakdown evaluate(const Topology& topology, const std::vector<ServiceRequest>& requests,
                        const Placement& placement, const Scenario& scenario) {
  std::map<std::string, double> element_load;
  std::map<std::string, double> site_load;
  std::map<std::string, const ProcessingProfile*> site_profiles;
  std::map<std::string, ProcessingProfile> cloud_swaps;

  for (const ServiceRequest& req : requests) {
    auto it = placement.assignment.find(req.id);
    if (it == placement.assignment.end()) {
      throw std::invalid_argument("placement does not cover service " + req.id);
    }
    const Node* node = topology.find(it->second);
    if (node == nullptr || !node->processing.has_value()) {
      throw std::invalid_argument("service " + req.id + " placed at unknown or non-processing node '" +
                                  it->second + "'");
    }
    const Node* host = topology.processing_host(req.source, node->layer);
    if (host == nullptr || host->id != node->id) {
      throw std::invalid_argument("service " + req.id + " placed at " + node->id +
                                  ", which is not its host at layer " + to_string(node->layer));
    }
    for (const std::string& e : topology.path(req.source, node->layer)) {
      element_load[e] += req.rate;
    }
    site_load[node->id] += req.proc_demand;
    if (site_profiles.count(node->id) == 0) {
      cloud_swaps.emplace(node->id, cloud_profile(*node, scenario));
      site_profiles[node->id] = &cloud_swaps.at(node->id);
    }
  }

  PowerBreakdown bd;
  for (const Node& node : topology.nodes()) {
    double watts_here = 0;
    bool reportable = false;
    if (node.networking.has_value()) {
      reportable = true;
      double carried = 0;
      auto it = element_load.find(node.id);
      if (it != element_load.end()) carried = it->second;
      if (exceeds_capacity(carried, node.networking->max_bitrate)) {
        throw CapacityError(node.id, carried, node.networking->max_bitrate);
      }
      bool wireless_hop = node.layer == Layer::IoT;
      PowerSplit split = network_split(*node.networking, wireless_hop, topology.wireless(),
                                       wireless_hop ? topology.distance(node.id) : 0.0, carried,
                                       scenario.idle_policy.network_rule(node.layer));
      bd.network_total += split.total();
      bd.idle_total += split.idle;
      bd.proportional_total += split.proportional;
      watts_here += split.total();
    }
    if (node.processing.has_value()) {
      reportable = true;
      double load = 0;
      auto it = site_load.find(node.id);
      if (it != site_load.end()) load = it->second;
      const ProcessingProfile* profile = &node.processing.value();
      auto pit = site_profiles.find(node.id);
      if (pit != site_profiles.end()) profile = pit->second;

      int replicas = replicas_needed(load, profile->cpu_capacity);
      auto rit = placement.active_replicas.find(node.id);
      if (rit != placement.active_replicas.end()) replicas = rit->second;
      if (node.replica_count != kUnboundedReplicas && replicas > node.replica_count) {
        throw CapacityError(node.id, replicas, node.replica_count);
      }
      if (exceeds_capacity(load, replicas * profile->cpu_capacity)) {
        throw CapacityError(node.id, load, replicas * profile->cpu_capacity);
      }
      PowerSplit split = server_processing_power(*profile, load, replicas);
      bd.processing_total += split.total();
      bd.idle_total += split.idle;
      bd.proportional_total += split.proportional;
      watts_here += split.total();
    }
    if (reportable) bd.per_element[node.id] = watts_here;
  }
  bd.grand_total = bd.network_total + bd.processing_total;
  return bd;
}

}  // namespace fogplace
