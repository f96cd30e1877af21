#include "fogplace/harness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fogplace {

std::vector<Scenario> builtin_scenarios(const IdleAttributionPolicy& policy) {
  Scenario cloud_gp;
  cloud_gp.name = "cloud-gp";
  cloud_gp.allowed_layers = {Layer::CloudDC};
  cloud_gp.cloud_server = CloudServerType::GP;
  cloud_gp.idle_policy = policy;

  Scenario cloud_sp = cloud_gp;
  cloud_sp.name = "cloud-sp";
  cloud_sp.cloud_server = CloudServerType::SP;

  Scenario fog;
  fog.name = "fog";
  fog.allowed_layers = {Layer::AccessFog, Layer::EdgeFog};
  fog.cloud_server = CloudServerType::GP;
  fog.idle_policy = policy;
  fog.cloud_fallback = true;

  Scenario fog_iot = fog;
  fog_iot.name = "fog-iot";
  fog_iot.allowed_layers = {Layer::IoT, Layer::AccessFog, Layer::EdgeFog};

  return {cloud_gp, cloud_sp, fog, fog_iot};
}

double savings(Watts p_scenario, Watts p_baseline) {
  if (p_baseline <= 0) {
    throw std::invalid_argument("baseline power must be positive to compute savings");
  }
  return 1.0 - p_scenario / p_baseline;
}

SweepResult run_sweep_on(const Instance& instance, double instructions_per_bit,
                         const std::vector<Scenario>& scenarios,
                         const std::vector<double>& rates_mbps) {
  if (scenarios.empty()) throw std::invalid_argument("run_sweep needs at least one scenario");
  if (rates_mbps.empty()) throw std::invalid_argument("run_sweep needs at least one rate");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  SweepResult result;
  result.scenarios = scenarios;
  result.rates_mbps = rates_mbps;
  result.points.reserve(scenarios.size() * rates_mbps.size());

  for (const Scenario& scenario : scenarios) {
    for (double rate_mbps : rates_mbps) {
      SweepPoint point;
      point.scenario = scenario.name;
      point.rate_mbps = rate_mbps;
      point.saving_vs_baseline = nan;
      auto requests = with_rate(instance.requests, rate_mbps * 1e6, instructions_per_bit);
      try {
        PlacementModel model = build_model(instance.topology, requests, scenario);
        point.report = solve(model);
      } catch (const std::invalid_argument&) {
        point.report.status = SolveStatus::Infeasible;  // no admissible site
      }
      if (point.report.status == SolveStatus::Optimal && !requests.empty()) {
        for (Layer layer : kProcessingLayers) point.distribution[layer] = 0.0;
        for (const ServiceRequest& req : requests) {
          const Node* site = instance.topology.find(point.report.placement.assignment.at(req.id));
          point.distribution[site->layer] += 1.0;
        }
        for (auto& [layer, count] : point.distribution) {
          count /= static_cast<double>(requests.size());
        }
      }
      result.points.push_back(std::move(point));
    }
  }

  // Savings against the first scenario at the same rate.
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    for (std::size_t ri = 0; ri < rates_mbps.size(); ++ri) {
      const SweepPoint& baseline = result.at(0, ri);
      SweepPoint& point = result.points[si * rates_mbps.size() + ri];
      if (baseline.report.status == SolveStatus::Optimal &&
          point.report.status == SolveStatus::Optimal && baseline.report.objective > 0) {
        point.saving_vs_baseline = savings(point.report.objective, baseline.report.objective);
      }
    }
  }

  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    ScenarioSummary summary;
    summary.name = scenarios[si].name;
    double sum = 0;
    double max = -std::numeric_limits<double>::infinity();
    int counted = 0;
    for (std::size_t ri = 0; ri < rates_mbps.size(); ++ri) {
      double s = result.at(si, ri).saving_vs_baseline;
      if (std::isnan(s)) continue;
      sum += s;
      max = std::max(max, s);
      ++counted;
    }
    summary.avg_saving = counted > 0 ? sum / counted : nan;
    summary.max_saving = counted > 0 ? max : nan;
    result.summaries.push_back(std::move(summary));
  }
  return result;
}

SweepResult run_sweep(const InstanceSpec& spec, const TopologyOptions& options,
                      const std::vector<Scenario>& scenarios,
                      const std::vector<double>& rates_mbps) {
  Instance instance = generate(spec, options);
  return run_sweep_on(instance, spec.instructions_per_bit, scenarios, rates_mbps);
}

}  // namespace fogplace
