#ifndef FOGPLACE_HARNESS_HPP
#define FOGPLACE_HARNESS_HPP

#include <map>
#include <string>
#include <vector>

#include "fogplace/instance.hpp"
#include "fogplace/optimizer.hpp"

namespace fogplace {

/// One solved (scenario, rate) cell of a sweep.
struct SweepPoint {
  std::string scenario;
  double rate_mbps = 0;
  SolveReport report;
  /// 1 - P/P_baseline against the first scenario at the same rate; NaN when
  /// either point is infeasible.
  double saving_vs_baseline = 0;
  /// Fraction of services processed per layer; sums to 1 for optimal points.
  std::map<Layer, double> distribution;
};

struct ScenarioSummary {
  std::string name;
  double max_saving = 0;
  double avg_saving = 0;
};

/// All points of a sweep in deterministic (scenario, rate) order, plus the
/// per-scenario savings summary. The first scenario is the baseline.
struct SweepResult {
  std::vector<Scenario> scenarios;
  std::vector<double> rates_mbps;
  std::vector<SweepPoint> points;  // scenario-major
  std::vector<ScenarioSummary> summaries;

  const SweepPoint& at(std::size_t scenario_idx, std::size_t rate_idx) const {
    return points[scenario_idx * rates_mbps.size() + rate_idx];
  }
};

/// The four studied placement policies, in reporting order:
///   cloud-gp  — everything on general-purpose cloud servers (the baseline)
///   cloud-sp  — everything on special-purpose cloud servers
///   fog       — Access Fog + Edge Fog, cloud GP overflow
///   fog-iot   — IoT devices + both fog layers, cloud GP overflow
std::vector<Scenario> builtin_scenarios(
    const IdleAttributionPolicy& policy = IdleAttributionPolicy());

/// Fractional power saving of a scenario against the baseline: 1 - p/p_base.
/// Throws std::invalid_argument for a non-positive baseline.
double savings(Watts p_scenario, Watts p_baseline);

/// Generates one instance from (spec, options) and solves every scenario at
/// every rate on it, re-rating the shared request set per point. Infeasible
/// points are recorded as gaps and never abort the sweep.
SweepResult run_sweep(const InstanceSpec& spec, const TopologyOptions& options,
                      const std::vector<Scenario>& scenarios,
                      const std::vector<double>& rates_mbps);

/// Same sweep over an already-built instance (e.g. reloaded from a replay
/// file). `instructions_per_bit` drives the per-point demand recomputation.
SweepResult run_sweep_on(const Instance& instance, double instructions_per_bit,
                         const std::vector<Scenario>& scenarios,
                         const std::vector<double>& rates_mbps);

}  // namespace fogplace

#endif  // FOGPLACE_HARNESS_HPP
