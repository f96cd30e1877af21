#ifndef FOGPLACE_OPTIMIZER_HPP
#define FOGPLACE_OPTIMIZER_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fogplace/model.hpp"
#include "fogplace/power.hpp"

namespace fogplace {

/// One admissible processing location for a service: the hosting node, the
/// server class used there, and the network elements its traffic traverses.
struct CandidateSite {
  std::string node;
  ProcessingProfile profile;
  int replica_cap = 1;  // kUnboundedReplicas for the cloud
  Layer layer = Layer::IoT;
  std::vector<std::string> path;  // element ids from the source toward the node
  /// Admissible per-service cost: load-proportional power along the path plus
  /// idle terms dedicated to this service. Shared fixed charges (ONU idle,
  /// server replica activation at pooled sites) are excluded.
  Watts linear_marginal = 0;
};

/// Binary-assignment model over a fixed aggregation tree: each service picks
/// one candidate site, server replicas activate integrally, every network
/// element and server pool respects its capacity, and the objective is total
/// attributed power. Immutable once built.
struct PlacementModel {
  Topology topology;
  std::vector<ServiceRequest> services;
  Scenario scenario;
  /// Per service, in placement preference order (layer, then node id).
  std::vector<std::vector<CandidateSite>> candidates;
};

enum class SolveStatus { Optimal, Infeasible };

const char* to_string(SolveStatus status);

struct SolveReport {
  Placement placement;
  PowerBreakdown breakdown;
  Watts objective = 0;
  SolveStatus status = SolveStatus::Infeasible;
  std::uint64_t node_count = 0;  // search nodes explored
  double wall_time_s = 0;
};

/// Derives the candidate sites a scenario admits for every service and the
/// associated cost coefficients. Throws std::invalid_argument when the
/// scenario admits no site at all for some service.
PlacementModel build_model(const Topology& topology,
                           const std::vector<ServiceRequest>& requests,
                           const Scenario& scenario);

/// Sums the power of a complete placement: per-element network power along
/// each service's path (wireless transmit power on the IoT hop), server power
/// per site, idle attributed per the scenario policy. Replica counts are taken
/// from the placement when present, otherwise the minimum feasible count.
/// Throws CapacityError naming the overloaded element or pool.
PowerBreakdown evaluate(const Topology& topology,
                        const std::vector<ServiceRequest>& requests,
                        const Placement& placement, const Scenario& scenario);

/// Solver interface; the default is the exact branch-and-bound below, but an
/// external MILP backend can be substituted behind it.
class PlacementSolver {
 public:
  virtual ~PlacementSolver() = default;
  virtual SolveReport solve(const PlacementModel& model) const = 0;
};

/// Exact depth-first branch-and-bound over the assignment variables with an
/// admissible lower bound (committed power plus capacity-relaxed minimum
/// marginals plus idle activations that every remaining option forces).
/// Deterministic: services are branched in input order, sites in preference
/// order, and among equal-cost optima the first found is kept, which prefers
/// the lowest layer and then the lowest node id service by service.
class BranchAndBoundSolver final : public PlacementSolver {
 public:
  SolveReport solve(const PlacementModel& model) const override;
};

/// Solves with the default exact solver.
SolveReport solve(const PlacementModel& model);

/// Exhaustive oracle over all admissible assignments; identical tie-breaking
/// to solve(). Guarded to small instances; throws std::invalid_argument above
/// `max_services`.
SolveReport brute_force(const PlacementModel& model, std::size_t max_services = 10);

}  // namespace fogplace

#endif  // FOGPLACE_OPTIMIZER_HPP
