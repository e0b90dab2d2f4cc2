#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oetp/lagrangian.hpp"
#include "oetp/model.hpp"

namespace oetp {

inline constexpr std::uint64_t kDefaultBruteForceLeafCap = 10'000'000;

// Exhaustive enumeration with feasibility pruning. Among optimal solutions
// returns the lexicographically smallest assignment vector, ordering
// schedule ids ascending and "unassigned" after every schedule. Throws
// SizeError when prod_i (|P_i| + 1) exceeds leaf_cap.
Solution brute_force_solve(const Instance& instance,
                           std::uint64_t leaf_cap = kDefaultBruteForceLeafCap);

enum class Termination { kOptimal, kTimeLimit, kNodeLimit };

std::string to_string(Termination termination);

struct SolverLimits {
  double time_limit_s = 1200.0;
  std::optional<std::int64_t> node_limit;
};

struct SolverConfig {
  SolverLimits limits;
  SubgradientConfig root_dual{200, 2.0, 20, 1e-4};
  SubgradientConfig node_dual{30, 2.0, 20, 1e-4};
  // Greedy completion of every processed node as a primal heuristic.
  bool node_heuristic = true;
  // Record a search event every this many nodes (besides incumbent changes).
  std::int64_t log_every = 1000;
};

struct SearchEvent {
  std::int64_t nodes = 0;
  double elapsed_s = 0.0;
  std::size_t open_nodes = 0;
  std::int64_t global_bound = 0;
  std::int64_t incumbent = 0;
  std::string what;  // "start", "incumbent", "root", "progress", "end"
};

struct SolveReport {
  Solution incumbent;
  // Global bound at termination (equal to the incumbent value when optimal).
  BoundCertificate bound;
  BoundCertificate root_bound;
  bool proven_optimal = false;
  std::int64_t nodes_explored = 0;
  double wall_time_s = 0.0;
  Termination termination = Termination::kOptimal;
  std::int64_t warm_start_value = 0;
  std::vector<SearchEvent> events;
};

// Best-first branch-and-bound over candidates. Every node is bounded by its
// fixed value plus the Lagrangian bound of the residual problem, with
// multipliers inherited from the parent. Throws ContractError when the warm
// start is infeasible.
SolveReport branch_and_bound(const Instance& instance,
                             const std::optional<Solution>& warm_start = std::nullopt,
                             const SolverConfig& config = {});

void write_event_log_csv(std::ostream& out, const std::vector<SearchEvent>& events);

}  // namespace oetp
