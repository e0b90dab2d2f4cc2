#pragma once

// Instance and solution data model for oral-examination timetabling posed as
// a unit-profit multidimensional knapsack with per-candidate choice sets.
//
// A candidate i may receive at most one schedule j from its compatibility
// list compat[i]. Assigning j consumes one unit of every resource listed in
// usage[j]; resource k holds capacity[k] units. The objective is the number
// of assigned candidates.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace oetp {

using CandidateId = std::int32_t;
using ScheduleId = std::int32_t;
using ResourceId = std::int32_t;
using Capacity = std::int64_t;

inline constexpr ScheduleId kUnassigned = -1;

struct Labels {
  std::vector<std::string> candidates;
  std::vector<std::string> schedules;
  std::vector<std::string> resources;

  bool empty() const {
    return candidates.empty() && schedules.empty() && resources.empty();
  }
  bool operator==(const Labels&) const = default;
};

// Immutable after construction by convention; every algorithm takes it by
// const reference and it can be shared freely between threads.
struct Instance {
  // compat[i]: sorted, duplicate-free schedule ids acceptable to candidate i.
  std::vector<std::vector<ScheduleId>> compat;
  // usage[j]: sorted, duplicate-free resource ids consumed by schedule j.
  std::vector<std::vector<ResourceId>> usage;
  // capacity[k] = b_k.
  std::vector<Capacity> capacity;
  Labels labels;

  std::size_t num_candidates() const { return compat.size(); }
  std::size_t num_schedules() const { return usage.size(); }
  std::size_t num_resources() const { return capacity.size(); }

  // Total number of candidate-schedule compatibility pairs.
  std::size_t num_relations() const;

  bool operator==(const Instance&) const = default;
};

// Partial assignment; assignment[i] == kUnassigned means candidate i gets no
// schedule.
struct Solution {
  std::vector<ScheduleId> assignment;

  Solution() = default;
  explicit Solution(std::vector<ScheduleId> a) : assignment(std::move(a)) {}

  static Solution empty(std::size_t num_candidates) {
    return Solution(std::vector<ScheduleId>(num_candidates, kUnassigned));
  }

  // Number of assigned candidates.
  std::int64_t value() const;

  bool operator==(const Solution&) const = default;
};

// Per-resource consumption (or residual capacity, depending on context).
using ResourceUsage = std::vector<Capacity>;

struct Violation {
  enum class Kind {
    kScheduleOutOfRange,
    kResourceOutOfRange,
    kDuplicateOrUnsorted,
    kNegativeCapacity,
    kLabelCount,
    kIncompatible,
    kOverCapacity,
  };
  Kind kind;
  std::string where;  // e.g. "compat[3][1]" or "resource 7"
  std::string message;
};

std::string to_string(Violation::Kind kind);

// Every broken invariant of the instance, in a fixed scan order. Empty means
// valid.
std::vector<Violation> validate_instance(const Instance& instance);

struct Evaluation {
  std::int64_t value = 0;
  ResourceUsage usage;
  bool feasible = true;
  std::vector<Violation> violations;
};

// Objective value, resource load and feasibility of a solution. Throws
// ContractError when the assignment length does not match the instance.
Evaluation evaluate_solution(const Instance& instance, const Solution& solution);

// b_k minus load for every resource. Throws ContractError if the solution is
// infeasible.
ResourceUsage residual_capacities(const Instance& instance,
                                  const Solution& solution);

// Convenience used by every algorithm module.
inline bool fits(std::span<const ResourceId> resources,
                 std::span<const Capacity> residual) {
  for (ResourceId k : resources) {
    if (residual[k] < 1) return false;
  }
  return true;
}

// For each resource k, the schedules that consume it (the sets P_k).
std::vector<std::vector<ScheduleId>> schedules_by_resource(
    const Instance& instance);

}  // namespace oetp
