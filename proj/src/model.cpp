#include "oetp/model.hpp"

#include <algorithm>
#include <string>

#include "oetp/errors.hpp"
#include "oetp/kernels.hpp"

namespace oetp {

namespace {

template <typename Id>
void check_id_list(const std::vector<Id>& ids, std::size_t bound,
                   const std::string& name, std::size_t owner,
                   Violation::Kind out_of_range,
                   std::vector<Violation>& out) {
  for (std::size_t p = 0; p < ids.size(); ++p) {
    const Id id = ids[p];
    if (id < 0 || static_cast<std::size_t>(id) >= bound) {
      out.push_back({out_of_range,
                     name + "[" + std::to_string(owner) + "][" + std::to_string(p) + "]",
                     "id " + std::to_string(id) + " outside [0, " +
                         std::to_string(bound) + ")"});
    }
    if (p > 0 && ids[p - 1] >= id) {
      out.push_back({Violation::Kind::kDuplicateOrUnsorted,
                     name + "[" + std::to_string(owner) + "][" + std::to_string(p) + "]",
                     ids[p - 1] == id ? "duplicate id " + std::to_string(id)
                                      : "list not sorted ascending"});
    }
  }
}

}  // namespace

std::size_t Instance::num_relations() const {
  std::size_t total = 0;
  for (const auto& c : compat) total += c.size();
  return total;
}

std::int64_t Solution::value() const {
  return std::count_if(assignment.begin(), assignment.end(),
                       [](ScheduleId j) { return j != kUnassigned; });
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kScheduleOutOfRange: return "schedule-out-of-range";
    case Violation::Kind::kResourceOutOfRange: return "resource-out-of-range";
    case Violation::Kind::kDuplicateOrUnsorted: return "duplicate-or-unsorted";
    case Violation::Kind::kNegativeCapacity: return "negative-capacity";
    case Violation::Kind::kLabelCount: return "label-count";
    case Violation::Kind::kIncompatible: return "incompatible";
    case Violation::Kind::kOverCapacity: return "over-capacity";
  }
  return "unknown";
}

std::vector<Violation> validate_instance(const Instance& instance) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < instance.compat.size(); ++i) {
    check_id_list(instance.compat[i], instance.num_schedules(), "compat", i,
                  Violation::Kind::kScheduleOutOfRange, out);
  }
  for (std::size_t j = 0; j < instance.usage.size(); ++j) {
    check_id_list(instance.usage[j], instance.num_resources(), "usage", j,
                  Violation::Kind::kResourceOutOfRange, out);
  }
  for (std::size_t k = 0; k < instance.capacity.size(); ++k) {
    if (instance.capacity[k] < 0) {
      out.push_back({Violation::Kind::kNegativeCapacity,
                     "capacities[" + std::to_string(k) + "]",
                     "capacity " + std::to_string(instance.capacity[k]) + " < 0"});
    }
  }
  const Labels& l = instance.labels;
  auto check_labels = [&](const std::vector<std::string>& names, std::size_t n,
                          const char* what) {
    if (!names.empty() && names.size() != n) {
      out.push_back({Violation::Kind::kLabelCount, std::string("labels.") + what,
                     std::to_string(names.size()) + " labels for " +
                         std::to_string(n) + " entries"});
    }
  };
  check_labels(l.candidates, instance.num_candidates(), "candidates");
  check_labels(l.schedules, instance.num_schedules(), "schedules");
  check_labels(l.resources, instance.num_resources(), "resources");
  return out;
}

Evaluation evaluate_solution(const Instance& instance, const Solution& solution) {
  if (solution.assignment.size() != instance.num_candidates()) {
    throw ContractError("solution covers " +
                        std::to_string(solution.assignment.size()) +
                        " candidates, instance has " +
                        std::to_string(instance.num_candidates()));
  }
  Evaluation ev;
  ev.value = solution.value();

  // Out-of-range or incompatible assignments are reported and left out of
  // the load computation.
  std::vector<ScheduleId> counted = solution.assignment;
  for (std::size_t i = 0; i < counted.size(); ++i) {
    const ScheduleId j = counted[i];
    if (j == kUnassigned) continue;
    const auto& c = instance.compat[i];
    if (!std::binary_search(c.begin(), c.end(), j)) {
      ev.violations.push_back({Violation::Kind::kIncompatible,
                               "candidate " + std::to_string(i),
                               "schedule " + std::to_string(j) +
                                   " not in its compatibility list"});
      counted[i] = kUnassigned;
    }
  }
  ev.usage = kernels::resource_usage(instance, counted);
  for (std::size_t k = 0; k < ev.usage.size(); ++k) {
    if (ev.usage[k] > instance.capacity[k]) {
      ev.violations.push_back({Violation::Kind::kOverCapacity,
                               "resource " + std::to_string(k),
                               "load " + std::to_string(ev.usage[k]) +
                                   " exceeds capacity " +
                                   std::to_string(instance.capacity[k])});
    }
  }
  ev.feasible = ev.violations.empty();
  return ev;
}

ResourceUsage residual_capacities(const Instance& instance,
                                  const Solution& solution) {
  Evaluation ev = evaluate_solution(instance, solution);
  if (!ev.feasible) {
    throw ContractError("residual capacities requested for an infeasible solution (" +
                        ev.violations.front().where + ": " +
                        ev.violations.front().message + ")");
  }
  ResourceUsage residual = instance.capacity;
  for (std::size_t k = 0; k < residual.size(); ++k) residual[k] -= ev.usage[k];
  return residual;
}

std::vector<std::vector<ScheduleId>> schedules_by_resource(
    const Instance& instance) {
  std::vector<std::vector<ScheduleId>> out(instance.num_resources());
  for (std::size_t j = 0; j < instance.num_schedules(); ++j) {
    for (ResourceId k : instance.usage[j]) {
      out[k].push_back(static_cast<ScheduleId>(j));
    }
  }
  return out;
}

}  // namespace oetp
