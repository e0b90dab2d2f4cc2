#include <string>

#include "oetp/errors.hpp"
#include "oetp/exact.hpp"

namespace oetp {

namespace {

struct Enumerator {
  const Instance& instance;
  std::vector<std::int64_t> assignable_from;  // suffix counts of nonempty compat
  ResourceUsage residual;
  std::vector<ScheduleId> current;
  std::vector<ScheduleId> best;
  std::int64_t best_value = -1;

  void run(std::size_t i, std::int64_t value) {
    // Ties are pruned too: anything found later is lexicographically larger.
    if (value + assignable_from[i] <= best_value) return;
    if (i == current.size()) {
      best_value = value;
      best = current;
      return;
    }
    for (ScheduleId j : instance.compat[i]) {
      const auto& use = instance.usage[j];
      if (!fits(use, residual)) continue;
      for (ResourceId k : use) --residual[k];
      current[i] = j;
      run(i + 1, value + 1);
      for (ResourceId k : use) ++residual[k];
    }
    current[i] = kUnassigned;
    run(i + 1, value);
  }
};

}  // namespace

Solution brute_force_solve(const Instance& instance, std::uint64_t leaf_cap) {
  std::uint64_t leaves = 1;
  for (const auto& c : instance.compat) {
    const std::uint64_t f = c.size() + 1;
    if (leaves > leaf_cap / f) {
      throw SizeError("brute force enumeration exceeds the leaf cap of " +
                      std::to_string(leaf_cap));
    }
    leaves *= f;
  }
  if (leaves > leaf_cap) {
    throw SizeError("brute force enumeration exceeds the leaf cap of " +
                    std::to_string(leaf_cap));
  }

  const std::size_t n = instance.num_candidates();
  Enumerator e{instance, std::vector<std::int64_t>(n + 1, 0), instance.capacity,
               std::vector<ScheduleId>(n, kUnassigned), {}, -1};
  for (std::size_t i = n; i-- > 0;) {
    e.assignable_from[i] = e.assignable_from[i + 1] + (instance.compat[i].empty() ? 0 : 1);
  }
  e.run(0, 0);
  return Solution(std::move(e.best));
}

}  // namespace oetp
