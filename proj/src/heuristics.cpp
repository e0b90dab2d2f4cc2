#include "oetp/heuristics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "oetp/errors.hpp"
#include "oetp/random.hpp"

namespace oetp {

namespace {

constexpr Capacity kNoConstraint = std::numeric_limits<Capacity>::max();

// Minimum residual over the schedule's resources after taking one unit.
Capacity min_residual_after(std::span<const ResourceId> resources,
                            std::span<const Capacity> residual) {
  Capacity m = kNoConstraint;
  for (ResourceId k : resources) m = std::min(m, residual[k] - 1);
  return m;
}

std::vector<std::uint64_t> tie_keys(std::size_t n, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  std::vector<std::uint64_t> keys(n);
  for (auto& k : keys) k = rng.next();
  return keys;
}

ResourceUsage checked_residual(const Instance& instance, const Solution& s) {
  try {
    return residual_capacities(instance, s);
  } catch (const ContractError& e) {
    throw ContractError(std::string("heuristic start is infeasible: ") + e.what());
  }
}

}  // namespace

std::string to_string(CandidateOrder order) {
  return order == CandidateOrder::kInputOrder ? "input-order" : "most-constrained-first";
}

std::string to_string(ScheduleChoice choice) {
  return choice == ScheduleChoice::kFirstFeasible ? "first-feasible" : "max-min-residual";
}

std::string to_string(PoolProvenance provenance) {
  return provenance == PoolProvenance::kUsedByIncumbent ? "used-by-incumbent"
                                                        : "unsaturated-extra";
}

CandidateOrder parse_candidate_order(const std::string& text) {
  if (text == "most-constrained-first" || text == "most-constrained") {
    return CandidateOrder::kMostConstrainedFirst;
  }
  if (text == "input-order" || text == "input") return CandidateOrder::kInputOrder;
  throw ConfigError("unknown candidate order '" + text + "'");
}

ScheduleChoice parse_schedule_choice(const std::string& text) {
  if (text == "max-min-residual") return ScheduleChoice::kMaxMinResidual;
  if (text == "first-feasible") return ScheduleChoice::kFirstFeasible;
  throw ConfigError("unknown schedule choice '" + text + "'");
}

Solution greedy_assign(const Instance& instance, const GreedyPolicy& policy) {
  return greedy_extend(instance, Solution::empty(instance.num_candidates()), policy);
}

Solution greedy_extend(const Instance& instance, Solution start,
                       const GreedyPolicy& policy) {
  ResourceUsage residual = checked_residual(instance, start);
  const std::size_t n = instance.num_candidates();

  std::vector<std::uint64_t> cand_key;
  std::vector<std::uint64_t> sched_key;
  if (policy.tie_seed) {
    cand_key = tie_keys(n, *policy.tie_seed);
    sched_key = tie_keys(instance.num_schedules(), ~*policy.tie_seed);
  }

  std::vector<CandidateId> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (start.assignment[i] == kUnassigned && !instance.compat[i].empty()) {
      order.push_back(static_cast<CandidateId>(i));
    }
  }
  const bool by_degree = policy.order == CandidateOrder::kMostConstrainedFirst;
  std::stable_sort(order.begin(), order.end(), [&](CandidateId a, CandidateId b) {
    if (by_degree) {
      const auto da = instance.compat[a].size();
      const auto db = instance.compat[b].size();
      if (da != db) return da < db;
    }
    if (!cand_key.empty() && cand_key[a] != cand_key[b]) return cand_key[a] < cand_key[b];
    return a < b;
  });

  for (CandidateId i : order) {
    ScheduleId best = kUnassigned;
    Capacity best_score = std::numeric_limits<Capacity>::min();
    for (ScheduleId j : instance.compat[i]) {
      const auto& use = instance.usage[j];
      if (!fits(use, residual)) continue;
      if (policy.choice == ScheduleChoice::kFirstFeasible && sched_key.empty()) {
        best = j;
        break;
      }
      const Capacity score = policy.choice == ScheduleChoice::kFirstFeasible
                                 ? 0
                                 : min_residual_after(use, residual);
      bool better = best == kUnassigned || score > best_score;
      if (!better && score == best_score && !sched_key.empty()) {
        better = sched_key[j] < sched_key[best];
      }
      if (better) {
        best = j;
        best_score = score;
      }
    }
    if (best == kUnassigned) continue;
    start.assignment[i] = best;
    for (ResourceId k : instance.usage[best]) --residual[k];
  }
  return start;
}

Solution local_search_improve(const Instance& instance, const Solution& start,
                              std::int64_t budget, LocalSearchStats* stats) {
  ResourceUsage residual = checked_residual(instance, start);
  Solution sol = start;
  LocalSearchStats local;
  const auto by_resource = schedules_by_resource(instance);

  std::vector<std::vector<CandidateId>> on_schedule(instance.num_schedules());
  for (std::size_t i = 0; i < sol.assignment.size(); ++i) {
    if (sol.assignment[i] != kUnassigned) {
      on_schedule[sol.assignment[i]].push_back(static_cast<CandidateId>(i));
    }
  }
  auto assign = [&](CandidateId c, ScheduleId j) {
    sol.assignment[c] = j;
    for (ResourceId k : instance.usage[j]) --residual[k];
    auto& list = on_schedule[j];
    list.insert(std::lower_bound(list.begin(), list.end(), c), c);
  };
  auto unassign = [&](CandidateId c) {
    const ScheduleId j = sol.assignment[c];
    sol.assignment[c] = kUnassigned;
    for (ResourceId k : instance.usage[j]) ++residual[k];
    auto& list = on_schedule[j];
    list.erase(std::lower_bound(list.begin(), list.end(), c));
  };
  auto spend = [&]() {
    if (local.evaluations >= budget) {
      local.budget_exhausted = true;
      return false;
    }
    ++local.evaluations;
    return true;
  };

  std::vector<ResourceId> saturated;
  std::vector<CandidateId> ejectable;
  bool improved = true;
  while (improved && !local.budget_exhausted) {
    improved = false;
    for (std::size_t u = 0; u < sol.assignment.size() && !local.budget_exhausted; ++u) {
      if (sol.assignment[u] != kUnassigned) continue;
      const auto cu = static_cast<CandidateId>(u);
      for (ScheduleId j : instance.compat[u]) {
        if (!spend()) break;
        const auto& use = instance.usage[j];
        saturated.clear();
        for (ResourceId k : use) {
          if (residual[k] < 1) saturated.push_back(k);
        }
        if (saturated.empty()) {
          assign(cu, j);
          improved = true;
          ++local.improvements;
          break;
        }
        // Assigned candidates whose schedule covers every saturated resource.
        ejectable.clear();
        for (ScheduleId s : by_resource[saturated.front()]) {
          const auto& su = instance.usage[s];
          if (!std::includes(su.begin(), su.end(), saturated.begin(), saturated.end())) continue;
          ejectable.insert(ejectable.end(), on_schedule[s].begin(), on_schedule[s].end());
        }
        std::sort(ejectable.begin(), ejectable.end());
        bool done = false;
        for (CandidateId v : ejectable) {
          if (v == cu) continue;
          if (!spend()) break;
          const ScheduleId old = sol.assignment[v];
          unassign(v);
          if (!fits(use, residual)) {
            assign(v, old);
            continue;
          }
          assign(cu, j);
          ScheduleId moved = kUnassigned;
          for (ScheduleId alt : instance.compat[v]) {
            if (fits(instance.usage[alt], residual)) {
              moved = alt;
              break;
            }
          }
          if (moved != kUnassigned) {
            assign(v, moved);
            done = true;
            break;
          }
          unassign(cu);
          assign(v, old);
        }
        if (done) {
          improved = true;
          ++local.improvements;
          break;
        }
        if (local.budget_exhausted) break;
      }
    }
  }
  if (stats) *stats = local;
  return sol;
}

RestrictedPool restrict_pool(const Instance& instance, const Solution& incumbent,
                             std::size_t extra) {
  const ResourceUsage residual = checked_residual(instance, incumbent);
  const std::size_t np = instance.num_schedules();

  std::vector<unsigned char> used(np, 0);
  for (ScheduleId j : incumbent.assignment) {
    if (j != kUnassigned) used[j] = 1;
  }
  struct Extra {
    Capacity min_residual;
    ScheduleId id;
  };
  std::vector<Extra> candidates;
  for (std::size_t j = 0; j < np; ++j) {
    if (used[j]) continue;
    const auto& use = instance.usage[j];
    if (!fits(use, residual)) continue;
    Capacity m = kNoConstraint;
    for (ResourceId k : use) m = std::min(m, residual[k]);
    candidates.push_back({m, static_cast<ScheduleId>(j)});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Extra& a, const Extra& b) {
    if (a.min_residual != b.min_residual) return a.min_residual > b.min_residual;
    return a.id < b.id;
  });
  if (candidates.size() > extra) candidates.resize(extra);

  std::vector<unsigned char> keep = used;
  for (const Extra& e : candidates) keep[e.id] = 2;

  RestrictedPool out;
  for (std::size_t j = 0; j < np; ++j) {
    if (!keep[j]) continue;
    out.restriction.kept.push_back(static_cast<ScheduleId>(j));
    if (keep[j] == 1) {
      out.restriction.provenance.push_back(PoolProvenance::kUsedByIncumbent);
      ++out.restriction.used_count;
    } else {
      out.restriction.provenance.push_back(PoolProvenance::kUnsaturatedExtra);
      ++out.restriction.extra_count;
    }
  }

  out.instance.usage = instance.usage;
  out.instance.capacity = instance.capacity;
  out.instance.labels = instance.labels;
  out.instance.compat.resize(instance.num_candidates());
  for (std::size_t i = 0; i < instance.num_candidates(); ++i) {
    for (ScheduleId j : instance.compat[i]) {
      if (keep[j]) out.instance.compat[i].push_back(j);
    }
  }
  return out;
}

}  // namespace oetp
