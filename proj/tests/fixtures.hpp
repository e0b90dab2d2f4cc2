#pragma once

// Shared test instances and test-only oracles. Nothing here calls into the
// solver code it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "oetp/model.hpp"

namespace oetp::testing {

// T1: 3 candidates, 2 schedules, 2 resources.
//   capacities b = [2, 1]
//   schedule 0 uses {r0}, schedule 1 uses {r0, r1}
//   candidate 0 -> {s0, s1}, candidate 1 -> {s0}, candidate 2 -> {s1}
// Optimum 2: r0 admits two assignments in total.
inline Instance t1() {
  Instance inst;
  inst.capacity = {2, 1};
  inst.usage = {{0}, {0, 1}};
  inst.compat = {{0, 1}, {0}, {1}};
  return inst;
}

struct RandomShape {
  int max_candidates = 10;
  int max_schedules = 8;
  int max_resources = 6;
  int max_capacity = 3;
  int max_usage = 3;
  double compat_density = 0.35;
};

// Random valid instance with sizes drawn up to the given maxima.
inline Instance random_instance(std::mt19937_64& rng, const RandomShape& shape = {}) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const int nc = pick(0, shape.max_candidates);
  const int np = pick(0, shape.max_schedules);
  const int nr = pick(0, shape.max_resources);
  Instance inst;
  inst.capacity.resize(nr);
  for (auto& b : inst.capacity) b = pick(0, shape.max_capacity);
  inst.usage.resize(np);
  for (auto& u : inst.usage) {
    const int m = nr == 0 ? 0 : pick(0, std::min(nr, shape.max_usage));
    std::vector<ResourceId> all(nr);
    for (int k = 0; k < nr; ++k) all[k] = k;
    std::shuffle(all.begin(), all.end(), rng);
    u.assign(all.begin(), all.begin() + m);
    std::sort(u.begin(), u.end());
  }
  inst.compat.resize(nc);
  std::bernoulli_distribution coin(shape.compat_density);
  for (auto& c : inst.compat) {
    for (int j = 0; j < np; ++j) {
      if (coin(rng)) c.push_back(j);
    }
  }
  return inst;
}

// Plain exhaustive optimum: visits every assignment vector, no pruning.
inline std::int64_t exhaustive_optimum(const Instance& inst) {
  const std::size_t n = inst.num_candidates();
  std::vector<ScheduleId> a(n, kUnassigned);
  std::int64_t best = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      ResourceUsage load(inst.num_resources(), 0);
      std::int64_t v = 0;
      for (ScheduleId j : a) {
        if (j == kUnassigned) continue;
        ++v;
        for (ResourceId k : inst.usage[j]) ++load[k];
      }
      for (std::size_t k = 0; k < load.size(); ++k) {
        if (load[k] > inst.capacity[k]) return;
      }
      best = std::max(best, v);
      return;
    }
    a[i] = kUnassigned;
    rec(i + 1);
    for (ScheduleId j : inst.compat[i]) {
      a[i] = j;
      rec(i + 1);
    }
    a[i] = kUnassigned;
  };
  rec(0);
  return best;
}

// Independent feasibility check.
inline bool feasible(const Instance& inst, const Solution& s) {
  if (s.assignment.size() != inst.num_candidates()) return false;
  ResourceUsage load(inst.num_resources(), 0);
  for (std::size_t i = 0; i < s.assignment.size(); ++i) {
    const ScheduleId j = s.assignment[i];
    if (j == kUnassigned) continue;
    const auto& c = inst.compat[i];
    if (std::find(c.begin(), c.end(), j) == c.end()) return false;
    for (ResourceId k : inst.usage[j]) ++load[k];
  }
  for (std::size_t k = 0; k < load.size(); ++k) {
    if (load[k] > inst.capacity[k]) return false;
  }
  return true;
}

// Applies a permutation to candidate, schedule and resource ids.
inline Instance relabel(const Instance& inst, std::mt19937_64& rng) {
  auto perm = [&](std::size_t n) {
    std::vector<std::int32_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::int32_t>(i);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
  };
  const auto pc = perm(inst.num_candidates());
  const auto ps = perm(inst.num_schedules());
  const auto pr = perm(inst.num_resources());
  Instance out;
  out.capacity.resize(inst.num_resources());
  for (std::size_t k = 0; k < pr.size(); ++k) out.capacity[pr[k]] = inst.capacity[k];
  out.usage.resize(inst.num_schedules());
  for (std::size_t j = 0; j < ps.size(); ++j) {
    for (ResourceId k : inst.usage[j]) out.usage[ps[j]].push_back(pr[k]);
    std::sort(out.usage[ps[j]].begin(), out.usage[ps[j]].end());
  }
  out.compat.resize(inst.num_candidates());
  for (std::size_t i = 0; i < pc.size(); ++i) {
    for (ScheduleId j : inst.compat[i]) out.compat[pc[i]].push_back(ps[j]);
    std::sort(out.compat[pc[i]].begin(), out.compat[pc[i]].end());
  }
  return out;
}

}  // namespace oetp::testing
