#include "oetp/kernels.hpp"

#include <limits>

#ifdef OETP_HAVE_OPENMP
#include <omp.h>
#endif

namespace oetp::kernels {

namespace {

inline double best_alive_cost(const std::vector<ScheduleId>& compat,
                              std::span<const double> cost,
                              std::span<const unsigned char> alive,
                              ScheduleId& best) {
  double best_cost = std::numeric_limits<double>::infinity();
  best = kUnassigned;
  for (ScheduleId j : compat) {
    if (!alive[j]) continue;
    if (cost[j] < best_cost) {
      best_cost = cost[j];
      best = j;
    }
  }
  return best_cost;
}

}  // namespace

bool parallel_enabled() {
#ifdef OETP_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef OETP_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

ResourceUsage resource_usage(const Instance& instance,
                             std::span<const ScheduleId> assignment) {
  const auto n = static_cast<std::ptrdiff_t>(assignment.size());
  const std::size_t m = instance.num_resources();
  ResourceUsage load(m, 0);
  if (static_cast<std::size_t>(n) < kParallelThreshold) {
    return reference::resource_usage(instance, assignment);
  }
#ifdef OETP_HAVE_OPENMP
#pragma omp parallel
  {
    ResourceUsage local(m, 0);
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const ScheduleId j = assignment[i];
      if (j == kUnassigned) continue;
      for (ResourceId k : instance.usage[j]) ++local[k];
    }
#pragma omp critical(oetp_resource_usage)
    for (std::size_t k = 0; k < m; ++k) load[k] += local[k];
  }
  return load;
#else
  return reference::resource_usage(instance, assignment);
#endif
}

void schedule_costs(const Instance& instance, std::span<const double> lambda,
                    std::span<double> cost) {
  const auto n = static_cast<std::ptrdiff_t>(instance.num_schedules());
#ifdef OETP_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (n >= static_cast<std::ptrdiff_t>(kParallelThreshold))
#endif
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    double c = 0.0;
    for (ResourceId k : instance.usage[j]) c += lambda[k];
    cost[j] = c;
  }
}

Pricing price_candidates(const Instance& instance,
                         std::span<const CandidateId> candidates,
                         std::span<const double> cost,
                         std::span<const unsigned char> schedule_alive,
                         std::span<ScheduleId> choice,
                         std::span<double> scratch) {
  const auto n = static_cast<std::ptrdiff_t>(candidates.size());
#ifdef OETP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 256) if (n >= static_cast<std::ptrdiff_t>(kParallelThreshold))
#endif
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    const CandidateId i = candidates[t];
    ScheduleId best;
    const double c = best_alive_cost(instance.compat[i], cost, schedule_alive, best);
    const double profit = 1.0 - c;
    if (best != kUnassigned && profit > 0.0) {
      choice[i] = best;
      scratch[i] = profit;
    } else {
      choice[i] = kUnassigned;
      scratch[i] = 0.0;
    }
  }
  // Serial sum in candidate order keeps the result independent of threading.
  Pricing out;
  for (CandidateId i : candidates) {
    out.profit += scratch[i];
    if (choice[i] != kUnassigned) ++out.picked;
  }
  return out;
}

namespace reference {

ResourceUsage resource_usage(const Instance& instance,
                             std::span<const ScheduleId> assignment) {
  ResourceUsage load(instance.num_resources(), 0);
  for (ScheduleId j : assignment) {
    if (j == kUnassigned) continue;
    for (ResourceId k : instance.usage[j]) ++load[k];
  }
  return load;
}

void schedule_costs(const Instance& instance, std::span<const double> lambda,
                    std::span<double> cost) {
  for (std::size_t j = 0; j < instance.num_schedules(); ++j) {
    double c = 0.0;
    for (ResourceId k : instance.usage[j]) c += lambda[k];
    cost[j] = c;
  }
}

Pricing price_candidates(const Instance& instance,
                         std::span<const CandidateId> candidates,
                         std::span<const double> cost,
                         std::span<const unsigned char> schedule_alive,
                         std::span<ScheduleId> choice) {
  Pricing out;
  for (CandidateId i : candidates) {
    ScheduleId best;
    const double c = best_alive_cost(instance.compat[i], cost, schedule_alive, best);
    if (best != kUnassigned && 1.0 - c > 0.0) {
      choice[i] = best;
      out.profit += 1.0 - c;
      ++out.picked;
    } else {
      choice[i] = kUnassigned;
    }
  }
  return out;
}

}  // namespace reference
}  // namespace oetp::kernels
