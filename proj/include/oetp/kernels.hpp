#pragma once

// Data-parallel inner loops shared by the evaluators and the Lagrangian
// bound. The functions in oetp::kernels use OpenMP when the build enables it
// and the problem is large enough; oetp::kernels::reference holds plain
// serial versions kept as the testing baseline.
//
// All kernels are deterministic independent of the thread count: floating
// point reductions are always summed serially in index order.

#include <cstddef>
#include <span>
#include <vector>

#include "oetp/model.hpp"

namespace oetp::kernels {

// Loops shorter than this run serially.
inline constexpr std::size_t kParallelThreshold = 2048;

// Result of pricing a set of candidates against per-schedule costs.
struct Pricing {
  // Sum over priced candidates of max(0, 1 - min alive cost).
  double profit = 0.0;
  // Number of candidates that picked a schedule.
  std::size_t picked = 0;
};

// load[k] = number of assigned candidates whose schedule consumes k.
ResourceUsage resource_usage(const Instance& instance,
                             std::span<const ScheduleId> assignment);

// cost[j] = sum of multipliers over usage[j].
void schedule_costs(const Instance& instance, std::span<const double> lambda,
                    std::span<double> cost);

// For each candidate in `candidates`, choose the alive compatible schedule of
// smallest cost (ties to the lower id); keep it in choice[i] when its reduced
// profit 1 - cost is strictly positive, otherwise choice[i] = kUnassigned.
// `choice` and `scratch` are indexed by CandidateId and must cover every
// listed candidate.
Pricing price_candidates(const Instance& instance,
                         std::span<const CandidateId> candidates,
                         std::span<const double> cost,
                         std::span<const unsigned char> schedule_alive,
                         std::span<ScheduleId> choice,
                         std::span<double> scratch);

// Returns whether the kernels were compiled with OpenMP.
bool parallel_enabled();

// Current OpenMP thread count (1 without OpenMP).
int max_threads();

namespace reference {

ResourceUsage resource_usage(const Instance& instance,
                             std::span<const ScheduleId> assignment);

void schedule_costs(const Instance& instance, std::span<const double> lambda,
                    std::span<double> cost);

Pricing price_candidates(const Instance& instance,
                         std::span<const CandidateId> candidates,
                         std::span<const double> cost,
                         std::span<const unsigned char> schedule_alive,
                         std::span<ScheduleId> choice);

}  // namespace reference
}  // namespace oetp::kernels
