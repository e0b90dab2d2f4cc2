#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oetp/model.hpp"

namespace oetp {

enum class CandidateOrder {
  kMostConstrainedFirst,  // ascending compatibility-list size, ties by id
  kInputOrder,            // ascending id
};

enum class ScheduleChoice {
  // Largest minimum residual over consumed resources after the assignment;
  // ties to the lower schedule id.
  kMaxMinResidual,
  kFirstFeasible,  // lowest compatible schedule id that fits
};

std::string to_string(CandidateOrder order);
std::string to_string(ScheduleChoice choice);
CandidateOrder parse_candidate_order(const std::string& text);
ScheduleChoice parse_schedule_choice(const std::string& text);

struct GreedyPolicy {
  CandidateOrder order = CandidateOrder::kMostConstrainedFirst;
  ScheduleChoice choice = ScheduleChoice::kMaxMinResidual;
  // When set, ties between candidates and between schedules are broken by a
  // seeded random key before falling back to ids.
  std::optional<std::uint64_t> tie_seed;
};

// Feasible solution that is maximal: on return no unassigned candidate has a
// compatible schedule whose resources all still have residual capacity.
Solution greedy_assign(const Instance& instance, const GreedyPolicy& policy = {});

// Same rule applied to the unassigned candidates of a feasible partial
// solution; assigned candidates keep their schedule. Throws ContractError on
// an infeasible start.
Solution greedy_extend(const Instance& instance, Solution start,
                       const GreedyPolicy& policy = {});

struct LocalSearchStats {
  std::int64_t evaluations = 0;
  std::int64_t improvements = 0;
  bool budget_exhausted = false;
};

// First-improvement search over 1-chain ejections: an unassigned candidate u
// takes schedule j after ejecting one assigned candidate v whose schedule
// frees every saturated resource of j, and v is then moved to another
// compatible schedule that fits. A move that fits u directly is also taken.
// Each tried move costs one evaluation against `budget`. Throws
// ContractError on an infeasible start.
Solution local_search_improve(const Instance& instance, const Solution& start,
                              std::int64_t budget,
                              LocalSearchStats* stats = nullptr);

enum class PoolProvenance { kUsedByIncumbent, kUnsaturatedExtra };

std::string to_string(PoolProvenance provenance);

struct PoolRestriction {
  std::vector<ScheduleId> kept;            // ascending
  std::vector<PoolProvenance> provenance;  // parallel to kept
  std::size_t used_count = 0;
  std::size_t extra_count = 0;
};

struct RestrictedPool {
  PoolRestriction restriction;
  // Same ids and resources as the input; compatibility lists are filtered to
  // the kept schedules.
  Instance instance;
};

// Keeps every schedule used by the incumbent plus up to `extra` unsaturated
// schedules (all consumed resources have residual >= 1), best first by
// minimum residual, ties by ascending id. Throws ContractError on an
// infeasible incumbent.
RestrictedPool restrict_pool(const Instance& instance, const Solution& incumbent,
                             std::size_t extra);

}  // namespace oetp
