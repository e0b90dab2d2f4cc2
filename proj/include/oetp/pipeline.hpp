#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "oetp/exact.hpp"
#include "oetp/heuristics.hpp"
#include "oetp/model.hpp"

namespace oetp {

// Greedy -> optional local search -> pool restriction -> warm-started
// branch-and-bound on the restricted pool.
struct PipelineConfig {
  GreedyPolicy greedy;
  bool local_search = true;
  std::int64_t local_search_budget = 2'000'000;
  // Extra unsaturated schedules kept next to the incumbent's; nullopt solves
  // over the full pool.
  std::optional<std::size_t> pool_extra = 100;
  SolverConfig solver;
};

struct PipelineResult {
  Solution greedy;
  Solution warm_start;  // after local search
  LocalSearchStats local_search;
  PoolRestriction pool;  // empty when the full pool was used
  bool restricted = false;
  Instance solved_instance;  // the instance handed to branch-and-bound
  SolveReport report;
};

PipelineResult run_pipeline(const Instance& instance, const PipelineConfig& config);

// Machine-readable JSON summary. Deterministic: timing data is left out so
// repeated runs with identical inputs give identical bytes.
std::string serialize_report(const PipelineResult& result);

}  // namespace oetp
