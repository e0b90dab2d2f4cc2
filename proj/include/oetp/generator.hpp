#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oetp/model.hpp"

namespace oetp {

// How compatible schedules are drawn for each candidate.
enum class PopularityShape {
  kUniform,  // every schedule equally likely
  kSkewed,   // Zipf weight 1/(rank+1) over a random ranking of schedules
};

std::string to_string(PopularityShape shape);
PopularityShape parse_popularity_shape(const std::string& text);

// Seeded description of a synthetic instance family. Default sizes: 7,804
// candidates, 7,759 schedules, 103 resources, 1,123,321 compatibility
// relations, up to four resources per schedule.
struct GeneratorConfig {
  std::uint64_t seed = 42;
  std::int64_t num_candidates = 7804;
  std::int64_t num_schedules = 7759;
  std::int64_t num_resources = 103;
  std::int64_t target_relations = 1'123'321;
  std::int64_t min_resources_per_schedule = 1;
  std::int64_t max_resources_per_schedule = 4;
  // Capacities are sized as capacity_factor times the expected demand on
  // each resource.
  double capacity_factor = 1.0;
  PopularityShape shape = PopularityShape::kUniform;
};

// Throws ConfigError on an impossible configuration.
void validate_config(const GeneratorConfig& config);

// Deterministic for a fixed config (bit-identical across platforms).
//
// Construction:
//  1. each schedule consumes between(min, max) distinct resources, chosen
//     uniformly (Floyd's algorithm);
//  2. candidate degrees are drawn uniformly in [mean/2, 3*mean/2] and then
//     nudged by random +-1 steps until they sum to exactly target_relations;
//  3. each candidate's compatible schedules are drawn by weighted sampling
//     without replacement over integer weights (exact Fenwick tree);
//  4. capacity[k] = round(capacity_factor * expected_demand[k]).
Instance generate_instance(const GeneratorConfig& config);

// Expected load on every resource if each candidate picks one of its
// compatible schedules uniformly at random.
std::vector<double> expected_demand(const Instance& instance);

struct InstanceStats {
  std::size_t num_candidates = 0;
  std::size_t num_schedules = 0;
  std::size_t num_resources = 0;
  std::size_t num_relations = 0;
  std::size_t unassignable_candidates = 0;  // empty compatibility list
  // value -> how many entities have it
  std::map<std::size_t, std::size_t> candidate_degree;
  std::map<std::size_t, std::size_t> schedule_popularity;
  std::map<std::size_t, std::size_t> resources_per_schedule;
  std::vector<double> demand;
  // demand / capacity per resource; +inf for zero capacity with demand, 0
  // when both are zero.
  std::vector<double> demand_supply_ratio;
  Capacity total_capacity = 0;
  double total_demand = 0.0;
};

InstanceStats instance_stats(const Instance& instance);

}  // namespace oetp
