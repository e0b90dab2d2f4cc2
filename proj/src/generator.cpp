#include "oetp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "oetp/errors.hpp"
#include "oetp/random.hpp"

namespace oetp {

namespace {

// Fenwick tree over nonnegative integer weights supporting draw-by-weight.
class WeightTree {
 public:
  explicit WeightTree(const std::vector<std::int64_t>& weights)
      : n_(weights.size()), tree_(weights.size() + 1, 0) {
    for (std::size_t i = 0; i < n_; ++i) add(i, weights[i]);
    top_ = 1;
    while (top_ * 2 <= n_) top_ *= 2;
  }

  void add(std::size_t index, std::int64_t delta) {
    total_ += delta;
    for (std::size_t i = index + 1; i <= n_; i += i & (~i + 1)) tree_[i] += delta;
  }

  std::int64_t total() const { return total_; }

  // Smallest index whose prefix sum exceeds target, 0 <= target < total().
  std::size_t find(std::int64_t target) const {
    std::size_t pos = 0;
    for (std::size_t step = top_; step > 0; step /= 2) {
      if (pos + step <= n_ && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::size_t n_;
  std::size_t top_ = 1;
  std::int64_t total_ = 0;
  std::vector<std::int64_t> tree_;
};

// Floyd's algorithm: m distinct values from [0, n), sorted.
std::vector<std::int32_t> sample_distinct(Xoshiro256& rng, std::int64_t n,
                                          std::int64_t m) {
  std::vector<std::int32_t> out;
  out.reserve(static_cast<std::size_t>(m));
  for (std::int64_t t = n - m; t < n; ++t) {
    const auto r = static_cast<std::int32_t>(rng.between(0, t));
    if (std::find(out.begin(), out.end(), r) == out.end()) {
      out.push_back(r);
    } else {
      out.push_back(static_cast<std::int32_t>(t));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

constexpr std::int64_t kZipfScale = std::int64_t{1} << 24;

}  // namespace

std::string to_string(PopularityShape shape) {
  return shape == PopularityShape::kSkewed ? "skewed" : "uniform";
}

PopularityShape parse_popularity_shape(const std::string& text) {
  if (text == "uniform") return PopularityShape::kUniform;
  if (text == "skewed") return PopularityShape::kSkewed;
  throw ConfigError("unknown popularity shape '" + text +
                    "' (expected uniform or skewed)");
}

void validate_config(const GeneratorConfig& c) {
  if (c.num_candidates < 0 || c.num_schedules < 0 || c.num_resources < 0 ||
      c.target_relations < 0) {
    throw ConfigError("counts must be nonnegative");
  }
  if (c.num_candidates > std::numeric_limits<std::int32_t>::max() ||
      c.num_schedules > std::numeric_limits<std::int32_t>::max() ||
      c.num_resources > std::numeric_limits<std::int32_t>::max()) {
    throw ConfigError("counts exceed the 32-bit id range");
  }
  if (!(c.capacity_factor > 0.0) || !std::isfinite(c.capacity_factor)) {
    throw ConfigError("capacity factor must be a positive finite number");
  }
  if (c.min_resources_per_schedule < 0 ||
      c.min_resources_per_schedule > c.max_resources_per_schedule) {
    throw ConfigError("resources per schedule range is empty or negative");
  }
  if (c.num_schedules > 0 && c.max_resources_per_schedule > c.num_resources) {
    throw ConfigError("max resources per schedule (" +
                      std::to_string(c.max_resources_per_schedule) +
                      ") exceeds the resource count (" +
                      std::to_string(c.num_resources) + ")");
  }
  if (c.num_schedules > kZipfScale) {
    throw ConfigError("too many schedules for the popularity weights");
  }
  // With no candidates or no schedules there is nothing to relate and the
  // target is moot.
  if (c.num_candidates > 0 && c.num_schedules > 0) {
    // Both factors fit in 31 bits, so the product fits in 62.
    const std::int64_t possible = c.num_candidates * c.num_schedules;
    if (c.target_relations > possible) {
      throw ConfigError("target relations " + std::to_string(c.target_relations) +
                        " exceed candidates x schedules");
    }
  }
}

Instance generate_instance(const GeneratorConfig& config) {
  validate_config(config);
  Xoshiro256 rng(config.seed);
  const std::int64_t num_c = config.num_candidates;
  const std::int64_t num_p = config.num_schedules;
  const std::int64_t num_r = config.num_resources;

  Instance inst;
  inst.usage.resize(static_cast<std::size_t>(num_p));
  for (auto& u : inst.usage) {
    const std::int64_t m = rng.between(config.min_resources_per_schedule,
                                       config.max_resources_per_schedule);
    u = sample_distinct(rng, num_r, m);
  }

  inst.compat.resize(static_cast<std::size_t>(num_c));
  if (num_c > 0 && num_p > 0 && config.target_relations > 0) {
    // Degrees.
    const std::int64_t target = config.target_relations;
    const std::int64_t lo = target / num_c / 2;
    const std::int64_t hi = std::min<std::int64_t>(num_p, (3 * target + 2 * num_c - 1) / (2 * num_c));
    std::vector<std::int64_t> degree(static_cast<std::size_t>(num_c));
    std::int64_t sum = 0;
    for (auto& d : degree) {
      d = rng.between(lo, std::max(lo, hi));
      sum += d;
    }
    while (sum != target) {
      auto& d = degree[rng.below(static_cast<std::uint64_t>(num_c))];
      if (sum < target && d < num_p) {
        ++d;
        ++sum;
      } else if (sum > target && d > 0) {
        --d;
        --sum;
      }
    }

    // Popularity weights.
    std::vector<std::int64_t> weight(static_cast<std::size_t>(num_p), 1);
    if (config.shape == PopularityShape::kSkewed) {
      std::vector<std::int64_t> rank(static_cast<std::size_t>(num_p));
      std::iota(rank.begin(), rank.end(), 0);
      for (std::int64_t t = num_p - 1; t > 0; --t) {
        std::swap(rank[t], rank[rng.between(0, t)]);
      }
      for (std::int64_t j = 0; j < num_p; ++j) weight[j] = kZipfScale / (rank[j] + 1);
    }
    WeightTree tree(weight);

    for (std::int64_t i = 0; i < num_c; ++i) {
      auto& c = inst.compat[i];
      c.reserve(static_cast<std::size_t>(degree[i]));
      for (std::int64_t t = 0; t < degree[i]; ++t) {
        const std::size_t j =
            tree.find(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(tree.total()))));
        c.push_back(static_cast<ScheduleId>(j));
        tree.add(j, -weight[j]);
      }
      for (ScheduleId j : c) tree.add(static_cast<std::size_t>(j), weight[j]);
      std::sort(c.begin(), c.end());
    }
  }

  inst.capacity.assign(static_cast<std::size_t>(num_r), 0);
  const std::vector<double> demand = expected_demand(inst);
  for (std::int64_t k = 0; k < num_r; ++k) {
    inst.capacity[k] = std::llround(config.capacity_factor * demand[k]);
  }
  return inst;
}

std::vector<double> expected_demand(const Instance& instance) {
  std::vector<double> demand(instance.num_resources(), 0.0);
  for (const auto& c : instance.compat) {
    if (c.empty()) continue;
    const double share = 1.0 / static_cast<double>(c.size());
    for (ScheduleId j : c) {
      for (ResourceId k : instance.usage[j]) demand[k] += share;
    }
  }
  return demand;
}

InstanceStats instance_stats(const Instance& instance) {
  InstanceStats s;
  s.num_candidates = instance.num_candidates();
  s.num_schedules = instance.num_schedules();
  s.num_resources = instance.num_resources();
  std::vector<std::size_t> popularity(s.num_schedules, 0);
  for (const auto& c : instance.compat) {
    s.num_relations += c.size();
    ++s.candidate_degree[c.size()];
    if (c.empty()) ++s.unassignable_candidates;
    for (ScheduleId j : c) ++popularity[j];
  }
  for (std::size_t p : popularity) ++s.schedule_popularity[p];
  for (const auto& u : instance.usage) ++s.resources_per_schedule[u.size()];
  s.demand = expected_demand(instance);
  s.demand_supply_ratio.resize(s.num_resources);
  for (std::size_t k = 0; k < s.num_resources; ++k) {
    const Capacity b = instance.capacity[k];
    s.total_capacity += b;
    s.total_demand += s.demand[k];
    if (b > 0) {
      s.demand_supply_ratio[k] = s.demand[k] / static_cast<double>(b);
    } else {
      s.demand_supply_ratio[k] =
          s.demand[k] > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
  }
  return s;
}

}  // namespace oetp
