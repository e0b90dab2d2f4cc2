#pragma once

// Lagrangian relaxation of the capacity rows. For multipliers lambda >= 0
//
//   L(lambda) = sum_k lambda_k b_k
//             + sum_i max(0, max_{j in P_i} (1 - sum_{k in usage[j]} lambda_k))
//
// is an upper bound on the optimum (and on the LP relaxation). The relaxed
// problem separates per candidate, so evaluating L is one pass over the
// compatibility lists. Multipliers are improved by projected subgradient
// steps with a Polyak-type step length
//
//   t = mu * (L(lambda) - target) / ||g||^2,   g_k = b_k - load_k,
//
// where target is a known achievable value and mu is halved after
// `patience` iterations without improving the best bound.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oetp/model.hpp"

namespace oetp {

struct SubgradientConfig {
  int iterations = 200;
  double initial_step = 2.0;  // mu at iteration 0
  int patience = 20;
  double min_step = 1e-4;     // stop once mu falls below this
};

// Upper bound with provenance.
struct BoundCertificate {
  double upper_bound = 0.0;
  std::int64_t integer_bound = 0;  // floor(upper_bound), with a small tolerance
  std::string method;
  std::vector<double> multipliers;
  int iterations = 0;
};

// floor() that rounds values within 1e-6 below an integer up to it, so
// accumulated rounding error cannot make an admissible bound inadmissible.
std::int64_t integral_bound(double upper_bound);

// Residual sub-problem seen by the dual: the listed free candidates may
// take alive schedules against the given capacities.
struct DualView {
  std::span<const CandidateId> candidates;
  std::span<const unsigned char> alive;
  std::span<const Capacity> capacity;
};

struct DualResult {
  double best_value = 0.0;
  std::vector<double> best_lambda;
  int iterations = 0;
};

// Reusable subgradient solver; owns scratch buffers sized for one instance.
// Not thread-safe; use one per thread.
class LagrangianDual {
 public:
  explicit LagrangianDual(const Instance& instance);

  // L(lambda) on the view. Leaves the relaxed choice and resource load of
  // that evaluation in choice() and load().
  double evaluate(const DualView& view, std::span<const double> lambda);

  // Runs at most config.iterations subgradient steps from lambda0 and
  // returns the smallest L seen. Stops early once floor(best) <= target,
  // since no further progress can matter to a caller that already holds a
  // solution of value target.
  DualResult solve(const DualView& view, std::vector<double> lambda0,
                   const SubgradientConfig& config, double target);

  std::span<const ScheduleId> choice() const { return choice_; }
  std::span<const Capacity> load() const { return load_; }
  std::span<const double> costs() const { return cost_; }

 private:
  const Instance& instance_;
  std::vector<double> cost_;
  std::vector<ScheduleId> choice_;
  std::vector<double> scratch_;
  std::vector<Capacity> load_;
};

// Bound for the whole instance starting from lambda = 0. The Polyak target
// defaults to the value of the default greedy solution when not given.
BoundCertificate lagrangian_bound(const Instance& instance,
                                  const SubgradientConfig& config = {},
                                  std::optional<std::int64_t> target = std::nullopt);

}  // namespace oetp
