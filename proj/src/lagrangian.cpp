#include "oetp/lagrangian.hpp"

#include <algorithm>
#include <cmath>

#include "oetp/heuristics.hpp"
#include "oetp/kernels.hpp"

namespace oetp {

namespace {
constexpr double kIntegralTolerance = 1e-6;
}

std::int64_t integral_bound(double upper_bound) {
  return static_cast<std::int64_t>(std::floor(upper_bound + kIntegralTolerance));
}

LagrangianDual::LagrangianDual(const Instance& instance)
    : instance_(instance),
      cost_(instance.num_schedules(), 0.0),
      choice_(instance.num_candidates(), kUnassigned),
      scratch_(instance.num_candidates(), 0.0),
      load_(instance.num_resources(), 0) {}

double LagrangianDual::evaluate(const DualView& view, std::span<const double> lambda) {
  kernels::schedule_costs(instance_, lambda, cost_);
  const kernels::Pricing pricing = kernels::price_candidates(
      instance_, view.candidates, cost_, view.alive, choice_, scratch_);
  std::fill(load_.begin(), load_.end(), 0);
  for (CandidateId i : view.candidates) {
    const ScheduleId j = choice_[i];
    if (j == kUnassigned) continue;
    for (ResourceId k : instance_.usage[j]) ++load_[k];
  }
  double value = pricing.profit;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    value += lambda[k] * static_cast<double>(view.capacity[k]);
  }
  return value;
}

DualResult LagrangianDual::solve(const DualView& view, std::vector<double> lambda0,
                                 const SubgradientConfig& config, double target) {
  const std::size_t m = instance_.num_resources();
  std::vector<double> lambda = std::move(lambda0);
  lambda.resize(m, 0.0);

  DualResult result;
  result.best_lambda = lambda;
  result.best_value = evaluate(view, lambda);
  result.iterations = 0;

  double mu = config.initial_step;
  int stall = 0;
  std::vector<double> direction(m, 0.0);
  double value = result.best_value;
  for (int it = 0; it < config.iterations; ++it) {
    if (static_cast<double>(integral_bound(result.best_value)) <= target) break;

    double norm2 = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      double g = static_cast<double>(view.capacity[k] - load_[k]);
      // Projection: a zero multiplier cannot move further down.
      if (lambda[k] <= 0.0 && g > 0.0) g = 0.0;
      direction[k] = g;
      norm2 += g * g;
    }
    // Relaxed choice is feasible and complementary: the bound is attained.
    if (norm2 == 0.0) break;

    const double step = mu * (value - target) / norm2;
    for (std::size_t k = 0; k < m; ++k) {
      lambda[k] = std::max(0.0, lambda[k] - step * direction[k]);
    }
    value = evaluate(view, lambda);
    result.iterations = it + 1;
    if (value < result.best_value - 1e-12) {
      result.best_value = value;
      result.best_lambda = lambda;
      stall = 0;
    } else if (++stall >= config.patience) {
      mu *= 0.5;
      stall = 0;
      if (mu < config.min_step) break;
    }
  }
  return result;
}

BoundCertificate lagrangian_bound(const Instance& instance,
                                  const SubgradientConfig& config,
                                  std::optional<std::int64_t> target) {
  std::vector<CandidateId> candidates;
  for (std::size_t i = 0; i < instance.num_candidates(); ++i) {
    candidates.push_back(static_cast<CandidateId>(i));
  }
  std::vector<unsigned char> alive(instance.num_schedules(), 0);
  for (std::size_t j = 0; j < instance.num_schedules(); ++j) {
    alive[j] = fits(instance.usage[j], instance.capacity) ? 1 : 0;
  }
  const std::int64_t goal = target ? *target : greedy_assign(instance).value();

  LagrangianDual dual(instance);
  const DualView view{candidates, alive, instance.capacity};
  DualResult r = dual.solve(view, {}, config, static_cast<double>(goal));

  BoundCertificate cert;
  cert.upper_bound = r.best_value;
  cert.integer_bound = integral_bound(r.best_value);
  cert.method = "lagrangian-subgradient";
  cert.multipliers = std::move(r.best_lambda);
  cert.iterations = r.iterations;
  return cert;
}

}  // namespace oetp
