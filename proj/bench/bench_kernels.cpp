#include <benchmark/benchmark.h>

#include "oetp/generator.hpp"
#include "oetp/heuristics.hpp"
#include "oetp/kernels.hpp"

namespace {

const oetp::Instance& instance() {
  static const oetp::Instance inst = oetp::generate_instance(oetp::GeneratorConfig{});
  return inst;
}

const oetp::Solution& greedy() {
  static const oetp::Solution s = oetp::greedy_assign(instance());
  return s;
}

std::vector<double> lambda() {
  std::vector<double> l(instance().num_resources());
  for (std::size_t k = 0; k < l.size(); ++k) l[k] = 0.01 * static_cast<double>(k % 17);
  return l;
}

struct PricingInputs {
  std::vector<oetp::CandidateId> candidates;
  std::vector<unsigned char> alive;
  std::vector<double> cost;
  std::vector<oetp::ScheduleId> choice;
  std::vector<double> scratch;
  PricingInputs() {
    const auto& inst = instance();
    candidates.resize(inst.num_candidates());
    for (std::size_t i = 0; i < candidates.size(); ++i)
      candidates[i] = static_cast<oetp::CandidateId>(i);
    alive.assign(inst.num_schedules(), 1);
    cost.resize(inst.num_schedules());
    oetp::kernels::reference::schedule_costs(inst, lambda(), cost);
    choice.resize(inst.num_candidates());
    scratch.resize(inst.num_candidates());
  }
};

void BM_ResourceUsage(benchmark::State& state) {
  greedy();
  for (auto _ : state) {
    benchmark::DoNotOptimize(oetp::kernels::resource_usage(instance(), greedy().assignment));
  }
}

void BM_ResourceUsageReference(benchmark::State& state) {
  greedy();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oetp::kernels::reference::resource_usage(instance(), greedy().assignment));
  }
}

void BM_ScheduleCosts(benchmark::State& state) {
  const auto l = lambda();
  std::vector<double> cost(instance().num_schedules());
  for (auto _ : state) {
    oetp::kernels::schedule_costs(instance(), l, cost);
    benchmark::ClobberMemory();
  }
}

void BM_ScheduleCostsReference(benchmark::State& state) {
  const auto l = lambda();
  std::vector<double> cost(instance().num_schedules());
  for (auto _ : state) {
    oetp::kernels::reference::schedule_costs(instance(), l, cost);
    benchmark::ClobberMemory();
  }
}

void BM_PriceCandidates(benchmark::State& state) {
  PricingInputs in;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oetp::kernels::price_candidates(instance(), in.candidates, in.cost,
                                                             in.alive, in.choice, in.scratch));
  }
  state.counters["threads"] = oetp::kernels::max_threads();
}

void BM_PriceCandidatesReference(benchmark::State& state) {
  PricingInputs in;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oetp::kernels::reference::price_candidates(
        instance(), in.candidates, in.cost, in.alive, in.choice));
  }
}

}  // namespace

BENCHMARK(BM_ResourceUsage);
BENCHMARK(BM_ResourceUsageReference);
BENCHMARK(BM_ScheduleCosts);
BENCHMARK(BM_ScheduleCostsReference);
BENCHMARK(BM_PriceCandidates);
BENCHMARK(BM_PriceCandidatesReference);

BENCHMARK_MAIN();
