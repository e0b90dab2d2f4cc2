#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oetp/errors.hpp"
#include "oetp/exact.hpp"
#include "oetp/generator.hpp"
#include "oetp/heuristics.hpp"

using namespace oetp;
using oetp::testing::feasible;
using oetp::testing::t1;

namespace {

// Greedy stops one short here; ejecting candidate 0 from s0 to s1 lets
// candidate 1 take s0.
Instance chain_instance() {
  Instance inst;
  inst.capacity = {2, 2};
  inst.usage = {{1}, {0}, {0, 1}};
  inst.compat = {{0, 1}, {0, 2}, {2}, {0, 2}};
  return inst;
}

bool maximal(const Instance& inst, const Solution& s) {
  const ResourceUsage residual = residual_capacities(inst, s);
  for (std::size_t i = 0; i < inst.num_candidates(); ++i) {
    if (s.assignment[i] != kUnassigned) continue;
    for (ScheduleId j : inst.compat[i]) {
      if (fits(inst.usage[j], residual)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("greedy on T1") {
  const Solution s = greedy_assign(t1());
  CHECK(s.value() == 2);
  // Candidates 1 and 2 go first (one option each); s0 leaves r0 at 1, then
  // s1 for candidate 2 saturates r0 and r1, so candidate 0 is left out.
  CHECK(s.assignment == std::vector<ScheduleId>{kUnassigned, 0, 1});
}

TEST_CASE("greedy edge cases") {
  SUBCASE("single candidate") {
    Instance inst;
    inst.capacity = {1};
    inst.usage = {{0}, {0}};
    inst.compat = {{0, 1}};
    CHECK(greedy_assign(inst).assignment == std::vector<ScheduleId>{0});
  }
  SUBCASE("empty compatibility lists") {
    Instance inst;
    inst.capacity = {5};
    inst.usage = {{0}};
    inst.compat = {{}, {}};
    CHECK(greedy_assign(inst).value() == 0);
  }
  SUBCASE("empty instance") { CHECK(greedy_assign(Instance{}).assignment.empty()); }
  SUBCASE("zero capacity blocks everything") {
    Instance inst = t1();
    inst.capacity = {0, 0};
    CHECK(greedy_assign(inst).value() == 0);
  }
}

TEST_CASE("policy names parse back") {
  for (auto o : {CandidateOrder::kMostConstrainedFirst, CandidateOrder::kInputOrder})
    CHECK(parse_candidate_order(to_string(o)) == o);
  for (auto c : {ScheduleChoice::kMaxMinResidual, ScheduleChoice::kFirstFeasible})
    CHECK(parse_schedule_choice(to_string(c)) == c);
  CHECK_THROWS_AS(parse_candidate_order("sideways"), ConfigError);
}

TEST_CASE("greedy_extend keeps the fixed part") {
  const Instance inst = t1();
  const Solution s = greedy_extend(inst, Solution({1, kUnassigned, kUnassigned}));
  CHECK(s.assignment[0] == 1);
  CHECK(feasible(inst, s));
  CHECK(maximal(inst, s));
  CHECK_THROWS_AS(greedy_extend(inst, Solution({1, kUnassigned, 1})), ContractError);
}

TEST_CASE("property: every greedy policy is feasible and maximal") {
  std::mt19937_64 rng(5);
  std::vector<GreedyPolicy> policies = {
      {},
      {CandidateOrder::kInputOrder, ScheduleChoice::kFirstFeasible, std::nullopt},
      {CandidateOrder::kMostConstrainedFirst, ScheduleChoice::kMaxMinResidual, 7},
      {CandidateOrder::kInputOrder, ScheduleChoice::kMaxMinResidual, 11},
  };
  for (int t = 0; t < 300; ++t) {
    const Instance inst = oetp::testing::random_instance(rng);
    for (const auto& p : policies) {
      const Solution s = greedy_assign(inst, p);
      REQUIRE(feasible(inst, s));
      CHECK(maximal(inst, s));
      CHECK(greedy_assign(inst, p) == s);
    }
  }
}

TEST_CASE("local search closes the chain instance") {
  const Instance inst = chain_instance();
  const Solution g = greedy_assign(inst);
  CHECK(g.value() == 2);
  LocalSearchStats stats;
  const Solution ls = local_search_improve(inst, g, 1000, &stats);
  CHECK(feasible(inst, ls));
  CHECK(ls.value() == 3);
  CHECK(stats.improvements >= 1);
  CHECK_FALSE(stats.budget_exhausted);
  CHECK(brute_force_solve(inst).value() == 3);
}

TEST_CASE("local search respects its budget") {
  const Instance inst = chain_instance();
  LocalSearchStats stats;
  const Solution s = local_search_improve(inst, greedy_assign(inst), 0, &stats);
  CHECK(s == greedy_assign(inst));
  CHECK(stats.budget_exhausted);
}

TEST_CASE("local search leaves an optimum alone") {
  const Instance inst = t1();
  const Solution opt = brute_force_solve(inst);
  CHECK(local_search_improve(inst, opt, 1000).value() == 2);
}

TEST_CASE("property: local search never loses value and stays feasible") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 300; ++t) {
    const Instance inst = oetp::testing::random_instance(rng);
    const Solution g = greedy_assign(inst);
    const Solution ls = local_search_improve(inst, g, 10000);
    REQUIRE(feasible(inst, ls));
    CHECK(ls.value() >= g.value());
    CHECK(ls.value() <= oetp::testing::exhaustive_optimum(inst));
  }
}

TEST_CASE("pool restriction on T1") {
  const Instance inst = t1();
  SUBCASE("incumbent uses s0, one extra") {
    const RestrictedPool p = restrict_pool(inst, Solution({kUnassigned, 0, kUnassigned}), 1);
    CHECK(p.restriction.kept == std::vector<ScheduleId>{0, 1});
    CHECK(p.restriction.used_count == 1);
    CHECK(p.restriction.extra_count == 1);
    CHECK(p.restriction.provenance[0] == PoolProvenance::kUsedByIncumbent);
    CHECK(p.restriction.provenance[1] == PoolProvenance::kUnsaturatedExtra);
  }
  SUBCASE("optimal incumbent, no room left") {
    const Solution opt = brute_force_solve(inst);
    const RestrictedPool p = restrict_pool(inst, opt, 5);
    CHECK(p.restriction.extra_count == 0);
    CHECK(p.restriction.used_count == p.restriction.kept.size());
  }
  SUBCASE("empty incumbent, no extras") {
    const RestrictedPool p = restrict_pool(inst, Solution::empty(3), 0);
    CHECK(p.restriction.kept.empty());
    for (const auto& c : p.instance.compat) CHECK(c.empty());
  }
  SUBCASE("infeasible incumbent") {
    CHECK_THROWS_AS(restrict_pool(inst, Solution({1, kUnassigned, 1}), 1), ContractError);
  }
}

TEST_CASE("property: pool restriction keeps the incumbent and grows with K") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const Instance inst = oetp::testing::random_instance(rng);
    const Solution g = greedy_assign(inst);
    std::size_t previous = 0;
    for (std::size_t extra = 0; extra <= 4; ++extra) {
      const RestrictedPool p = restrict_pool(inst, g, extra);
      REQUIRE(std::is_sorted(p.restriction.kept.begin(), p.restriction.kept.end()));
      CHECK(p.restriction.kept.size() >= previous);
      CHECK(p.restriction.extra_count <= extra);
      previous = p.restriction.kept.size();
      CHECK(feasible(p.instance, g));
      CHECK(p.instance.capacity == inst.capacity);
      CHECK(p.instance.usage == inst.usage);
      for (std::size_t i = 0; i < inst.num_candidates(); ++i) {
        for (ScheduleId j : p.instance.compat[i]) {
          CHECK(std::binary_search(p.restriction.kept.begin(), p.restriction.kept.end(), j));
        }
      }
    }
  }
}
