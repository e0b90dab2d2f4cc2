#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oetp/errors.hpp"
#include "oetp/exact.hpp"
#include "oetp/generator.hpp"
#include "oetp/heuristics.hpp"
#include "oetp/lagrangian.hpp"

using namespace oetp;
using oetp::testing::exhaustive_optimum;
using oetp::testing::feasible;
using oetp::testing::t1;

namespace {

struct FullView {
  std::vector<CandidateId> candidates;
  std::vector<unsigned char> alive;
  explicit FullView(const Instance& inst)
      : candidates(inst.num_candidates()), alive(inst.num_schedules(), 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i)
      candidates[i] = static_cast<CandidateId>(i);
  }
  DualView view(const Instance& inst) const { return {candidates, alive, inst.capacity}; }
};

// Candidates with schedules that consume nothing: every candidate with a
// non-empty list is assignable.
Instance resource_free(std::mt19937_64& rng) {
  Instance inst = oetp::testing::random_instance(rng);
  for (auto& u : inst.usage) u.clear();
  return inst;
}

}  // namespace

TEST_CASE("brute force on small instances") {
  CHECK(brute_force_solve(t1()).value() == 2);
  CHECK(brute_force_solve(t1()).assignment == std::vector<ScheduleId>{0, 0, kUnassigned});
  CHECK(brute_force_solve(Instance{}).assignment.empty());

  Instance one;
  one.capacity = {1};
  one.usage = {{0}, {0}};
  one.compat = {{0, 1}};
  CHECK(brute_force_solve(one).assignment == std::vector<ScheduleId>{0});
  one.capacity = {0};
  CHECK(brute_force_solve(one).assignment == std::vector<ScheduleId>{kUnassigned});
}

TEST_CASE("brute force refuses huge enumerations") {
  Instance inst;
  inst.capacity = {100};
  inst.usage.assign(9, {0});
  inst.compat.assign(10, {0, 1, 2, 3, 4, 5, 6, 7, 8});  // 10^10 leaves
  CHECK_THROWS_AS(brute_force_solve(inst), SizeError);
  CHECK_THROWS_AS(brute_force_solve(t1(), 5), SizeError);  // 3 * 2 * 2 = 12 leaves
  CHECK(brute_force_solve(t1(), 12).value() == 2);
}

TEST_CASE("property: brute force equals plain enumeration") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    const Instance inst = oetp::testing::random_instance(rng);
    const Solution s = brute_force_solve(inst);
    REQUIRE(feasible(inst, s));
    CHECK(s.value() == exhaustive_optimum(inst));
  }
}

TEST_CASE("Lagrangian function on T1") {
  const Instance inst = t1();
  LagrangianDual dual(inst);
  const FullView fv(inst);
  const std::vector<double> zero(2, 0.0);
  CHECK(dual.evaluate(fv.view(inst), zero) == doctest::Approx(3.0));
  // lambda = (1, 0): every schedule costs at least 1, so only the b term is left.
  const std::vector<double> l10 = {1.0, 0.0};
  CHECK(dual.evaluate(fv.view(inst), l10) == doctest::Approx(2.0));
  CHECK(dual.load()[0] == 0);

  const BoundCertificate b = lagrangian_bound(inst);
  CHECK(b.integer_bound == 2);
  CHECK(b.upper_bound >= 2.0 - 1e-9);
  CHECK(b.method == "lagrangian-subgradient");
  CHECK(b.multipliers.size() == 2);
}

TEST_CASE("integral_bound tolerance") {
  CHECK(integral_bound(2.0) == 2);
  CHECK(integral_bound(2.9999999) == 3);
  CHECK(integral_bound(2.99) == 2);
  CHECK(integral_bound(0.0) == 0);
}

TEST_CASE("Lagrangian bound is exact without resources") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 100; ++t) {
    const Instance inst = resource_free(rng);
    std::int64_t assignable = 0;
    for (const auto& c : inst.compat) assignable += c.empty() ? 0 : 1;
    CHECK(lagrangian_bound(inst).integer_bound == assignable);
  }
}

TEST_CASE("property: the Lagrangian bound is admissible") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 300; ++t) {
    const Instance inst = oetp::testing::random_instance(rng);
    const std::int64_t opt = exhaustive_optimum(inst);
    const BoundCertificate b = lagrangian_bound(inst);
    CHECK(b.integer_bound >= opt);
    // Also at arbitrary multipliers.
    LagrangianDual dual(inst);
    const FullView fv(inst);
    std::uniform_real_distribution<double> u(0.0, 1.5);
    std::vector<double> lambda(inst.num_resources());
    for (auto& x : lambda) x = u(rng);
    CHECK(dual.evaluate(fv.view(inst), lambda) >= static_cast<double>(opt) - 1e-9);
  }
}

TEST_CASE("branch and bound on T1") {
  const SolveReport cold = branch_and_bound(t1());
  CHECK(cold.proven_optimal);
  CHECK(cold.termination == Termination::kOptimal);
  CHECK(cold.incumbent.value() == 2);
  CHECK(cold.bound.integer_bound == 2);
  CHECK(feasible(t1(), cold.incumbent));

  const SolveReport warm = branch_and_bound(t1(), Solution({kUnassigned, 0, kUnassigned}));
  CHECK(warm.warm_start_value == 1);
  CHECK(warm.incumbent.value() == 2);
  CHECK(warm.proven_optimal);
}

TEST_CASE("branch and bound limits and contracts") {
  SolverConfig cfg;
  cfg.limits.node_limit = 0;
  const SolveReport r = branch_and_bound(t1(), Solution({kUnassigned, 0, kUnassigned}), cfg);
  CHECK(r.termination == Termination::kNodeLimit);
  CHECK_FALSE(r.proven_optimal);
  CHECK(r.incumbent.value() == 1);
  CHECK(r.bound.integer_bound >= 2);
  CHECK(r.nodes_explored == 0);

  CHECK_THROWS_AS(branch_and_bound(t1(), Solution({1, kUnassigned, 1})), ContractError);
  CHECK_THROWS_AS(branch_and_bound(t1(), Solution({0})), ContractError);

  const SolveReport e = branch_and_bound(Instance{});
  CHECK(e.proven_optimal);
  CHECK(e.incumbent.assignment.empty());
}

TEST_CASE("property: branch and bound matches brute force") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 250; ++t) {
    const Instance inst = oetp::testing::random_instance(rng);
    const std::int64_t opt = brute_force_solve(inst).value();
    SolverConfig cfg;
    cfg.node_heuristic = (t % 2 == 0);
    const SolveReport r = branch_and_bound(inst, std::nullopt, cfg);
    REQUIRE(r.proven_optimal);
    REQUIRE(feasible(inst, r.incumbent));
    CHECK(r.incumbent.value() == opt);
    CHECK(r.root_bound.integer_bound >= opt);
  }
}

TEST_CASE("property: warm start never hurts and the incumbent log is monotone") {
  std::mt19937_64 rng(35);
  oetp::testing::RandomShape shape;
  shape.max_candidates = 14;
  shape.max_schedules = 10;
  for (int t = 0; t < 100; ++t) {
    const Instance inst = oetp::testing::random_instance(rng, shape);
    const Solution g = greedy_assign(inst);
    SolverConfig cfg;
    cfg.limits.node_limit = 5;
    cfg.log_every = 1;
    const SolveReport r = branch_and_bound(inst, g, cfg);
    CHECK(r.incumbent.value() >= g.value());
    CHECK(r.bound.integer_bound >= r.incumbent.value());
    CHECK(feasible(inst, r.incumbent));
    REQUIRE_FALSE(r.events.empty());
    CHECK(r.events.front().what == "start");
    CHECK(r.events.back().what == "end");
    for (std::size_t e = 1; e < r.events.size(); ++e) {
      CHECK(r.events[e].incumbent >= r.events[e - 1].incumbent);
      CHECK(r.events[e].global_bound <= r.events[e - 1].global_bound);
      CHECK(r.events[e].nodes >= r.events[e - 1].nodes);
    }
  }
}

TEST_CASE("branch and bound is deterministic") {
  GeneratorConfig cfg;
  cfg.num_candidates = 120;
  cfg.num_schedules = 60;
  cfg.num_resources = 8;
  cfg.target_relations = 1200;
  cfg.capacity_factor = 0.45;
  const Instance inst = generate_instance(cfg);
  SolverConfig sc;
  sc.limits.node_limit = 300;
  const SolveReport a = branch_and_bound(inst, std::nullopt, sc);
  const SolveReport b = branch_and_bound(inst, std::nullopt, sc);
  CHECK(a.incumbent == b.incumbent);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(a.bound.integer_bound == b.bound.integer_bound);
  CHECK(a.bound.multipliers == b.bound.multipliers);
}

TEST_CASE("property: optimum is invariant under relabeling") {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 100; ++t) {
    const Instance inst = oetp::testing::random_instance(rng);
    const Instance moved = oetp::testing::relabel(inst, rng);
    CHECK(branch_and_bound(inst).incumbent.value() ==
          branch_and_bound(moved).incumbent.value());
  }
}

TEST_CASE("event log CSV") {
  SolverConfig cfg;
  cfg.log_every = 1;
  const SolveReport r = branch_and_bound(t1(), std::nullopt, cfg);
  std::ostringstream out;
  write_event_log_csv(out, r.events);
  const std::string csv = out.str();
  CHECK(csv.rfind("event,nodes,elapsed_s,open_nodes,global_bound,incumbent\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) ==
        r.events.size() + 1);
  CHECK(to_string(Termination::kTimeLimit) == "time-limit");
}
