// oetp: command-line front end for the oral-examination timetabling toolkit.
//
// Exit codes: 0 ok, 1 usage or I/O error, 2 parse error, 3 validation error
// (including an infeasible solution under `check`), 4 solver contract
// violation, 5 limits hit without a non-empty feasible solution.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "oetp/errors.hpp"
#include "oetp/exact.hpp"
#include "oetp/generator.hpp"
#include "oetp/heuristics.hpp"
#include "oetp/io.hpp"
#include "oetp/pipeline.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kSolverContract = 4,
  kLimitsWithoutSolution = 5,
};

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
  } else {
    oetp::write_file(path, text);
  }
}

oetp::Instance load_instance(const std::string& path) {
  return oetp::parse_instance(oetp::read_file(path));
}

struct PolicyFlags {
  std::string order = "most-constrained-first";
  std::string choice = "max-min-residual";
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd) {
    cmd->add_option("--greedy-order", order,
                    "most-constrained-first | input-order")
        ->capture_default_str();
    cmd->add_option("--schedule-choice", choice, "max-min-residual | first-feasible")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "seed for random tie-breaking in the greedy");
  }

  oetp::GreedyPolicy policy() const {
    oetp::GreedyPolicy p;
    p.order = oetp::parse_candidate_order(order);
    p.choice = oetp::parse_schedule_choice(choice);
    p.tie_seed = seed;
    return p;
  }
};

std::string stats_json(const oetp::InstanceStats& s) {
  using nlohmann::ordered_json;
  auto histogram = [](const std::map<std::size_t, std::size_t>& h) {
    ordered_json out = ordered_json::array();
    for (auto [value, count] : h) out.push_back({value, count});
    return out;
  };
  ordered_json doc;
  doc["num_candidates"] = s.num_candidates;
  doc["num_schedules"] = s.num_schedules;
  doc["num_resources"] = s.num_resources;
  doc["num_relations"] = s.num_relations;
  doc["unassignable_candidates"] = s.unassignable_candidates;
  doc["total_capacity"] = s.total_capacity;
  doc["total_demand"] = s.total_demand;
  doc["candidate_degree"] = histogram(s.candidate_degree);
  doc["schedule_popularity"] = histogram(s.schedule_popularity);
  doc["resources_per_schedule"] = histogram(s.resources_per_schedule);
  ordered_json ratio = ordered_json::array();
  for (double r : s.demand_supply_ratio) {
    if (std::isinf(r)) {
      ratio.push_back("inf");
    } else {
      ratio.push_back(r);
    }
  }
  doc["demand_supply_ratio"] = ratio;
  return doc.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oral-examination timetabling as a multidimensional knapsack"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a seeded synthetic instance");
  oetp::GeneratorConfig gcfg;
  std::string gen_output = "-";
  std::string gen_config;
  std::string gen_shape = "uniform";
  gen->add_option("--output,-o", gen_output, "instance document path ('-' for stdout)");
  gen->add_option("--config", gen_config, "JSON file with generator settings");
  // Config-file key -> flag; explicit flags win over the file.
  std::map<std::string, CLI::Option*> gen_flags;
  gen_flags["seed"] = gen->add_option("--seed", gcfg.seed)->capture_default_str();
  gen_flags["num_candidates"] =
      gen->add_option("--candidates", gcfg.num_candidates)->capture_default_str();
  gen_flags["num_schedules"] =
      gen->add_option("--schedules", gcfg.num_schedules)->capture_default_str();
  gen_flags["num_resources"] =
      gen->add_option("--resources", gcfg.num_resources)->capture_default_str();
  gen_flags["target_relations"] =
      gen->add_option("--relations", gcfg.target_relations)->capture_default_str();
  gen_flags["min_resources_per_schedule"] =
      gen->add_option("--min-usage", gcfg.min_resources_per_schedule)->capture_default_str();
  gen_flags["max_resources_per_schedule"] =
      gen->add_option("--max-usage", gcfg.max_resources_per_schedule)->capture_default_str();
  gen_flags["capacity_factor"] =
      gen->add_option("--capacity-factor", gcfg.capacity_factor)->capture_default_str();
  gen_flags["shape"] =
      gen->add_option("--shape", gen_shape, "uniform | skewed")->capture_default_str();

  // validate
  auto* val = app.add_subcommand("validate", "check an instance document");
  std::string val_input;
  val->add_option("--input,-i", val_input)->required();

  // stats
  auto* sta = app.add_subcommand("stats", "summary statistics of an instance");
  std::string sta_input;
  std::string sta_output;
  sta->add_option("--input,-i", sta_input)->required();
  sta->add_option("--output,-o", sta_output, "also write the statistics as JSON");

  // greedy
  auto* gre = app.add_subcommand("greedy", "constructive heuristic only");
  std::string gre_input;
  std::string gre_output = "-";
  bool gre_local = false;
  std::int64_t gre_budget = 2'000'000;
  PolicyFlags gre_policy;
  gre->add_option("--input,-i", gre_input)->required();
  gre->add_option("--output,-o", gre_output)->capture_default_str();
  gre->add_flag("--local-search", gre_local, "improve the greedy result by 1-chain ejections");
  gre->add_option("--local-search-budget", gre_budget)->capture_default_str();
  gre_policy.attach(gre);

  // solve
  auto* sol = app.add_subcommand("solve", "greedy, pool restriction and branch-and-bound");
  std::string sol_input;
  std::string sol_output = "-";
  std::string sol_report;
  std::string sol_mps;
  std::string sol_log;
  double time_limit = 1200.0;
  std::optional<std::int64_t> node_limit;
  std::size_t pool_extra = 100;
  bool full_pool = false;
  bool no_local = false;
  bool negate = false;
  std::int64_t sol_budget = 2'000'000;
  PolicyFlags sol_policy;
  sol->add_option("--input,-i", sol_input)->required();
  sol->add_option("--output,-o", sol_output, "solution document path")->capture_default_str();
  sol->add_option("--report", sol_report,
                  "JSON report path (default: <output>.report.json)");
  sol->add_option("--time-limit-s", time_limit)->capture_default_str()->check(CLI::NonNegativeNumber);
  sol->add_option("--node-limit", node_limit)->check(CLI::NonNegativeNumber);
  sol->add_option("--pool-extra", pool_extra, "extra unsaturated schedules kept")
      ->capture_default_str();
  sol->add_flag("--full-pool", full_pool, "solve over every schedule");
  sol->add_flag("--no-local-search", no_local);
  sol->add_option("--local-search-budget", sol_budget)->capture_default_str();
  sol->add_option("--emit-mps", sol_mps,
                  "write <prefix>.mps and <prefix>.mst for the solved model");
  sol->add_flag("--negate-objective", negate, "MPS objective as minimise -count");
  sol->add_option("--log-csv", sol_log, "search event log");
  sol_policy.attach(sol);

  // export
  auto* exp = app.add_subcommand("export", "MPS model and MST-style warm start");
  std::string exp_input;
  std::string exp_output;
  std::string exp_warm;
  std::string exp_solution;
  std::optional<std::size_t> exp_pool;
  bool exp_negate = false;
  PolicyFlags exp_policy;
  exp->add_option("--input,-i", exp_input)->required();
  exp->add_option("--output,-o", exp_output, "MPS path")->required();
  exp->add_option("--warm-start", exp_warm, "warm start path");
  exp->add_option("--solution", exp_solution,
                  "warm start solution document (default: greedy)");
  exp->add_option("--pool-extra", exp_pool,
                  "export the pool restricted around the warm start");
  exp->add_flag("--negate-objective", exp_negate);
  exp_policy.attach(exp);

  // check
  auto* chk = app.add_subcommand("check", "evaluate a solution document");
  std::string chk_input;
  std::string chk_solution;
  chk->add_option("--input,-i", chk_input)->required();
  chk->add_option("--solution,-s", chk_solution)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) {
      if (!gen_config.empty()) {
        const auto doc = nlohmann::json::parse(oetp::read_file(gen_config));
        if (!doc.is_object()) throw oetp::ParseError("generator config must be a JSON object");
        auto get = [&](const char* key, auto& field) {
          if (doc.contains(key) && gen_flags.at(key)->count() == 0) {
            field = doc.at(key).get<std::decay_t<decltype(field)>>();
          }
        };
        get("seed", gcfg.seed);
        get("num_candidates", gcfg.num_candidates);
        get("num_schedules", gcfg.num_schedules);
        get("num_resources", gcfg.num_resources);
        get("target_relations", gcfg.target_relations);
        get("min_resources_per_schedule", gcfg.min_resources_per_schedule);
        get("max_resources_per_schedule", gcfg.max_resources_per_schedule);
        get("capacity_factor", gcfg.capacity_factor);
        get("shape", gen_shape);
      }
      gcfg.shape = oetp::parse_popularity_shape(gen_shape);
      const oetp::Instance inst = oetp::generate_instance(gcfg);
      emit(gen_output, oetp::serialize_instance(inst));
      std::cerr << "generated " << inst.num_candidates() << " candidates, "
                << inst.num_schedules() << " schedules, " << inst.num_resources()
                << " resources, " << inst.num_relations() << " relations\n";
      return kOk;
    }

    if (val->parsed()) {
      const oetp::Instance inst = load_instance(val_input);
      std::cout << "valid: " << inst.num_candidates() << " candidates, "
                << inst.num_schedules() << " schedules, " << inst.num_resources()
                << " resources, " << inst.num_relations() << " relations\n";
      return kOk;
    }

    if (sta->parsed()) {
      const oetp::Instance inst = load_instance(sta_input);
      const oetp::InstanceStats s = oetp::instance_stats(inst);
      std::cout << "candidates            " << s.num_candidates << "\n"
                << "schedules             " << s.num_schedules << "\n"
                << "resources             " << s.num_resources << "\n"
                << "relations             " << s.num_relations << "\n"
                << "unassignable          " << s.unassignable_candidates << "\n"
                << "total capacity        " << s.total_capacity << "\n"
                << "total expected demand " << s.total_demand << "\n";
      if (!sta_output.empty()) emit(sta_output, stats_json(s));
      return kOk;
    }

    if (gre->parsed()) {
      const oetp::Instance inst = load_instance(gre_input);
      oetp::Solution s = oetp::greedy_assign(inst, gre_policy.policy());
      const std::int64_t greedy_value = s.value();
      if (gre_local) s = oetp::local_search_improve(inst, s, gre_budget);
      emit(gre_output, oetp::serialize_solution(s));
      std::cerr << "greedy assigned " << greedy_value << " / " << inst.num_candidates();
      if (gre_local) std::cerr << ", after local search " << s.value();
      std::cerr << "\n";
      return kOk;
    }

    if (sol->parsed()) {
      const oetp::Instance inst = load_instance(sol_input);
      oetp::PipelineConfig cfg;
      cfg.greedy = sol_policy.policy();
      cfg.local_search = !no_local;
      cfg.local_search_budget = sol_budget;
      if (!full_pool) cfg.pool_extra = pool_extra;
      else cfg.pool_extra.reset();
      cfg.solver.limits.time_limit_s = time_limit;
      cfg.solver.limits.node_limit = node_limit;
      const oetp::PipelineResult res = oetp::run_pipeline(inst, cfg);
      const oetp::SolveReport& r = res.report;

      emit(sol_output, oetp::serialize_solution(r.incumbent));
      std::string report_path = sol_report;
      if (report_path.empty() && sol_output != "-") report_path = sol_output + ".report.json";
      if (!report_path.empty()) emit(report_path, oetp::serialize_report(res));
      if (!sol_log.empty()) {
        std::ostringstream csv;
        oetp::write_event_log_csv(csv, r.events);
        emit(sol_log, csv.str());
      }
      if (!sol_mps.empty()) {
        oetp::write_file(sol_mps + ".mps",
                         oetp::export_mps(res.solved_instance, {negate, "OETP"}));
        oetp::write_file(sol_mps + ".mst",
                         oetp::export_warm_start(res.solved_instance, res.warm_start));
      }
      std::cerr << "greedy " << res.greedy.value() << ", warm start "
                << res.warm_start.value();
      if (res.restricted) {
        std::cerr << ", pool " << res.pool.kept.size() << " schedules ("
                  << res.pool.used_count << " used + " << res.pool.extra_count
                  << " unsaturated)";
      }
      std::cerr << "\nbest " << r.incumbent.value() << " / " << inst.num_candidates()
                << ", bound " << r.bound.integer_bound << ", "
                << (r.proven_optimal ? "optimal" : oetp::to_string(r.termination))
                << ", " << r.nodes_explored << " nodes, " << r.wall_time_s << " s\n";
      if (!r.proven_optimal && r.incumbent.value() == 0 && r.bound.integer_bound > 0) {
        return kLimitsWithoutSolution;
      }
      return kOk;
    }

    if (exp->parsed()) {
      const oetp::Instance inst = load_instance(exp_input);
      oetp::Solution warm = exp_solution.empty()
                                ? oetp::greedy_assign(inst, exp_policy.policy())
                                : oetp::parse_solution(oetp::read_file(exp_solution), inst);
      const oetp::Evaluation ev = oetp::evaluate_solution(inst, warm);
      if (!ev.feasible) {
        throw oetp::ValidationError("warm start solution is infeasible: " +
                                    ev.violations.front().where + ": " +
                                    ev.violations.front().message);
      }
      oetp::Instance model = inst;
      if (exp_pool) model = oetp::restrict_pool(inst, warm, *exp_pool).instance;
      {
        std::ofstream out(exp_output, std::ios::binary | std::ios::trunc);
        if (!out) throw oetp::Error("cannot open '" + exp_output + "' for writing");
        oetp::write_mps(out, model, {exp_negate, "OETP"});
      }
      if (!exp_warm.empty()) emit(exp_warm, oetp::export_warm_start(model, warm));
      std::cerr << "exported " << model.num_relations() << " columns, "
                << model.num_resources() + model.num_candidates() << " rows\n";
      return kOk;
    }

    if (chk->parsed()) {
      const oetp::Instance inst = load_instance(chk_input);
      const oetp::Solution s = oetp::parse_solution(oetp::read_file(chk_solution), inst);
      const oetp::Evaluation ev = oetp::evaluate_solution(inst, s);
      std::cout << "value " << ev.value << " / " << inst.num_candidates() << "\n";
      std::cout << (ev.feasible ? "feasible" : "infeasible") << "\n";
      for (const auto& v : ev.violations) {
        std::cout << "  " << oetp::to_string(v.kind) << " " << v.where << ": " << v.message
                  << "\n";
      }
      return ev.feasible ? kOk : kValidation;
    }
  } catch (const oetp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const oetp::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const oetp::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kValidation;
  } catch (const oetp::ContractError& e) {
    std::cerr << "solver contract violation: " << e.what() << "\n";
    return kSolverContract;
  } catch (const oetp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  return kOk;
}
