#include "oetp/pipeline.hpp"

#include <json.hpp>

#include "oetp/io.hpp"

namespace oetp {

PipelineResult run_pipeline(const Instance& instance, const PipelineConfig& config) {
  PipelineResult out;
  out.greedy = greedy_assign(instance, config.greedy);
  out.warm_start = out.greedy;
  if (config.local_search) {
    out.warm_start = local_search_improve(instance, out.greedy,
                                          config.local_search_budget, &out.local_search);
  }
  if (config.pool_extra) {
    RestrictedPool pool = restrict_pool(instance, out.warm_start, *config.pool_extra);
    out.pool = std::move(pool.restriction);
    out.solved_instance = std::move(pool.instance);
    out.restricted = true;
  } else {
    out.solved_instance = instance;
  }
  out.report = branch_and_bound(out.solved_instance, out.warm_start, config.solver);
  return out;
}

std::string serialize_report(const PipelineResult& result) {
  using nlohmann::ordered_json;
  const SolveReport& r = result.report;
  auto certificate = [](const BoundCertificate& b) {
    ordered_json c;
    c["method"] = b.method;
    c["upper_bound"] = b.upper_bound;
    c["integer_bound"] = b.integer_bound;
    c["iterations"] = b.iterations;
    c["multipliers"] = b.multipliers;
    return c;
  };
  ordered_json doc;
  doc["version"] = kDocumentVersion;
  doc["value"] = r.incumbent.value();
  doc["proven_optimal"] = r.proven_optimal;
  doc["termination"] = to_string(r.termination);
  doc["nodes_explored"] = r.nodes_explored;
  doc["greedy_value"] = result.greedy.value();
  doc["warm_start_value"] = r.warm_start_value;
  doc["local_search"] = {{"evaluations", result.local_search.evaluations},
                         {"improvements", result.local_search.improvements},
                         {"budget_exhausted", result.local_search.budget_exhausted}};
  if (result.restricted) {
    doc["pool"] = {{"kept", result.pool.kept.size()},
                   {"used_by_incumbent", result.pool.used_count},
                   {"unsaturated_extra", result.pool.extra_count}};
  } else {
    doc["pool"] = nullptr;
  }
  doc["relations_solved"] = result.solved_instance.num_relations();
  doc["bound"] = certificate(r.bound);
  doc["root_bound"] = certificate(r.root_bound);
  return doc.dump(2) + "\n";
}

}  // namespace oetp
