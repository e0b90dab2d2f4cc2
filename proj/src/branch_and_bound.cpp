#include <algorithm>
#include <chrono>
#include <limits>
#include <memory>
#include <ostream>

#include "oetp/errors.hpp"
#include "oetp/exact.hpp"
#include "oetp/heuristics.hpp"

namespace oetp {

namespace {

constexpr ScheduleId kFree = -2;

struct Node {
  std::shared_ptr<const Node> parent;
  CandidateId candidate = -1;  // decision taken on the edge from parent
  ScheduleId schedule = kUnassigned;
  std::int32_t depth = 0;
  std::int64_t fixed_value = 0;
  std::int64_t int_bound = 0;
  double bound = 0.0;
  std::uint64_t seq = 0;
  std::vector<double> lambda;
};
using NodePtr = std::shared_ptr<const Node>;

// Max-heap order: larger integer bound first, then deeper, then older.
struct LowerPriority {
  bool operator()(const NodePtr& a, const NodePtr& b) const {
    if (a->int_bound != b->int_bound) return a->int_bound < b->int_bound;
    if (a->depth != b->depth) return a->depth < b->depth;
    return a->seq > b->seq;
  }
};

class Search {
 public:
  Search(const Instance& instance, const SolverConfig& config)
      : inst_(instance),
        config_(config),
        by_resource_(schedules_by_resource(instance)),
        dual_(instance),
        state_(instance.num_candidates(), kFree),
        residual_(instance.capacity),
        alive_(instance.num_schedules(), 0) {
    for (std::size_t j = 0; j < inst_.num_schedules(); ++j) {
      alive_[j] = fits(inst_.usage[j], inst_.capacity) ? 1 : 0;
    }
    root_alive_ = alive_;
  }

  SolveReport run(const std::optional<Solution>& warm_start);

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void apply(CandidateId c, ScheduleId j) {
    state_[c] = j;
    if (j == kUnassigned) return;
    ++fixed_value_;
    for (ResourceId k : inst_.usage[j]) {
      if (--residual_[k] == 0) {
        for (ScheduleId s : by_resource_[k]) alive_[s] = 0;
      }
    }
  }

  void undo(CandidateId c, ScheduleId j) {
    state_[c] = kFree;
    if (j == kUnassigned) return;
    --fixed_value_;
    for (ResourceId k : inst_.usage[j]) {
      if (residual_[k]++ == 0) {
        for (ScheduleId s : by_resource_[k]) {
          alive_[s] = root_alive_[s] && fits(inst_.usage[s], residual_) ? 1 : 0;
        }
      }
    }
  }

  void load(const Node& node) {
    std::fill(state_.begin(), state_.end(), kFree);
    residual_ = inst_.capacity;
    alive_ = root_alive_;
    fixed_value_ = 0;
    for (const Node* n = &node; n->parent; n = n->parent.get()) apply(n->candidate, n->schedule);
  }

  std::size_t alive_count(CandidateId c) const {
    std::size_t n = 0;
    for (ScheduleId j : inst_.compat[c]) n += alive_[j];
    return n;
  }

  // Free candidates that still have an alive schedule.
  void collect_open(std::vector<CandidateId>& out) const {
    out.clear();
    for (std::size_t i = 0; i < state_.size(); ++i) {
      if (state_[i] == kFree && alive_count(static_cast<CandidateId>(i)) > 0) {
        out.push_back(static_cast<CandidateId>(i));
      }
    }
  }

  Solution fixed_solution() const {
    Solution s = Solution::empty(inst_.num_candidates());
    for (std::size_t i = 0; i < state_.size(); ++i) {
      if (state_[i] >= 0) s.assignment[i] = state_[i];
    }
    return s;
  }

  void offer(Solution candidate, const char* why) {
    if (candidate.value() <= incumbent_value_) return;
    incumbent_value_ = candidate.value();
    incumbent_ = std::move(candidate);
    log(why);
  }

  void log(const char* what) {
    SearchEvent e;
    e.nodes = nodes_;
    e.elapsed_s = elapsed();
    e.open_nodes = open_.size();
    e.global_bound = global_int_bound();
    e.incumbent = incumbent_value_;
    e.what = what;
    report_.events.push_back(std::move(e));
  }

  std::int64_t global_int_bound() const {
    std::int64_t b = std::max(incumbent_value_, pre_root_bound_);
    for (const auto& n : open_) b = std::max(b, n->int_bound);
    return b;
  }

  void push(NodePtr node) {
    open_.push_back(std::move(node));
    std::push_heap(open_.begin(), open_.end(), LowerPriority{});
  }

  NodePtr pop() {
    std::pop_heap(open_.begin(), open_.end(), LowerPriority{});
    NodePtr n = std::move(open_.back());
    open_.pop_back();
    return n;
  }

  // Relaxed picks accepted in candidate order where they fit, then greedy.
  void lagrangian_repair(std::span<const CandidateId> open) {
    Solution s = fixed_solution();
    ResourceUsage residual = residual_;
    for (CandidateId i : open) {
      const ScheduleId j = dual_.choice()[i];
      if (j == kUnassigned || !fits(inst_.usage[j], residual)) continue;
      s.assignment[i] = j;
      for (ResourceId k : inst_.usage[j]) --residual[k];
    }
    offer(greedy_extend(inst_, std::move(s)), "incumbent");
  }

  // Bounds the current state as a child of `parent` and pushes it if it can
  // still beat the incumbent.
  void bound_child(const NodePtr& parent, CandidateId c, ScheduleId j);

  const Instance& inst_;
  SolverConfig config_;
  std::vector<std::vector<ScheduleId>> by_resource_;
  LagrangianDual dual_;

  std::vector<ScheduleId> state_;
  ResourceUsage residual_;
  std::vector<unsigned char> alive_;
  std::vector<unsigned char> root_alive_;
  std::int64_t fixed_value_ = 0;
  std::vector<CandidateId> open_candidates_;

  std::vector<NodePtr> open_;
  Solution incumbent_;
  std::int64_t incumbent_value_ = 0;
  std::int64_t pre_root_bound_ = 0;
  std::int64_t nodes_ = 0;
  std::uint64_t seq_ = 0;
  std::chrono::steady_clock::time_point start_;
  SolveReport report_;
};

void Search::bound_child(const NodePtr& parent, CandidateId c, ScheduleId j) {
  collect_open(open_candidates_);
  if (open_candidates_.empty()) {
    offer(fixed_solution(), "incumbent");
    return;
  }
  const DualView view{open_candidates_, alive_, residual_};
  const double target = static_cast<double>(incumbent_value_ - fixed_value_);
  DualResult r = dual_.solve(view, parent->lambda, config_.node_dual, target);
  const std::int64_t int_bound = fixed_value_ + integral_bound(r.best_value);
  if (int_bound <= incumbent_value_) return;

  auto node = std::make_shared<Node>();
  node->parent = parent;
  node->candidate = c;
  node->schedule = j;
  node->depth = parent->depth + 1;
  node->fixed_value = fixed_value_;
  node->bound = static_cast<double>(fixed_value_) + r.best_value;
  node->int_bound = int_bound;
  node->seq = seq_++;
  node->lambda = std::move(r.best_lambda);
  push(std::move(node));
}

SolveReport Search::run(const std::optional<Solution>& warm_start) {
  start_ = std::chrono::steady_clock::now();
  incumbent_ = Solution::empty(inst_.num_candidates());
  if (warm_start) {
    const Evaluation ev = [&] {
      try {
        return evaluate_solution(inst_, *warm_start);
      } catch (const ContractError& e) {
        throw ContractError(std::string("warm start rejected: ") + e.what());
      }
    }();
    if (!ev.feasible) {
      throw ContractError("warm start rejected: infeasible (" + ev.violations.front().where +
                          ": " + ev.violations.front().message + ")");
    }
    incumbent_ = *warm_start;
    incumbent_value_ = ev.value;
  }
  report_.warm_start_value = incumbent_value_;

  auto finish = [&](Termination t) {
    report_.termination = t;
    report_.proven_optimal = t == Termination::kOptimal;
    report_.nodes_explored = nodes_;
    report_.incumbent = incumbent_;
    BoundCertificate& b = report_.bound;
    b = report_.root_bound;
    b.method = "branch-and-bound";
    if (report_.proven_optimal) {
      b.upper_bound = static_cast<double>(incumbent_value_);
      b.integer_bound = incumbent_value_;
    } else {
      double ub = static_cast<double>(std::max(incumbent_value_, pre_root_bound_));
      for (const auto& n : open_) ub = std::max(ub, n->bound);
      b.upper_bound = ub;
      b.integer_bound = global_int_bound();
    }
    log("end");
    report_.wall_time_s = elapsed();
    return std::move(report_);
  };

  collect_open(open_candidates_);
  // Until the root is bounded, every open candidate could still be placed.
  pre_root_bound_ = static_cast<std::int64_t>(open_candidates_.size());
  log("start");
  if (config_.limits.node_limit && *config_.limits.node_limit <= 0) {
    report_.root_bound.upper_bound = static_cast<double>(pre_root_bound_);
    report_.root_bound.integer_bound = pre_root_bound_;
    report_.root_bound.method = "trivial";
    return finish(Termination::kNodeLimit);
  }

  auto root = std::make_shared<Node>();
  if (config_.node_heuristic) offer(greedy_assign(inst_), "incumbent");
  {
    const DualView view{open_candidates_, alive_, residual_};
    DualResult r = dual_.solve(view, {}, config_.root_dual,
                               static_cast<double>(incumbent_value_));
    // Re-evaluate at the best multipliers so the relaxed choice matches them.
    dual_.evaluate(view, r.best_lambda);
    if (config_.node_heuristic) lagrangian_repair(open_candidates_);
    root->bound = r.best_value;
    root->int_bound = integral_bound(r.best_value);
    root->lambda = r.best_lambda;
    report_.root_bound.upper_bound = r.best_value;
    report_.root_bound.integer_bound = root->int_bound;
    report_.root_bound.method = "lagrangian-subgradient";
    report_.root_bound.multipliers = r.best_lambda;
    report_.root_bound.iterations = r.iterations;
  }
  root->seq = seq_++;
  if (open_candidates_.empty()) {
    root->int_bound = 0;
    root->bound = 0.0;
  }
  pre_root_bound_ = 0;
  if (root->int_bound > incumbent_value_) push(root);
  log("root");

  while (!open_.empty()) {
    if (config_.limits.node_limit && nodes_ >= *config_.limits.node_limit) {
      return finish(Termination::kNodeLimit);
    }
    if (elapsed() >= config_.limits.time_limit_s) return finish(Termination::kTimeLimit);

    if (open_.front()->int_bound <= incumbent_value_) {
      // Best-first: nothing left can improve.
      open_.clear();
      break;
    }
    NodePtr node = pop();
    ++nodes_;
    load(*node);
    if (config_.node_heuristic && node->depth > 0) {
      offer(greedy_extend(inst_, fixed_solution()), "incumbent");
    }
    collect_open(open_candidates_);
    if (open_candidates_.empty()) {
      offer(fixed_solution(), "incumbent");
      continue;
    }
    // Fail-first: fewest alive schedules, ties by id.
    CandidateId branch = open_candidates_.front();
    std::size_t fewest = alive_count(branch);
    for (CandidateId c : open_candidates_) {
      const std::size_t n = alive_count(c);
      if (n < fewest) {
        fewest = n;
        branch = c;
      }
    }
    // Children by descending reduced profit under the node multipliers.
    std::vector<double> cost(inst_.num_schedules());
    std::vector<ScheduleId> children;
    for (ScheduleId j : inst_.compat[branch]) {
      if (!alive_[j]) continue;
      double c = 0.0;
      for (ResourceId k : inst_.usage[j]) c += node->lambda[k];
      cost[j] = c;
      children.push_back(j);
    }
    std::stable_sort(children.begin(), children.end(),
                     [&](ScheduleId a, ScheduleId b) { return cost[a] < cost[b]; });
    children.push_back(kUnassigned);
    for (ScheduleId j : children) {
      apply(branch, j);
      bound_child(node, branch, j);
      undo(branch, j);
    }
    if (config_.log_every > 0 && nodes_ % config_.log_every == 0) log("progress");
  }
  return finish(Termination::kOptimal);
}

}  // namespace

std::string to_string(Termination termination) {
  switch (termination) {
    case Termination::kOptimal: return "optimal";
    case Termination::kTimeLimit: return "time-limit";
    case Termination::kNodeLimit: return "node-limit";
  }
  return "unknown";
}

SolveReport branch_and_bound(const Instance& instance,
                             const std::optional<Solution>& warm_start,
                             const SolverConfig& config) {
  Search search(instance, config);
  return search.run(warm_start);
}

void write_event_log_csv(std::ostream& out, const std::vector<SearchEvent>& events) {
  out << "event,nodes,elapsed_s,open_nodes,global_bound,incumbent\n";
  for (const auto& e : events) {
    out << e.what << ',' << e.nodes << ',' << e.elapsed_s << ',' << e.open_nodes << ','
        << e.global_bound << ',' << e.incumbent << '\n';
  }
}

}  // namespace oetp
