#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgr/anchoring.hpp"
#include "hgr/answer_path.hpp"
#include "hgr/oracle/gateway.hpp"
#include "hgr/scoring.hpp"

namespace hgr {

struct Subquestion {
  int id = 0;
  std::string text;
  std::vector<std::string> topics;
  int level = 0;

  friend bool operator==(const Subquestion&, const Subquestion&) = default;
};

/// (i, j): subquestion j depends on the answer to subquestion i.
using Dependency = std::pair<int, int>;

struct ReasoningPlan {
  std::vector<Subquestion> subquestions;
  std::set<Dependency> deps;

  const Subquestion* find(int id) const;

  friend bool operator==(const ReasoningPlan&, const ReasoningPlan&) = default;
};

inline constexpr std::size_t kMaxSubquestionChars = 300;

/// Structural parse of {subquestions:[{id,text,topics?}], deps:[[i,j]]}.
/// Throws InvalidPlanError.
ReasoningPlan plan_from_json(const nlohmann::json& doc);
nlohmann::json plan_to_json(const ReasoningPlan& plan);

/// Non-empty, unique ids (dense from 0 when `require_dense_ids`), texts
/// non-empty and at most kMaxSubquestionChars, deps between known ids, no self
/// loops, acyclic. Throws InvalidPlanError (CycleError for cycles).
void validate_plan(const ReasoningPlan& plan, bool require_dense_ids = true);

/// One directed cycle through `deps`, if any, in traversal order.
std::optional<std::vector<int>> find_cycle(const std::set<Dependency>& deps);

/// Transitive reduction of an acyclic relation. Throws CycleError.
std::set<Dependency> hasse_reduce(const std::set<Dependency>& deps);

struct ReasoningDAG {
  ReasoningPlan plan;  // deps are Hasse-reduced
  std::vector<std::vector<int>> levels;
  std::map<int, std::vector<AnswerPathPair>> ap;
  int completed_level = -1;

  bool complete() const noexcept { return completed_level + 1 >= static_cast<int>(levels.size()); }
  int level_count() const noexcept { return static_cast<int>(levels.size()); }
  const Subquestion& subquestion(int id) const;
  int level_of(int id) const { return subquestion(id).level; }
};

/// Reassigns levels: subquestions at levels <= completed_level keep theirs,
/// every other one gets max(completed_level + 1, 1 + level of each
/// predecessor). With completed_level = -1 this is longest-path leveling.
void assign_levels(ReasoningDAG& dag);

/// Validates, Hasse-reduces and levels `plan`.
ReasoningDAG build_reasoning_dag(ReasoningPlan plan);

ReasoningPlan single_node_plan(const std::string& question, const std::vector<std::string>& topics = {});

nlohmann::json dag_to_json(const ReasoningDAG& dag, const KnowledgeHypergraph* names = nullptr);
std::string dag_digest(const ReasoningDAG& dag);

/// Relevance-pruned neighborhood of the anchors used to ground planning.
struct PlanContextGraph {
  KnowledgeHypergraph graph;
  std::map<HyperedgeId, int> layer_of;
  std::map<HyperedgeId, double> score_of;
};

/// Seeds (targets plus edges incident to topics) form layer 0, scored by the
/// aggregate entity relevance of their members. Each further layer keeps, per
/// frontier edge, the top-`width` undiscovered neighbors by overlap score.
PlanContextGraph build_plan_context_graph(const KnowledgeHypergraph& hq, const AnchorSet& anchors,
                                          const EntityScoreFn& relevance, std::size_t depth, std::size_t width,
                                          Aggregator aggregator = Aggregator::mean);

/// One line per edge, "name {entity; entity}", ordered by layer, then score
/// descending, then id. Lines that do not fit `char_budget` are cut, starting
/// with the first that overflows.
std::string form_plan_context(const PlanContextGraph& pcg, std::size_t char_budget = 4000);

/// Up to `n` distinct valid plans. An invalid or refused proposal is asked
/// once more and then dropped. Throws NoFeasiblePlanError if none survive.
std::vector<ReasoningPlan> propose_initial_plans(oracle::OracleGateway& gw, const std::string& question,
                                                 const std::vector<std::string>& topics,
                                                 const std::string& context, std::size_t n);

}  // namespace hgr
