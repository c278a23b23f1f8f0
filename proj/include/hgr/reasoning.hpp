#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgr/answer_path.hpp"
#include "hgr/oracle/gateway.hpp"
#include "hgr/planning.hpp"

namespace hgr {

enum class SearchStrategy { dfs, bfs };

const char* to_string(SearchStrategy s) noexcept;
SearchStrategy search_strategy_from_string(const std::string& s);

struct SearchStats {
  std::size_t states_visited = 0;
  std::size_t peak_frontier_width = 0;
  std::size_t peak_depth = 0;

  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

nlohmann::json search_stats_to_json(const SearchStats& s);

/// One choice of answer-path pair per subquestion of a level.
using JointAssignment = std::map<int, AnswerPathPair>;

/// Cartesian product over the subquestions in id order, each set ordered by
/// (answer, path). When the product exceeds `cap`, the `cap` assignments with
/// the highest summed path score are kept (ties by product order) and returned
/// in product order. Any empty set yields no assignments.
std::vector<JointAssignment> joint_assignments(const std::map<int, std::vector<AnswerPathPair>>& options,
                                               std::size_t cap = 6);

/// Resolves one subquestion of `dag` into answer-path pairs.
using SubquestionResolver = std::function<std::vector<AnswerPathPair>(const ReasoningDAG&, const Subquestion&)>;

/// Produces the successor of `dag` after `assignment` answered its current level.
using DagRefiner = std::function<ReasoningDAG(const ReasoningDAG&, const JointAssignment&)>;

/// Records the assignment and advances completed_level without changing the
/// remaining plan.
ReasoningDAG advance_dag(const ReasoningDAG& dag, const JointAssignment& assignment);

/// Checks a proposed plan against `dag` (whose completed_level has already
/// advanced): completed subquestions keep their ids and texts, deps among them
/// are unchanged, no new dep points into a completed subquestion, and the
/// result is acyclic. Throws InvalidPlanError or CycleError.
void validate_refinement(const ReasoningDAG& dag, const ReasoningPlan& proposal);

/// Advances `dag`, then asks the oracle for a refined plan of the remaining
/// subquestions. An invalid proposal is asked once more; a refusal or a second
/// invalid proposal keeps the remaining plan as it was.
ReasoningDAG refine_dag(const ReasoningDAG& dag, const JointAssignment& assignment, oracle::OracleGateway& gw,
                        const std::string& question);

struct ReasonOptions {
  std::size_t solutions = 2;  // K
  SearchStrategy strategy = SearchStrategy::dfs;
  std::size_t branch_cap = 6;
};

struct ReasonResult {
  std::vector<ReasoningDAG> completed;
  SearchStats stats;
  /// {dag_digest, level, action, stats} per visited state.
  std::vector<nlohmann::json> trace;
};

/// Search over partially completed DAGs. Each popped incomplete state resolves
/// its current level; a level with an unanswerable subquestion prunes the
/// state. Stops once `solutions` completed DAGs are collected or the frontier
/// is empty.
ReasonResult reason(const std::vector<ReasoningDAG>& initial, const SubquestionResolver& resolve,
                    const DagRefiner& refine, const ReasonOptions& options);

}  // namespace hgr
