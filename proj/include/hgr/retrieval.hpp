#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hgr/anchoring.hpp"
#include "hgr/answer_path.hpp"
#include "hgr/construction.hpp"
#include "hgr/oracle/gateway.hpp"
#include "hgr/planning.hpp"
#include "hgr/scoring.hpp"

namespace hgr {

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

struct RetrievalConfig {
  std::size_t d_max = 3;
  std::size_t beam = 4;            // kUnbounded keeps every direction
  double theta_emb = 0.5;          // entity relevance gate
  bool lite_mode = false;          // embedding-only weights, edge-only context
  std::size_t path_shortlist = 5;  // paths shown to the sufficiency check
  std::size_t fusion_budget = 4000;
  Aggregator aggregator = Aggregator::mean;
};

/// EW: 0 below the gate; otherwise the embedding relevance itself in lite mode,
/// or the `llm` score. A failed or refused `llm` falls back to the relevance.
double entity_weight(double relevance, double theta_emb, bool lite_mode,
                     const std::function<std::optional<double>()>& llm);

/// Memoized entity weights for one subquestion.
class EntityWeigher {
 public:
  /// `gw` may be null, in which case weights never consult the oracle.
  EntityWeigher(const KnowledgeHypergraph& hq, EntityScoreFn relevance, std::string subquestion,
                oracle::OracleGateway* gw, double theta_emb, bool lite_mode);

  double operator()(EntityId v);
  EntityScoreFn as_function() {
    return [this](EntityId v) { return (*this)(v); };
  }
  std::size_t oracle_calls() const noexcept { return oracle_calls_; }

 private:
  const KnowledgeHypergraph* hq_;
  EntityScoreFn relevance_;
  std::string subquestion_;
  oracle::OracleGateway* gw_;
  double theta_emb_;
  bool lite_mode_;
  std::map<EntityId, double> memo_;
  std::size_t oracle_calls_ = 0;
};

/// A partial path proposed for extension, scored by the EWO of its last hop.
struct ScoredDirection {
  ReasoningPath path;
  HyperedgeId terminal;
  double ewo = 0.0;
};

/// Receives a ranked shortlist and a limit; returns picked indices, or nullopt
/// when no choice was made (refusal or failure).
using DirectionPicker =
    std::function<std::optional<std::vector<std::size_t>>(const std::vector<ScoredDirection>&, std::size_t)>;
using PathPicker = std::function<std::optional<std::vector<std::size_t>>(const std::vector<ReasoningPath>&)>;

/// Orders by EWO descending, then terminal id, then path.
void rank_directions(std::vector<ScoredDirection>& candidates);

/// Ranks, then lets `picker` choose at most `b` from the top 2b. Without a
/// picker, or when it makes no choice, the top `b` are kept.
std::vector<ScoredDirection> select_directions(std::vector<ScoredDirection> candidates, std::size_t b,
                                               const DirectionPicker& picker);

struct ScoredPath {
  ReasoningPath path;
  double score = 0.0;
};

/// Ranks by path score descending (then path), keeps the top `shortlist`, and
/// returns the sufficient ones. Without a picker, paths scoring above zero and
/// at least the shortlist median are kept. A picker with no choice selects none.
std::vector<ScoredPath> select_paths(std::vector<ScoredPath> candidates, std::size_t shortlist,
                                     const PathPicker& picker);

struct BeamSearchResult {
  std::vector<ScoredPath> selected;
  std::size_t stop_depth = 0;  // 0 when nothing was selected
  EdgeSet visited;
};

/// Iterative deepening over paths that start at a seed edge. Depth d examines
/// paths of d edges; the first depth with a selected path ends the search. A
/// path never repeats an edge. Candidates at each depth are the frontier paths
/// plus their prefixes that end at a target edge.
BeamSearchResult beam_search(const KnowledgeHypergraph& g, const EdgeSet& seeds, const EdgeSet& targets,
                             const EntityScoreFn& weight, const RetrievalConfig& cfg,
                             const DirectionPicker& directions, const PathPicker& paths);

/// Context for answering from `p`: "[edge] name" lines in path order, then
/// "[entity] name: description" lines, then "[chunk id] text" lines (each
/// chunk once). Lite mode renders the edge names only. Over budget, entity
/// lines go first (lowest weight first), then chunk lines from the end.
std::string fuse_knowledge(const KnowledgeHypergraph& g, const ReasoningPath& p, const ChunkStore* chunks,
                           bool lite_mode, std::size_t budget, const EntityScoreFn& weight);

/// "name -> name" rendering shown to the selection oracles.
std::string render_path(const KnowledgeHypergraph& g, const ReasoningPath& p);

struct RetrievalEnv {
  const QuestionSubgraph* hq = nullptr;
  const SubgraphIndexes* indexes = nullptr;
  const ChunkStore* chunks = nullptr;
  oracle::OracleGateway* gw = nullptr;
  Embedder embed;
  AnchorConfig anchor;
  RetrievalConfig cfg;
};

struct RetrievalOutcome {
  std::vector<AnswerPathPair> pairs;
  std::size_t stop_depth = 0;
  AnchorSet anchors;
  std::size_t visited_edges = 0;
};

/// Re-anchors the subquestion inside the question subgraph, runs the beam
/// search and answers from each selected path.
RetrievalOutcome retrieve_answers_with_paths(const RetrievalEnv& env, const Subquestion& sq);

}  // namespace hgr
