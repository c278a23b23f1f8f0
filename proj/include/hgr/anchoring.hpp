#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hgr/hypergraph.hpp"
#include "hgr/oracle/gateway.hpp"
#include "hgr/vector_index.hpp"

namespace hgr {

struct AnchorConfig {
  double theta_v = 0.75;  // keyword to entity-name similarity
  double theta_e = 0.70;  // question to hyperedge-name similarity
  std::size_t k_v = 3;
  std::size_t k_e = 5;
  std::size_t d_max = 4;  // hop bound of the question subgraph
};

struct AnchorSet {
  EntitySet topics;
  EdgeSet targets;
  std::vector<std::string> keywords;

  bool empty() const noexcept { return topics.empty() && targets.empty(); }
};

/// The three similarity indexes over one graph.
struct GraphIndexes {
  VectorIndex entity_name{IndexKind::entity_name, 0};
  VectorIndex entity_desc{IndexKind::entity_desc, 0};
  VectorIndex hyperedge_name{IndexKind::hyperedge_name, 0};
};

/// Synonym-merged neighborhood of the anchors. Entities and hyperedges keep
/// their ids from the source graph.
struct QuestionSubgraph {
  KnowledgeHypergraph graph;
  /// Member of a synonym group -> canonical member (canonical maps to itself).
  std::map<EntityId, EntityId> merge_map;

  EntityId canonical(EntityId v) const;
};

/// Deduplicated, order-preserving. A question without any alphanumeric content
/// yields no keywords without consulting the oracle; oracle failure yields none.
std::vector<std::string> extract_keywords(oracle::OracleGateway& gw, const std::string& question,
                                          std::string_view call_site = oracle::site::kAnchoring);

EntitySet link_topic_entities(const std::vector<std::string>& keywords, const VectorIndex& name_index,
                              double theta_v, std::size_t k_v, const Embedder& embed);

EdgeSet match_target_hyperedges(const std::string& question, const VectorIndex& edge_index, double theta_e,
                                std::size_t k_e, const Embedder& embed);

/// Collapses entities joined by synonym hyperedges into one canonical entity
/// (longest description, then smallest id), rewrites fact edges onto canonical
/// ids and drops the synonym edges.
QuestionSubgraph merge_synonyms(const KnowledgeHypergraph& g);

QuestionSubgraph build_question_subgraph(const KnowledgeHypergraph& g, const AnchorSet& anchors,
                                         std::size_t d_max);

struct AnchorOutcome {
  AnchorSet anchors;
  bool relaxed = false;
  /// Neither topics nor targets were found, even with relaxed thresholds.
  bool no_graph_evidence = false;
};

/// Keywords, topic entities and target hyperedges for `question`. When both
/// sets are empty the thresholds are relaxed by 0.1 once.
AnchorOutcome anchor_question(const std::string& question, const GraphIndexes& indexes, const AnchorConfig& cfg,
                              oracle::OracleGateway& gw, const Embedder& embed);

/// Indexes restricted to a question subgraph. Entity-name rows of merged
/// entities are kept so that their names still link; hits map through the
/// merge map.
struct SubgraphIndexes {
  GraphIndexes indexes;
  const QuestionSubgraph* subgraph = nullptr;
};

SubgraphIndexes restrict_indexes(const GraphIndexes& full, const QuestionSubgraph& hq);

/// Re-anchoring inside a question subgraph: topics come back as canonical ids
/// and targets are limited to subgraph edges.
AnchorSet anchor_in_subgraph(const std::vector<std::string>& keywords, const std::string& question,
                             const SubgraphIndexes& sub, const AnchorConfig& cfg, const Embedder& embed);

}  // namespace hgr
