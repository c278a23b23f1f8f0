#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hgr/hypergraph.hpp"
#include "hgr/vector_index.hpp"

namespace hgr {

/// How per-entity scores are combined into a hyperedge or path score.
enum class Aggregator { mean, max, sum };

const char* to_string(Aggregator a) noexcept;
Aggregator aggregator_from_string(const std::string& s);

/// Empty input aggregates to 0.
double aggregate(const std::vector<double>& values, Aggregator a);

using EntityScoreFn = std::function<double(EntityId)>;

/// Embedding relevance of entities to one question: cosine between the
/// entity's description embedding and the question embedding. Entities with
/// no description row score 0.
class EmbeddingRelevance {
 public:
  EmbeddingRelevance(const VectorIndex& desc_index, EmbeddingVector question)
      : index_(&desc_index), question_(std::move(question)) {}

  double operator()(EntityId v) const;

 private:
  const VectorIndex* index_;
  EmbeddingVector question_;
  mutable std::map<EntityId, double> memo_;
};

/// Score of hyperedge `next` reached from `from`: the aggregate of entity
/// scores over their shared entities. Throws PreconditionError when they share
/// none.
double overlap_score(const KnowledgeHypergraph& g, HyperedgeId next, HyperedgeId from, const EntityScoreFn& score,
                     Aggregator a = Aggregator::mean);

/// Aggregate of entity scores over the distinct entities covered by `p`.
double path_score(const KnowledgeHypergraph& g, const ReasoningPath& p, const EntityScoreFn& score,
                  Aggregator a = Aggregator::mean);

}  // namespace hgr
