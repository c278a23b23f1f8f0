#include "hgr/scoring.hpp"

#include <algorithm>
#include <set>

#include "hgr/errors.hpp"

namespace hgr {

const char* to_string(Aggregator a) noexcept {
  switch (a) {
    case Aggregator::mean: return "mean";
    case Aggregator::max: return "max";
    case Aggregator::sum: return "sum";
  }
  return "?";
}

Aggregator aggregator_from_string(const std::string& s) {
  if (s == "mean") return Aggregator::mean;
  if (s == "max") return Aggregator::max;
  if (s == "sum") return Aggregator::sum;
  throw DataError("unknown aggregator '" + s + "'");
}

double aggregate(const std::vector<double>& values, Aggregator a) {
  if (values.empty()) return 0.0;
  switch (a) {
    case Aggregator::max: return *std::max_element(values.begin(), values.end());
    case Aggregator::sum:
    case Aggregator::mean: {
      double s = 0.0;
      for (double v : values) s += v;
      return a == Aggregator::sum ? s : s / static_cast<double>(values.size());
    }
  }
  return 0.0;
}

double EmbeddingRelevance::operator()(EntityId v) const {
  auto it = memo_.find(v);
  if (it != memo_.end()) return it->second;
  const EmbeddingVector* row = index_->find(v.value);
  double s = row ? cosine_similarity(*row, question_) : 0.0;
  memo_.emplace(v, s);
  return s;
}

double overlap_score(const KnowledgeHypergraph& g, HyperedgeId next, HyperedgeId from, const EntityScoreFn& score,
                     Aggregator a) {
  auto shared = g.overlap(next, from);
  if (shared.empty())
    throw PreconditionError("hyperedges " + std::to_string(next.value) + " and " + std::to_string(from.value) +
                            " share no entity");
  std::vector<double> values;
  for (EntityId v : shared) values.push_back(score(v));
  return aggregate(values, a);
}

double path_score(const KnowledgeHypergraph& g, const ReasoningPath& p, const EntityScoreFn& score, Aggregator a) {
  std::set<EntityId> covered;
  for (HyperedgeId e : p.edges) {
    const auto& members = g.edge(e).entities;
    covered.insert(members.begin(), members.end());
  }
  std::vector<double> values;
  for (EntityId v : covered) values.push_back(score(v));
  return aggregate(values, a);
}

}  // namespace hgr
