#include "hgr/anchoring.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "disjoint_set.hpp"
#include "hgr/errors.hpp"
#include "hgr/oracle/calls.hpp"
#include "hgr/text_util.hpp"

namespace hgr {

EntityId QuestionSubgraph::canonical(EntityId v) const {
  auto it = merge_map.find(v);
  return it == merge_map.end() ? v : it->second;
}

std::vector<std::string> extract_keywords(oracle::OracleGateway& gw, const std::string& question,
                                          std::string_view call_site) {
  if (fold_text(question).empty()) return {};
  std::vector<std::string> raw;
  try {
    raw = oracle::extract_keywords(gw, question, call_site);
  } catch (const OracleError& ex) {
    spdlog::warn("keyword extraction failed: {}", ex.what());
    return {};
  }
  std::vector<std::string> out;
  for (auto& k : raw) {
    std::string t = trim(k);
    if (!t.empty() && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
  }
  return out;
}

EntitySet link_topic_entities(const std::vector<std::string>& keywords, const VectorIndex& name_index,
                              double theta_v, std::size_t k_v, const Embedder& embed) {
  EntitySet out;
  if (name_index.empty()) return out;
  for (const auto& kw : keywords)
    for (const auto& hit : top_k_above(embed(kw), name_index, k_v, theta_v)) out.insert(EntityId{hit.id});
  return out;
}

EdgeSet match_target_hyperedges(const std::string& question, const VectorIndex& edge_index, double theta_e,
                                std::size_t k_e, const Embedder& embed) {
  EdgeSet out;
  if (edge_index.empty() || fold_text(question).empty()) return out;
  for (const auto& hit : top_k_above(embed(question), edge_index, k_e, theta_e)) out.insert(HyperedgeId{hit.id});
  return out;
}

QuestionSubgraph merge_synonyms(const KnowledgeHypergraph& g) {
  detail::DisjointSet<EntityId> ds;
  for (const auto& [id, e] : g.hyperedges())
    if (e.kind == EdgeKind::synonym)
      for (std::size_t i = 1; i < e.entities.size(); ++i) ds.unite(e.entities[0], e.entities[i]);
  auto groups = ds.groups();

  QuestionSubgraph out;
  for (auto& [root, members] : groups) {
    if (members.size() < 2) continue;
    EntityId canon = members.front();
    for (EntityId v : members) {
      auto len = g.entity(v).description.size();
      auto best = g.entity(canon).description.size();
      if (len > best || (len == best && v < canon)) canon = v;
    }
    for (EntityId v : members) out.merge_map[v] = canon;
  }

  std::vector<Entity> entities;
  for (const auto& [id, v] : g.entities()) {
    EntityId c = out.canonical(id);
    if (c != id) continue;
    Entity ent = v;
    for (const auto& [member, target] : out.merge_map)
      if (target == id && member != id) {
        const Entity& m = g.entity(member);
        ent.aliases.push_back({m.id, m.name, m.description});
      }
    entities.push_back(std::move(ent));
  }

  std::vector<Hyperedge> edges;
  std::set<std::pair<std::string, std::vector<EntityId>>> seen;
  for (const auto& [id, e] : g.hyperedges()) {
    if (e.kind == EdgeKind::synonym) continue;
    Hyperedge r = e;
    r.entities.clear();
    for (EntityId v : e.entities) {
      EntityId c = out.canonical(v);
      if (std::find(r.entities.begin(), r.entities.end(), c) == r.entities.end()) r.entities.push_back(c);
    }
    std::vector<EntityId> key = r.entities;
    std::sort(key.begin(), key.end());
    if (!seen.emplace(r.name, key).second) continue;
    edges.push_back(std::move(r));
  }
  out.graph = KnowledgeHypergraph::from_parts(std::move(entities), std::move(edges));
  return out;
}

QuestionSubgraph build_question_subgraph(const KnowledgeHypergraph& g, const AnchorSet& anchors,
                                         std::size_t d_max) {
  if (anchors.empty()) return {};
  EdgeSet edges = g.k_hop_neighborhood(anchors.topics, anchors.targets, d_max);
  return merge_synonyms(g.induced_subgraph(edges));
}

AnchorOutcome anchor_question(const std::string& question, const GraphIndexes& indexes, const AnchorConfig& cfg,
                              oracle::OracleGateway& gw, const Embedder& embed) {
  AnchorOutcome out;
  out.anchors.keywords = extract_keywords(gw, question);
  auto attempt = [&](double relax) {
    out.anchors.topics =
        link_topic_entities(out.anchors.keywords, indexes.entity_name, cfg.theta_v - relax, cfg.k_v, embed);
    out.anchors.targets =
        match_target_hyperedges(question, indexes.hyperedge_name, cfg.theta_e - relax, cfg.k_e, embed);
  };
  attempt(0.0);
  if (out.anchors.empty()) {
    out.relaxed = true;
    attempt(0.1);
  }
  out.no_graph_evidence = out.anchors.empty();
  return out;
}

SubgraphIndexes restrict_indexes(const GraphIndexes& full, const QuestionSubgraph& hq) {
  std::set<std::uint32_t> entity_ids, edge_ids;
  for (const auto& [id, v] : hq.graph.entities()) entity_ids.insert(id.value);
  for (const auto& [id, target] : hq.merge_map) entity_ids.insert(id.value);
  for (const auto& [id, e] : hq.graph.hyperedges()) edge_ids.insert(id.value);
  SubgraphIndexes out;
  out.indexes.entity_name = full.entity_name.restricted(entity_ids);
  out.indexes.entity_desc = full.entity_desc.restricted(entity_ids);
  out.indexes.hyperedge_name = full.hyperedge_name.restricted(edge_ids);
  out.subgraph = &hq;
  return out;
}

AnchorSet anchor_in_subgraph(const std::vector<std::string>& keywords, const std::string& question,
                             const SubgraphIndexes& sub, const AnchorConfig& cfg, const Embedder& embed) {
  if (sub.subgraph == nullptr) throw PreconditionError("subgraph indexes are not bound to a subgraph");
  AnchorSet out;
  out.keywords = keywords;
  for (EntityId v : link_topic_entities(keywords, sub.indexes.entity_name, cfg.theta_v, cfg.k_v, embed)) {
    EntityId c = sub.subgraph->canonical(v);
    if (sub.subgraph->graph.has_entity(c)) out.topics.insert(c);
  }
  out.targets = match_target_hyperedges(question, sub.indexes.hyperedge_name, cfg.theta_e, cfg.k_e, embed);
  return out;
}

}  // namespace hgr
