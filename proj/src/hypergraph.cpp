#include "hgr/hypergraph.hpp"

#include <algorithm>

#include "hgr/errors.hpp"

namespace hgr {

const char* to_string(EdgeKind kind) noexcept {
  return kind == EdgeKind::synonym ? "synonym" : "fact";
}

EdgeKind edge_kind_from_string(const std::string& s) {
  if (s == "fact") return EdgeKind::fact;
  if (s == "synonym") return EdgeKind::synonym;
  throw DataError("unknown hyperedge kind '" + s + "'");
}

bool Hyperedge::contains(EntityId v) const {
  return std::find(entities.begin(), entities.end(), v) != entities.end();
}

bool ReasoningPath::contains(HyperedgeId e) const {
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

KnowledgeHypergraph KnowledgeHypergraph::from_parts(std::vector<Entity> entities,
                                                    std::vector<Hyperedge> edges) {
  KnowledgeHypergraph g;
  for (auto& v : entities) {
    if (v.name.empty()) throw DataError("entity " + std::to_string(v.id.value) + " has an empty name");
    auto id = v.id;
    if (!g.entities_.emplace(id, std::move(v)).second)
      throw DataError("duplicate entity id " + std::to_string(id.value));
    g.incidence_[id];
  }
  for (auto& e : edges) {
    if (e.entities.empty())
      throw DataError("hyperedge " + std::to_string(e.id.value) + " has no entities");
    std::set<EntityId> seen;
    for (EntityId v : e.entities) {
      if (!g.entities_.contains(v))
        throw UnknownEntityError("hyperedge " + std::to_string(e.id.value) +
                                 " references unknown entity " + std::to_string(v.value));
      if (!seen.insert(v).second)
        throw DataError("hyperedge " + std::to_string(e.id.value) + " repeats entity " +
                        std::to_string(v.value));
    }
    if (e.kind == EdgeKind::synonym && (e.entities.size() < 2 || e.source_ref))
      throw DataError("synonym hyperedge " + std::to_string(e.id.value) +
                      " needs >= 2 entities and no source reference");
    for (EntityId v : e.entities) g.incidence_[v].insert(e.id);
    auto id = e.id;
    if (!g.edges_.emplace(id, std::move(e)).second)
      throw DataError("duplicate hyperedge id " + std::to_string(id.value));
  }
  return g;
}

const Entity& KnowledgeHypergraph::entity(EntityId v) const {
  auto it = entities_.find(v);
  if (it == entities_.end()) throw UnknownEntityError("unknown entity " + std::to_string(v.value));
  return it->second;
}

const Hyperedge& KnowledgeHypergraph::edge(HyperedgeId e) const {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw UnknownEdgeError("unknown hyperedge " + std::to_string(e.value));
  return it->second;
}

std::optional<EntityId> KnowledgeHypergraph::find_entity(const std::string& name) const {
  for (const auto& [id, v] : entities_)
    if (v.name == name) return id;
  return std::nullopt;
}

const EdgeSet& KnowledgeHypergraph::incident_edges(EntityId v) const {
  auto it = incidence_.find(v);
  if (it == incidence_.end()) throw UnknownEntityError("unknown entity " + std::to_string(v.value));
  return it->second;
}

EdgeSet KnowledgeHypergraph::neighbors(HyperedgeId e) const {
  const Hyperedge& he = edge(e);
  EdgeSet out;
  for (EntityId v : he.entities) {
    const auto& inc = incidence_.at(v);
    out.insert(inc.begin(), inc.end());
  }
  out.erase(e);
  return out;
}

std::vector<EntityId> KnowledgeHypergraph::overlap(HyperedgeId a, HyperedgeId b) const {
  const Hyperedge& ea = edge(a);
  const Hyperedge& eb = edge(b);
  std::vector<EntityId> out;
  for (EntityId v : ea.entities)
    if (eb.contains(v)) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

KnowledgeHypergraph KnowledgeHypergraph::induced_subgraph(const EdgeSet& edge_set) const {
  std::set<EntityId> members;
  std::vector<Hyperedge> edges;
  for (HyperedgeId id : edge_set) {
    const Hyperedge& e = edge(id);
    members.insert(e.entities.begin(), e.entities.end());
    edges.push_back(e);
  }
  std::vector<Entity> entities;
  for (EntityId v : members) entities.push_back(entities_.at(v));
  return from_parts(std::move(entities), std::move(edges));
}

EdgeSet KnowledgeHypergraph::k_hop_neighborhood(const EntitySet& seed_entities,
                                                const EdgeSet& seed_edges,
                                                std::size_t depth) const {
  EdgeSet result;
  std::vector<HyperedgeId> frontier;
  auto visit = [&](HyperedgeId e) {
    if (result.insert(e).second) frontier.push_back(e);
  };
  for (HyperedgeId e : seed_edges) {
    edge(e);
    visit(e);
  }
  for (EntityId v : seed_entities)
    for (HyperedgeId e : incident_edges(v)) visit(e);

  for (std::size_t hop = 0; hop < depth && !frontier.empty(); ++hop) {
    std::vector<HyperedgeId> current;
    current.swap(frontier);
    for (HyperedgeId e : current)
      for (HyperedgeId n : neighbors(e)) visit(n);
  }
  return result;
}

bool KnowledgeHypergraph::is_connected_path(const ReasoningPath& p) const {
  for (HyperedgeId e : p.edges) edge(e);
  for (std::size_t i = 1; i < p.edges.size(); ++i) {
    const Hyperedge& prev = edges_.at(p.edges[i - 1]);
    const Hyperedge& cur = edges_.at(p.edges[i]);
    bool shared = std::any_of(prev.entities.begin(), prev.entities.end(),
                              [&](EntityId v) { return cur.contains(v); });
    if (!shared) return false;
  }
  return true;
}

bool KnowledgeHypergraph::incidence_consistent() const {
  for (const auto& [id, e] : edges_)
    for (EntityId v : e.entities) {
      auto it = incidence_.find(v);
      if (it == incidence_.end() || !it->second.contains(id)) return false;
    }
  for (const auto& [v, inc] : incidence_) {
    if (!entities_.contains(v)) return false;
    for (HyperedgeId e : inc) {
      auto it = edges_.find(e);
      if (it == edges_.end() || !it->second.contains(v)) return false;
    }
  }
  return incidence_.size() == entities_.size();
}

// ---------------------------------------------------------------------------

HypergraphBuilder::HypergraphBuilder(const KnowledgeHypergraph& base) {
  for (const auto& [id, v] : base.entities()) {
    by_name_.emplace(v.name, entities_.size());
    entities_.push_back(v);
    next_entity_ = std::max(next_entity_, id.value + 1);
  }
  for (const auto& [id, e] : base.hyperedges()) {
    edges_.push_back(e);
    std::vector<EntityId> key = e.entities;
    std::sort(key.begin(), key.end());
    edge_keys_.emplace(e.name, std::move(key));
    next_edge_ = std::max(next_edge_, id.value + 1);
  }
}

EntityId HypergraphBuilder::add_entity(const std::string& name, const std::string& description) {
  if (name.empty()) throw DataError("entity name must not be empty");
  auto it = by_name_.find(name);
  if (it != by_name_.end()) {
    Entity& ent = entities_[it->second];
    if (!description.empty() && ent.description.find(description) == std::string::npos) {
      if (!ent.description.empty()) ent.description += '\n';
      ent.description += description;
    }
    return ent.id;
  }
  EntityId id{next_entity_++};
  by_name_.emplace(name, entities_.size());
  entities_.push_back(Entity{id, name, description, std::nullopt, {}});
  return id;
}

std::optional<HyperedgeId> HypergraphBuilder::add_edge(const std::string& name,
                                                       const std::vector<EntityId>& members,
                                                       std::optional<std::string> source_ref,
                                                       EdgeKind kind) {
  std::vector<EntityId> ordered;
  for (EntityId v : members)
    if (std::find(ordered.begin(), ordered.end(), v) == ordered.end()) ordered.push_back(v);
  if (ordered.empty()) throw DataError("hyperedge '" + name + "' has no entities");

  std::vector<EntityId> key = ordered;
  std::sort(key.begin(), key.end());
  if (!edge_keys_.emplace(name, key).second) return std::nullopt;

  HyperedgeId id{next_edge_++};
  edges_.push_back(Hyperedge{id, name, std::move(ordered), std::move(source_ref), kind});
  return id;
}

KnowledgeHypergraph HypergraphBuilder::freeze() && {
  return KnowledgeHypergraph::from_parts(std::move(entities_), std::move(edges_));
}

}  // namespace hgr
