#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hgr/ids.hpp"

namespace hgr {

enum class EdgeKind { fact, synonym };

const char* to_string(EdgeKind kind) noexcept;
EdgeKind edge_kind_from_string(const std::string& s);

/// Description of an entity that was folded into this one by synonym merging.
struct MergedAlias {
  EntityId id;
  std::string name;
  std::string description;

  friend bool operator==(const MergedAlias&, const MergedAlias&) = default;
};

struct Entity {
  EntityId id;
  std::string name;
  std::string description;
  std::optional<EntityId> canonical_of;
  std::vector<MergedAlias> aliases;

  friend bool operator==(const Entity&, const Entity&) = default;
};

/// An n-ary fact. `entities` keeps extraction order; no operation depends on it.
struct Hyperedge {
  HyperedgeId id;
  std::string name;
  std::vector<EntityId> entities;
  std::optional<std::string> source_ref;
  EdgeKind kind = EdgeKind::fact;

  bool contains(EntityId v) const;

  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

/// A connected sequence of hyperedges.
struct ReasoningPath {
  std::vector<HyperedgeId> edges;

  std::size_t length() const noexcept { return edges.size(); }
  bool empty() const noexcept { return edges.empty(); }
  HyperedgeId back() const { return edges.back(); }
  bool contains(HyperedgeId e) const;

  friend auto operator<=>(const ReasoningPath&, const ReasoningPath&) = default;
};

using EntitySet = std::set<EntityId>;
using EdgeSet = std::set<HyperedgeId>;

/// Frozen knowledge hypergraph. Instances are immutable once constructed and may
/// be shared across threads; build them with HypergraphBuilder or from_parts().
class KnowledgeHypergraph {
 public:
  KnowledgeHypergraph() = default;

  /// Validates the parts (references, duplicate members, synonym arity) and
  /// builds the incidence index.
  static KnowledgeHypergraph from_parts(std::vector<Entity> entities, std::vector<Hyperedge> edges);

  const std::map<EntityId, Entity>& entities() const noexcept { return entities_; }
  const std::map<HyperedgeId, Hyperedge>& hyperedges() const noexcept { return edges_; }
  const std::map<EntityId, EdgeSet>& incidence() const noexcept { return incidence_; }

  std::size_t entity_count() const noexcept { return entities_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return entities_.empty() && edges_.empty(); }

  bool has_entity(EntityId v) const { return entities_.contains(v); }
  bool has_edge(HyperedgeId e) const { return edges_.contains(e); }

  const Entity& entity(EntityId v) const;
  const Hyperedge& edge(HyperedgeId e) const;

  /// Exact-name lookup; returns the smallest id if several entities share a name.
  std::optional<EntityId> find_entity(const std::string& name) const;

  /// E(v): hyperedges containing v.
  const EdgeSet& incident_edges(EntityId v) const;

  /// Nbr(e): every other hyperedge sharing at least one entity with e.
  EdgeSet neighbors(HyperedgeId e) const;

  /// V(e) ∩ V(e') in ascending id order.
  std::vector<EntityId> overlap(HyperedgeId a, HyperedgeId b) const;

  KnowledgeHypergraph induced_subgraph(const EdgeSet& edge_set) const;

  /// Hop 0 is the seed edges plus every edge incident to a seed entity; each
  /// further hop adds the neighbors of the previous hop.
  EdgeSet k_hop_neighborhood(const EntitySet& seed_entities, const EdgeSet& seed_edges,
                             std::size_t depth) const;

  bool is_connected_path(const ReasoningPath& p) const;

  /// Checks v ∈ V(e) ⇔ e ∈ E(v) over the whole graph.
  bool incidence_consistent() const;

  friend bool operator==(const KnowledgeHypergraph&, const KnowledgeHypergraph&) = default;

 private:
  std::map<EntityId, Entity> entities_;
  std::map<HyperedgeId, Hyperedge> edges_;
  std::map<EntityId, EdgeSet> incidence_;
};

/// Append-only construction of a hypergraph. Entities are deduplicated by exact
/// name and duplicate edges (same name and same entity set) are dropped.
class HypergraphBuilder {
 public:
  HypergraphBuilder() = default;

  /// Starts from an existing graph, keeping all of its ids.
  explicit HypergraphBuilder(const KnowledgeHypergraph& base);

  /// Returns the id of the entity named `name`, creating it if needed. A
  /// non-empty description not yet recorded for the entity is appended.
  EntityId add_entity(const std::string& name, const std::string& description = {});

  /// Adds a hyperedge over already-added entities. Returns nullopt when an
  /// identical edge exists. Repeated entities in `members` are collapsed.
  std::optional<HyperedgeId> add_edge(const std::string& name, const std::vector<EntityId>& members,
                                      std::optional<std::string> source_ref,
                                      EdgeKind kind = EdgeKind::fact);

  std::size_t entity_count() const noexcept { return entities_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  KnowledgeHypergraph freeze() &&;

 private:
  std::vector<Entity> entities_;
  std::vector<Hyperedge> edges_;
  std::map<std::string, std::size_t> by_name_;
  std::set<std::pair<std::string, std::vector<EntityId>>> edge_keys_;
  std::uint32_t next_entity_ = 0;
  std::uint32_t next_edge_ = 0;
};

}  // namespace hgr
