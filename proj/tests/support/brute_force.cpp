#include "brute_force.hpp"

#include <algorithm>
#include <deque>

namespace hgr_test {

using hgr::EntityId;
using hgr::HyperedgeId;

bool shares_entity(const KnowledgeHypergraph& g, HyperedgeId a, HyperedgeId b) {
  for (EntityId x : g.edge(a).entities)
    for (EntityId y : g.edge(b).entities)
      if (x == y) return true;
  return false;
}

EdgeSet bf_neighbors(const KnowledgeHypergraph& g, HyperedgeId e) {
  EdgeSet out;
  for (const auto& [id, _] : g.hyperedges())
    if (id != e && shares_entity(g, id, e)) out.insert(id);
  return out;
}

EdgeSet bf_k_hop(const KnowledgeHypergraph& g, const EntitySet& seed_entities, const EdgeSet& seed_edges,
                 std::size_t depth) {
  EdgeSet cur = seed_edges;
  for (const auto& [id, edge] : g.hyperedges())
    for (EntityId v : edge.entities)
      if (seed_entities.contains(v)) cur.insert(id);
  for (std::size_t hop = 0; hop < depth; ++hop) {
    EdgeSet next = cur;
    for (HyperedgeId a : cur)
      for (const auto& [b, _] : g.hyperedges())
        if (shares_entity(g, a, b)) next.insert(b);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

bool bf_connected(const KnowledgeHypergraph& g, const hgr::ReasoningPath& p) {
  for (std::size_t i = 1; i < p.edges.size(); ++i)
    if (!shares_entity(g, p.edges[i - 1], p.edges[i])) return false;
  return !p.edges.empty();
}

std::vector<EntitySet> bf_components(const std::vector<hgr::SimilarityEdge>& edges) {
  std::vector<EntityId> nodes;
  for (const auto& e : edges) {
    nodes.push_back(e.a);
    nodes.push_back(e.b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto index = [&](EntityId v) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
  };
  std::size_t n = nodes.size();
  Reach r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto& e : edges) r[index(e.a)][index(e.b)] = r[index(e.b)][index(e.a)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  std::set<EntitySet> groups;
  for (std::size_t i = 0; i < n; ++i) {
    EntitySet s;
    for (std::size_t j = 0; j < n; ++j)
      if (r[i][j]) s.insert(nodes[j]);
    if (s.size() >= 2) groups.insert(s);
  }
  std::vector<EntitySet> out(groups.begin(), groups.end());
  std::sort(out.begin(), out.end(), [](const EntitySet& a, const EntitySet& b) { return *a.begin() < *b.begin(); });
  return out;
}

Reach bf_closure(int n, const std::set<Dependency>& deps) {
  Reach r(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (auto [i, j] : deps) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
  for (std::size_t k = 0; k < r.size(); ++k)
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < r.size(); ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

std::set<Dependency> bf_transitive_reduction(int n, const std::set<Dependency>& deps) {
  std::set<Dependency> out;
  for (const auto& d : deps) {
    std::set<Dependency> without = deps;
    without.erase(d);
    if (!bf_closure(n, without)[static_cast<std::size_t>(d.first)][static_cast<std::size_t>(d.second)]) out.insert(d);
  }
  return out;
}

std::map<int, int> bf_levels(int n, const std::set<Dependency>& deps) {
  std::map<int, int> level;
  for (int v = 0; v < n; ++v) level[v] = 0;
  // n rounds of relaxation settle every longest path in a DAG.
  for (int round = 0; round < n; ++round)
    for (auto [i, j] : deps) level[j] = std::max(level[j], level[i] + 1);
  return level;
}

std::map<HyperedgeId, std::size_t> bf_edge_distances(const KnowledgeHypergraph& g, const EdgeSet& seeds) {
  std::map<HyperedgeId, std::size_t> dist;
  std::deque<HyperedgeId> queue;
  for (HyperedgeId s : seeds) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    HyperedgeId e = queue.front();
    queue.pop_front();
    for (const auto& [n, _] : g.hyperedges())
      if (n != e && !dist.contains(n) && shares_entity(g, e, n)) {
        dist[n] = dist[e] + 1;
        queue.push_back(n);
      }
  }
  return dist;
}

EntitySet bf_path_entities(const KnowledgeHypergraph& g, const hgr::ReasoningPath& p) {
  EntitySet out;
  for (HyperedgeId e : p.edges)
    for (EntityId v : g.edge(e).entities) out.insert(v);
  return out;
}

}  // namespace hgr_test
