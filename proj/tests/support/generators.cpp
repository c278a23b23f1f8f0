#include "generators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace hgr_test {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

hgr::KnowledgeHypergraph random_hypergraph(Rng& rng, const RandomGraphSpec& spec) {
  std::size_t n = uniform(rng, 1, spec.max_entities);
  std::size_t m = uniform(rng, 1, spec.max_edges);
  std::vector<hgr::Entity> entities;
  for (std::uint32_t i = 0; i < n; ++i) entities.push_back({hgr::EntityId(i), "v" + std::to_string(i), "", {}, {}});
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<hgr::Hyperedge> edges;
  for (std::uint32_t j = 0; j < m; ++j) {
    std::size_t arity = uniform(rng, 1, std::min(spec.max_arity, n));
    std::shuffle(pool.begin(), pool.end(), rng);
    hgr::Hyperedge e;
    e.id = hgr::HyperedgeId(j);
    e.name = "f" + std::to_string(j);
    for (std::size_t k = 0; k < arity; ++k) e.entities.push_back(hgr::EntityId(pool[k]));
    edges.push_back(std::move(e));
  }
  return hgr::KnowledgeHypergraph::from_parts(std::move(entities), std::move(edges));
}

std::set<hgr::Dependency> random_dag(Rng& rng, int n, double density) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution keep(density);
  std::set<hgr::Dependency> deps;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (keep(rng)) deps.emplace(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  return deps;
}

std::set<hgr::Dependency> upper_triangular_dag(int n, std::uint64_t mask) {
  std::set<hgr::Dependency> deps;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if (mask & (std::uint64_t{1} << bit)) deps.emplace(i, j);
  return deps;
}

std::set<hgr::Dependency> relabel(const std::set<hgr::Dependency>& deps, const std::vector<int>& perm) {
  std::set<hgr::Dependency> out;
  for (auto [i, j] : deps) out.emplace(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  return out;
}

std::vector<hgr::SimilarityEdge> random_similarity_edges(Rng& rng, std::size_t nodes, std::size_t edges) {
  std::vector<hgr::SimilarityEdge> out;
  if (nodes < 2) return out;
  for (std::size_t k = 0; k < edges; ++k) {
    auto a = static_cast<std::uint32_t>(uniform(rng, 0, nodes - 1));
    auto b = static_cast<std::uint32_t>(uniform(rng, 0, nodes - 2));
    if (b >= a) ++b;
    if (a > b) std::swap(a, b);
    out.push_back({hgr::EntityId(a), hgr::EntityId(b), 0.9});
  }
  return out;
}

}  // namespace hgr_test
