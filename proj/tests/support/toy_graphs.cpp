#include "toy_graphs.hpp"

#include <atomic>
#include <fstream>

#include <unistd.h>

#include "hgr/construction.hpp"
#include "hgr/graph_io.hpp"
#include "hgr/oracle/calls.hpp"
#include "hgr/oracle/mock_backend.hpp"

#ifndef HGR_FIXTURE_DIR
#define HGR_FIXTURE_DIR "tests/fixtures"
#endif

namespace fs = std::filesystem;

namespace hgr_test {

hgr::EntityId t1_entity(char name) { return hgr::EntityId(static_cast<std::uint32_t>(name - 'A')); }
hgr::HyperedgeId t1_edge(int n) { return hgr::HyperedgeId(static_cast<std::uint32_t>(n - 1)); }

hgr::KnowledgeHypergraph toy_t1() {
  std::vector<hgr::Entity> ents;
  for (char c = 'A'; c <= 'E'; ++c) ents.push_back({t1_entity(c), std::string(1, c), "", {}, {}});
  auto edge = [](int n, std::vector<char> members) {
    hgr::Hyperedge e;
    e.id = t1_edge(n);
    e.name = "e" + std::to_string(n);
    for (char c : members) e.entities.push_back(t1_entity(c));
    return e;
  };
  return hgr::KnowledgeHypergraph::from_parts(
      std::move(ents), {edge(1, {'A', 'B'}), edge(2, {'B', 'C', 'D'}), edge(3, {'D', 'E'}), edge(4, {'A', 'E'})});
}

hgr::KnowledgeHypergraph graph_from_sets(std::size_t n, const std::vector<std::vector<std::uint32_t>>& edges) {
  std::vector<hgr::Entity> ents;
  for (std::uint32_t i = 0; i < n; ++i) ents.push_back({hgr::EntityId(i), "v" + std::to_string(i), "", {}, {}});
  std::vector<hgr::Hyperedge> es;
  for (std::uint32_t j = 0; j < edges.size(); ++j) {
    hgr::Hyperedge e;
    e.id = hgr::HyperedgeId(j);
    e.name = "f" + std::to_string(j);
    for (auto v : edges[j]) e.entities.push_back(hgr::EntityId(v));
    es.push_back(std::move(e));
  }
  return hgr::KnowledgeHypergraph::from_parts(std::move(ents), std::move(es));
}

fs::path fixture_path(const std::string& rel) { return fs::path(HGR_FIXTURE_DIR) / rel; }

fs::path scratch_dir(const std::string& name) {
  static std::atomic<int> counter{0};
  fs::path dir = fs::temp_directory_path() /
                 ("hgr-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::unique_ptr<hgr::oracle::OracleGateway> mock_gateway(nlohmann::json fixtures, std::uint64_t seed) {
  auto backend = std::make_unique<hgr::oracle::MockBackend>(hgr::oracle::MockFixtures(std::move(fixtures)), seed);
  return std::make_unique<hgr::oracle::OracleGateway>(std::move(backend));
}

std::unique_ptr<hgr::oracle::OracleGateway> mock_gateway_from_file(const fs::path& fixtures) {
  auto backend = std::make_unique<hgr::oracle::MockBackend>(hgr::oracle::MockFixtures::load(fixtures));
  return std::make_unique<hgr::oracle::OracleGateway>(std::move(backend));
}

hgr::Workspace workspace_from_graph(hgr::KnowledgeHypergraph g, hgr::oracle::OracleGateway& gw) {
  hgr::Workspace ws;
  hgr::oracle::CachedEmbedder embed(gw, std::string(hgr::oracle::site::kEmbedIndex));
  ws.indexes.entity_name = hgr::build_index(g, hgr::IndexKind::entity_name, embed.as_function());
  ws.indexes.entity_desc = hgr::build_index(g, hgr::IndexKind::entity_desc, embed.as_function());
  ws.indexes.hyperedge_name = hgr::build_index(g, hgr::IndexKind::hyperedge_name, embed.as_function());
  ws.graph_hash = hgr::graph_digest(g);
  ws.graph = std::move(g);
  return ws;
}

hgr::Workspace fixture_workspace(const fs::path& dir, const hgr::RunConfig& cfg, hgr::oracle::OracleGateway& gw) {
  auto g = hgr::ingest_facts(hgr::read_fact_records(dir / "facts.jsonl"));
  g = hgr::augment_graph(g, cfg, gw);
  hgr::Workspace ws = workspace_from_graph(std::move(g), gw);
  if (fs::is_directory(dir / "chunks")) ws.chunks = hgr::ChunkStore::from_directory(dir / "chunks");
  return ws;
}

}  // namespace hgr_test
