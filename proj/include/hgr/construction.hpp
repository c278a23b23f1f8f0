#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgr/hypergraph.hpp"
#include "hgr/oracle/gateway.hpp"
#include "hgr/vector_index.hpp"

namespace hgr {

/// One pre-extracted n-ary fact, as produced by an upstream extraction step.
struct FactRecord {
  std::string edge_name;
  std::vector<std::string> entity_names;
  std::map<std::string, std::string> entity_descriptions;
  std::string chunk_id;
};

/// Throws MalformedRecordError carrying `line`.
FactRecord parse_fact_record(const nlohmann::json& doc, std::size_t line);

/// JSONL, one record per line; blank lines are skipped.
std::vector<FactRecord> read_fact_records(std::istream& in);
std::vector<FactRecord> read_fact_records(const std::filesystem::path& path);

/// Entities are deduplicated by exact name; one fact hyperedge per record,
/// duplicates (same name and entity set) dropped.
KnowledgeHypergraph ingest_facts(const std::vector<FactRecord>& records);

/// Unordered entity pair whose name similarity reached the threshold; a < b.
struct SimilarityEdge {
  EntityId a;
  EntityId b;
  double score = 0.0;

  friend bool operator==(const SimilarityEdge&, const SimilarityEdge&) = default;
};

std::vector<SimilarityEdge> similarity_candidates(const KnowledgeHypergraph& g, const VectorIndex& name_index,
                                                  double tau);

/// Connected components of the similarity graph with at least two members,
/// ordered by smallest member.
std::vector<EntitySet> similarity_components(const std::vector<SimilarityEdge>& edges);

struct AugmentStats {
  std::size_t batches = 0;
  std::size_t edges_added = 0;
  std::size_t failures = 0;
};

/// Asks the judge about each component (split into batches of at most
/// `batch_cap` members) and adds one synonym hyperedge per confirmed subset of
/// two or more entities. Judge failures skip the batch.
KnowledgeHypergraph augment_synonyms(const KnowledgeHypergraph& g, const std::vector<EntitySet>& components,
                                     oracle::OracleGateway& judge, std::size_t batch_cap = 20,
                                     AugmentStats* stats = nullptr);

/// Source text chunks keyed by chunk id.
class ChunkStore {
 public:
  ChunkStore() = default;

  /// Reads every `<chunk_id>.txt` file in `dir`.
  static ChunkStore from_directory(const std::filesystem::path& dir);
  /// JSONL with {chunk_id, text} per line.
  static ChunkStore from_jsonl(const std::filesystem::path& path);

  void put(std::string id, std::string text) { chunks_[std::move(id)] = std::move(text); }
  const std::string* find(const std::string& id) const;
  std::size_t size() const noexcept { return chunks_.size(); }

  void save_directory(const std::filesystem::path& dir) const;

 private:
  std::map<std::string, std::string> chunks_;
};

}  // namespace hgr
