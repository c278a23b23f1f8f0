#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hgr/hypergraph.hpp"

namespace hgr {

/// Dense embedding. Values are kept as float32, the precision of the index
/// files; similarity arithmetic happens in double.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<float> values) : values_(std::move(values)) {}

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const float> values() const noexcept { return values_; }
  double norm() const;

  /// Unit-length copy. Throws ZeroVectorError for a zero vector.
  EmbeddingVector normalized() const;

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  std::vector<float> values_;
};

/// Standard cosine, clamped to [-1, 1].
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

/// Slack applied when comparing a similarity against a threshold, so that a
/// cosine of two identical float vectors (1 +- a few ulp) passes θ = 1.
inline constexpr double kSimilaritySlack = 1e-9;

enum class IndexKind : std::uint8_t { entity_name = 0, entity_desc = 1, hyperedge_name = 2 };

const char* to_string(IndexKind kind) noexcept;
IndexKind index_kind_from_string(const std::string& s);

struct ScoredId {
  std::uint32_t id;
  double score;

  friend bool operator==(const ScoredId&, const ScoredId&) = default;
};

/// Exact brute-force cosine index. Rows are L2-normalized on insert and kept
/// sorted by id.
class VectorIndex {
 public:
  VectorIndex() = default;
  VectorIndex(IndexKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  IndexKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const std::string& source_hash() const noexcept { return source_hash_; }
  void set_source_hash(std::string h) { source_hash_ = std::move(h); }

  /// Rebuilds an index from rows that are already unit length (as read back
  /// from an index file). `ids` must be strictly ascending.
  static VectorIndex from_normalized_rows(IndexKind kind, std::size_t dim, std::vector<std::uint32_t> ids,
                                          std::vector<EmbeddingVector> rows, std::string source_hash);

  /// Inserts or replaces the row for `id`.
  void insert(std::uint32_t id, const EmbeddingVector& v);

  bool contains(std::uint32_t id) const;
  const EmbeddingVector* find(std::uint32_t id) const;
  std::span<const std::uint32_t> ids() const noexcept { return ids_; }
  const EmbeddingVector& row(std::size_t i) const { return rows_[i]; }

  /// Copy holding only the rows whose id is in `keep`.
  VectorIndex restricted(const std::set<std::uint32_t>& keep) const;

  friend bool operator==(const VectorIndex&, const VectorIndex&) = default;

 private:
  IndexKind kind_ = IndexKind::entity_name;
  std::size_t dim_ = 0;
  std::vector<std::uint32_t> ids_;
  std::vector<EmbeddingVector> rows_;
  std::string source_hash_;
};

/// Up to k entries with similarity >= θ, by descending score, ties by ascending id.
std::vector<ScoredId> top_k_above(const EmbeddingVector& query, const VectorIndex& idx, std::size_t k,
                                  double theta);

using Embedder = std::function<EmbeddingVector(const std::string& text)>;

/// Texts indexed for `kind`, keyed by entity or hyperedge id. Entities with an
/// empty description have no entity_desc row.
std::vector<std::pair<std::uint32_t, std::string>> index_source_texts(const KnowledgeHypergraph& g,
                                                                     IndexKind kind);

/// SHA-256 over the kind tag and the (id, text) pairs.
std::string index_source_hash(const KnowledgeHypergraph& g, IndexKind kind);

/// Embeds every item of `kind`. Embedder failures are rethrown as OracleError
/// naming the failing item.
VectorIndex build_index(const KnowledgeHypergraph& g, IndexKind kind, const Embedder& embed);

/// Writes the packed float32 file at `path` and the row-to-id sidecar at
/// `path` + ".json".
void save_index(const VectorIndex& idx, const std::filesystem::path& path);
VectorIndex load_index(const std::filesystem::path& path);

}  // namespace hgr
