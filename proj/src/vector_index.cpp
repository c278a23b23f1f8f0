#include "hgr/vector_index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hgr/digest.hpp"
#include "hgr/errors.hpp"

namespace hgr {

double EmbeddingVector::norm() const {
  double s = 0.0;
  for (float x : values_) s += static_cast<double>(x) * x;
  return std::sqrt(s);
}

EmbeddingVector EmbeddingVector::normalized() const {
  double n = norm();
  if (!(n > 0.0)) throw ZeroVectorError("cannot normalize a zero vector");
  std::vector<float> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = static_cast<float>(values_[i] / n);
  return EmbeddingVector(std::move(out));
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatchError("cosine over dims " + std::to_string(a.dim()) + " and " +
                                 std::to_string(b.dim()));
  auto av = a.values();
  auto bv = b.values();
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) {
    dot += static_cast<double>(av[i]) * bv[i];
    na += static_cast<double>(av[i]) * av[i];
    nb += static_cast<double>(bv[i]) * bv[i];
  }
  if (!(na > 0.0) || !(nb > 0.0)) throw ZeroVectorError("cosine of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

const char* to_string(IndexKind kind) noexcept {
  switch (kind) {
    case IndexKind::entity_name: return "entity_name";
    case IndexKind::entity_desc: return "entity_desc";
    case IndexKind::hyperedge_name: return "hyperedge_name";
  }
  return "?";
}

IndexKind index_kind_from_string(const std::string& s) {
  if (s == "entity_name") return IndexKind::entity_name;
  if (s == "entity_desc") return IndexKind::entity_desc;
  if (s == "hyperedge_name") return IndexKind::hyperedge_name;
  throw DataError("unknown index kind '" + s + "'");
}

VectorIndex VectorIndex::from_normalized_rows(IndexKind kind, std::size_t dim,
                                              std::vector<std::uint32_t> ids,
                                              std::vector<EmbeddingVector> rows, std::string source_hash) {
  if (ids.size() != rows.size()) throw DataError("index id/row count mismatch");
  if (!std::is_sorted(ids.begin(), ids.end()) ||
      std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw DataError("index ids must be strictly ascending");
  for (const auto& r : rows)
    if (r.dim() != dim) throw DimensionMismatchError("index row has the wrong dimension");
  VectorIndex idx(kind, dim);
  idx.ids_ = std::move(ids);
  idx.rows_ = std::move(rows);
  idx.source_hash_ = std::move(source_hash);
  return idx;
}

void VectorIndex::insert(std::uint32_t id, const EmbeddingVector& v) {
  if (dim_ == 0) dim_ = v.dim();
  if (v.dim() != dim_)
    throw DimensionMismatchError("index of dim " + std::to_string(dim_) + " got a vector of dim " +
                                 std::to_string(v.dim()));
  EmbeddingVector unit = v.normalized();
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  auto pos = static_cast<std::size_t>(it - ids_.begin());
  if (it != ids_.end() && *it == id) {
    rows_[pos] = std::move(unit);
    return;
  }
  ids_.insert(it, id);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(unit));
}

bool VectorIndex::contains(std::uint32_t id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

const EmbeddingVector* VectorIndex::find(std::uint32_t id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return nullptr;
  return &rows_[static_cast<std::size_t>(it - ids_.begin())];
}

VectorIndex VectorIndex::restricted(const std::set<std::uint32_t>& keep) const {
  VectorIndex out(kind_, dim_);
  out.source_hash_ = source_hash_;
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (keep.contains(ids_[i])) {
      out.ids_.push_back(ids_[i]);
      out.rows_.push_back(rows_[i]);
    }
  return out;
}

std::vector<ScoredId> top_k_above(const EmbeddingVector& query, const VectorIndex& idx, std::size_t k,
                                  double theta) {
  std::vector<ScoredId> hits;
  if (k == 0 || idx.empty()) return hits;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    double s = cosine_similarity(query, idx.row(i));
    if (s >= theta - kSimilaritySlack) hits.push_back({idx.ids()[i], s});
  }
  std::sort(hits.begin(), hits.end(), [](const ScoredId& a, const ScoredId& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  if (hits.size() > k) hits.resize(k);
  return hits;
}

std::vector<std::pair<std::uint32_t, std::string>> index_source_texts(const KnowledgeHypergraph& g,
                                                                     IndexKind kind) {
  std::vector<std::pair<std::uint32_t, std::string>> out;
  switch (kind) {
    case IndexKind::entity_name:
      for (const auto& [id, v] : g.entities()) out.emplace_back(id.value, v.name);
      break;
    case IndexKind::entity_desc:
      for (const auto& [id, v] : g.entities())
        if (!v.description.empty()) out.emplace_back(id.value, v.description);
      break;
    case IndexKind::hyperedge_name:
      for (const auto& [id, e] : g.hyperedges()) out.emplace_back(id.value, e.name);
      break;
  }
  return out;
}

std::string index_source_hash(const KnowledgeHypergraph& g, IndexKind kind) {
  std::string buf = to_string(kind);
  for (const auto& [id, text] : index_source_texts(g, kind)) {
    buf += '\x1f';
    buf += std::to_string(id);
    buf += '\x1e';
    buf += text;
  }
  return sha256_hex(buf);
}

VectorIndex build_index(const KnowledgeHypergraph& g, IndexKind kind, const Embedder& embed) {
  VectorIndex idx(kind, 0);
  for (const auto& [id, text] : index_source_texts(g, kind)) {
    try {
      idx.insert(id, embed(text));
    } catch (const std::exception& ex) {
      throw OracleError(std::string("embedding failed for ") + to_string(kind) + " item " +
                        std::to_string(id) + ": " + ex.what());
    }
  }
  idx.set_source_hash(index_source_hash(g, kind));
  return idx;
}

// Index file layout (little-endian):
//   magic "HGRVIDX1" | u8 kind | u32 dim | u32 count | 64 bytes hex source hash
//   | count * dim float32
namespace {

constexpr char kMagic[8] = {'H', 'G', 'R', 'V', 'I', 'D', 'X', '1'};

static_assert(std::endian::native == std::endian::little, "index files assume a little-endian host");

void put_u32(std::ofstream& out, std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); }

std::uint32_t get_u32(std::ifstream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

}  // namespace

void save_index(const VectorIndex& idx, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write index file " + path.string());
  out.write(kMagic, sizeof kMagic);
  auto kind = static_cast<std::uint8_t>(idx.kind());
  out.write(reinterpret_cast<const char*>(&kind), 1);
  put_u32(out, static_cast<std::uint32_t>(idx.dim()));
  put_u32(out, static_cast<std::uint32_t>(idx.size()));
  std::string hash = idx.source_hash();
  hash.resize(64, '0');
  out.write(hash.data(), 64);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto vals = idx.row(i).values();
    out.write(reinterpret_cast<const char*>(vals.data()), static_cast<std::streamsize>(vals.size() * 4));
  }
  if (!out) throw DataError("failed writing index file " + path.string());

  nlohmann::json side = {{"kind", to_string(idx.kind())},
                         {"dim", idx.dim()},
                         {"source_hash", idx.source_hash()},
                         {"rows", std::vector<std::uint32_t>(idx.ids().begin(), idx.ids().end())}};
  std::ofstream sout(sidecar_path(path));
  if (!sout) throw DataError("cannot write index sidecar for " + path.string());
  sout << side.dump(1) << '\n';
}

VectorIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open index file " + path.string());
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) throw DataError(path.string() + " is not an index file");
  std::uint8_t kind = 0;
  in.read(reinterpret_cast<char*>(&kind), 1);
  if (kind > 2) throw DataError("unknown index kind in " + path.string());
  std::uint32_t dim = get_u32(in);
  std::uint32_t count = get_u32(in);
  std::string hash(64, '\0');
  in.read(hash.data(), 64);
  std::vector<std::vector<float>> rows(count, std::vector<float>(dim));
  for (auto& r : rows) in.read(reinterpret_cast<char*>(r.data()), static_cast<std::streamsize>(dim) * 4);
  if (!in) throw DataError("truncated index file " + path.string());

  std::ifstream sin(sidecar_path(path));
  if (!sin) throw DataError("missing index sidecar " + sidecar_path(path).string());
  nlohmann::json side;
  try {
    side = nlohmann::json::parse(sin);
  } catch (const nlohmann::json::exception& ex) {
    throw DataError("cannot parse index sidecar: " + std::string(ex.what()));
  }
  auto ids = side.at("rows").get<std::vector<std::uint32_t>>();
  if (ids.size() != count) throw DataError("index sidecar row count mismatch for " + path.string());

  std::vector<EmbeddingVector> vecs;
  vecs.reserve(count);
  for (auto& r : rows) vecs.emplace_back(std::move(r));
  return VectorIndex::from_normalized_rows(static_cast<IndexKind>(kind), dim, std::move(ids), std::move(vecs),
                                           std::move(hash));
}

}  // namespace hgr
