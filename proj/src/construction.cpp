#include "hgr/construction.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "disjoint_set.hpp"
#include "hgr/errors.hpp"
#include "hgr/oracle/calls.hpp"
#include "hgr/text_util.hpp"

namespace hgr {

using nlohmann::json;

FactRecord parse_fact_record(const json& doc, std::size_t line) {
  if (!doc.is_object()) throw MalformedRecordError(line, "record must be a JSON object");
  FactRecord r;
  try {
    r.edge_name = trim(doc.at("edge_name").get<std::string>());
    for (const auto& n : doc.at("entity_names")) r.entity_names.push_back(trim(n.get<std::string>()));
    if (doc.contains("entity_descriptions"))
      for (const auto& [name, desc] : doc.at("entity_descriptions").items())
        r.entity_descriptions[trim(name)] = desc.get<std::string>();
    if (doc.contains("chunk_id") && !doc.at("chunk_id").is_null()) r.chunk_id = doc.at("chunk_id").get<std::string>();
  } catch (const json::exception& ex) {
    throw MalformedRecordError(line, ex.what());
  }
  if (r.edge_name.empty()) throw MalformedRecordError(line, "edge_name is blank");
  if (r.entity_names.empty()) throw MalformedRecordError(line, "entity_names is empty");
  for (const auto& n : r.entity_names)
    if (n.empty()) throw MalformedRecordError(line, "blank entity name");
  return r;
}

std::vector<FactRecord> read_fact_records(std::istream& in) {
  std::vector<FactRecord> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw MalformedRecordError(line, "invalid JSON");
    out.push_back(parse_fact_record(doc, line));
  }
  return out;
}

std::vector<FactRecord> read_fact_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open fact file " + path.string());
  return read_fact_records(in);
}

KnowledgeHypergraph ingest_facts(const std::vector<FactRecord>& records) {
  HypergraphBuilder builder;
  for (const auto& r : records) {
    std::vector<EntityId> members;
    for (const auto& name : r.entity_names) {
      auto it = r.entity_descriptions.find(name);
      members.push_back(builder.add_entity(name, it == r.entity_descriptions.end() ? "" : it->second));
    }
    builder.add_edge(r.edge_name, members,
                     r.chunk_id.empty() ? std::nullopt : std::optional<std::string>(r.chunk_id));
  }
  return std::move(builder).freeze();
}

std::vector<SimilarityEdge> similarity_candidates(const KnowledgeHypergraph& g, const VectorIndex& name_index,
                                                  double tau) {
  std::vector<SimilarityEdge> out;
  auto ids = name_index.ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!g.has_entity(EntityId{ids[i]})) continue;
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (!g.has_entity(EntityId{ids[j]})) continue;
      double s = cosine_similarity(name_index.row(i), name_index.row(j));
      if (s >= tau - kSimilaritySlack) out.push_back({EntityId{ids[i]}, EntityId{ids[j]}, s});
    }
  }
  return out;
}

std::vector<EntitySet> similarity_components(const std::vector<SimilarityEdge>& edges) {
  detail::DisjointSet<EntityId> ds;
  for (const auto& e : edges)
    if (e.a != e.b) ds.unite(e.a, e.b);
  std::vector<EntitySet> out;
  for (auto& [root, members] : ds.groups())
    if (members.size() >= 2) out.emplace_back(members.begin(), members.end());
  std::sort(out.begin(), out.end(), [](const EntitySet& a, const EntitySet& b) { return *a.begin() < *b.begin(); });
  return out;
}

KnowledgeHypergraph augment_synonyms(const KnowledgeHypergraph& g, const std::vector<EntitySet>& components,
                                     oracle::OracleGateway& judge, std::size_t batch_cap, AugmentStats* stats) {
  AugmentStats local;
  AugmentStats& st = stats ? *stats : local;
  if (batch_cap < 2) batch_cap = 2;
  HypergraphBuilder builder(g);
  for (const auto& comp : components) {
    std::vector<EntityId> members(comp.begin(), comp.end());
    for (std::size_t start = 0; start < members.size(); start += batch_cap) {
      std::vector<EntityId> batch(members.begin() + static_cast<std::ptrdiff_t>(start),
                                  members.begin() + static_cast<std::ptrdiff_t>(std::min(members.size(), start + batch_cap)));
      if (batch.size() < 2) continue;
      std::vector<oracle::SynonymMember> shown;
      for (EntityId v : batch) shown.push_back({g.entity(v).name, g.entity(v).description});
      ++st.batches;
      std::optional<std::vector<std::size_t>> confirmed;
      try {
        confirmed = oracle::judge_synonyms(judge, shown, oracle::site::kConstruction);
      } catch (const OracleError& ex) {
        ++st.failures;
        spdlog::warn("synonym judge failed on a component of {} entities: {}", batch.size(), ex.what());
        continue;
      }
      if (!confirmed) continue;
      std::vector<EntityId> syn;
      for (std::size_t i : *confirmed)
        if (i < batch.size() && std::find(syn.begin(), syn.end(), batch[i]) == syn.end()) syn.push_back(batch[i]);
      if (syn.size() < 2) continue;
      std::sort(syn.begin(), syn.end());
      std::string name = "synonyms:";
      for (std::size_t i = 0; i < syn.size(); ++i) name += (i ? " | " : " ") + g.entity(syn[i]).name;
      if (builder.add_edge(name, syn, std::nullopt, EdgeKind::synonym)) ++st.edges_added;
    }
  }
  return std::move(builder).freeze();
}

const std::string* ChunkStore::find(const std::string& id) const {
  auto it = chunks_.find(id);
  return it == chunks_.end() ? nullptr : &it->second;
}

ChunkStore ChunkStore::from_directory(const std::filesystem::path& dir) {
  ChunkStore store;
  if (!std::filesystem::is_directory(dir)) return store;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    store.put(entry.path().stem().string(), trim(ss.str()));
  }
  return store;
}

ChunkStore ChunkStore::from_jsonl(const std::filesystem::path& path) {
  ChunkStore store;
  std::ifstream in(path);
  if (!in) throw DataError("cannot open chunk file " + path.string());
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("chunk_id") || !doc.contains("text"))
      throw MalformedRecordError(line, "chunk record needs chunk_id and text");
    store.put(doc["chunk_id"].get<std::string>(), doc["text"].get<std::string>());
  }
  return store;
}

void ChunkStore::save_directory(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& [id, text] : chunks_) {
    std::ofstream out(dir / (id + ".txt"));
    if (!out) throw DataError("cannot write chunk " + id);
    out << text << '\n';
  }
}

}  // namespace hgr
