#include "hgr/graph_io.hpp"

#include <fstream>
#include <iterator>

#include "hgr/digest.hpp"
#include "hgr/errors.hpp"

namespace hgr {

using nlohmann::json;

json graph_to_json(const KnowledgeHypergraph& g) {
  json entities = json::array();
  for (const auto& [id, v] : g.entities()) {
    json e = {{"id", id.value}, {"name", v.name}, {"description", v.description}};
    if (v.canonical_of) e["canonical_of"] = v.canonical_of->value;
    if (!v.aliases.empty()) {
      json aliases = json::array();
      for (const auto& a : v.aliases)
        aliases.push_back({{"id", a.id.value}, {"name", a.name}, {"description", a.description}});
      e["aliases"] = std::move(aliases);
    }
    entities.push_back(std::move(e));
  }
  json edges = json::array();
  for (const auto& [id, e] : g.hyperedges()) {
    json members = json::array();
    for (EntityId v : e.entities) members.push_back(v.value);
    json je = {{"id", id.value}, {"name", e.name}, {"entities", std::move(members)},
               {"kind", to_string(e.kind)}};
    je["source_ref"] = e.source_ref ? json(*e.source_ref) : json(nullptr);
    edges.push_back(std::move(je));
  }
  json incidence = json::object();
  for (const auto& [v, inc] : g.incidence()) {
    json list = json::array();
    for (HyperedgeId e : inc) list.push_back(e.value);
    incidence[std::to_string(v.value)] = std::move(list);
  }
  return {{"format", "hgr-graph"},
          {"version", kGraphFormatVersion},
          {"entities", std::move(entities)},
          {"hyperedges", std::move(edges)},
          {"incidence", std::move(incidence)}};
}

KnowledgeHypergraph graph_from_json(const json& doc) {
  try {
    if (doc.value("format", "") != "hgr-graph") throw DataError("not a graph document");
    int version = doc.at("version").get<int>();
    if (version != kGraphFormatVersion)
      throw DataError("unsupported graph format version " + std::to_string(version));

    std::vector<Entity> entities;
    for (const auto& je : doc.at("entities")) {
      Entity v;
      v.id = EntityId{je.at("id").get<std::uint32_t>()};
      v.name = je.at("name").get<std::string>();
      v.description = je.at("description").get<std::string>();
      if (je.contains("canonical_of"))
        v.canonical_of = EntityId{je.at("canonical_of").get<std::uint32_t>()};
      if (je.contains("aliases"))
        for (const auto& ja : je.at("aliases"))
          v.aliases.push_back({EntityId{ja.at("id").get<std::uint32_t>()},
                               ja.at("name").get<std::string>(),
                               ja.at("description").get<std::string>()});
      entities.push_back(std::move(v));
    }
    std::vector<Hyperedge> edges;
    for (const auto& je : doc.at("hyperedges")) {
      Hyperedge e;
      e.id = HyperedgeId{je.at("id").get<std::uint32_t>()};
      e.name = je.at("name").get<std::string>();
      for (const auto& m : je.at("entities")) e.entities.push_back(EntityId{m.get<std::uint32_t>()});
      if (!je.at("source_ref").is_null()) e.source_ref = je.at("source_ref").get<std::string>();
      e.kind = edge_kind_from_string(je.at("kind").get<std::string>());
      edges.push_back(std::move(e));
    }
    KnowledgeHypergraph g = KnowledgeHypergraph::from_parts(std::move(entities), std::move(edges));

    const json& stored = doc.at("incidence");
    if (stored.size() != g.incidence().size()) throw DataError("incidence index size mismatch");
    for (const auto& [v, inc] : g.incidence()) {
      auto key = std::to_string(v.value);
      if (!stored.contains(key)) throw DataError("incidence index misses entity " + key);
      EdgeSet listed;
      for (const auto& x : stored.at(key)) listed.insert(HyperedgeId{x.get<std::uint32_t>()});
      if (listed != inc) throw DataError("incidence index disagrees with edges for entity " + key);
    }
    return g;
  } catch (const json::exception& ex) {
    throw DataError(std::string("malformed graph document: ") + ex.what());
  }
}

namespace {
bool is_binary_path(const std::filesystem::path& path) { return path.extension() == ".bin"; }
}  // namespace

void save_graph(const KnowledgeHypergraph& g, const std::filesystem::path& path) {
  json doc = graph_to_json(g);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write graph file " + path.string());
  if (is_binary_path(path)) {
    auto bytes = json::to_cbor(doc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  } else {
    out << doc.dump(1) << '\n';
  }
  if (!out) throw DataError("failed writing graph file " + path.string());
}

KnowledgeHypergraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open graph file " + path.string());
  try {
    if (is_binary_path(path)) {
      std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      return graph_from_json(json::from_cbor(bytes));
    }
    return graph_from_json(json::parse(in));
  } catch (const json::exception& ex) {
    throw DataError("cannot parse graph file " + path.string() + ": " + ex.what());
  }
}

std::string graph_digest(const KnowledgeHypergraph& g) { return sha256_hex(graph_to_json(g).dump()); }

}  // namespace hgr
