#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "hgr/hypergraph.hpp"

namespace hgr {

inline constexpr int kGraphFormatVersion = 1;

/// Versioned document holding the entity table, hyperedge table and
/// incidence index.
nlohmann::json graph_to_json(const KnowledgeHypergraph& g);

/// Rebuilds the graph and rejects documents whose stored incidence index does
/// not match edge membership.
KnowledgeHypergraph graph_from_json(const nlohmann::json& doc);

/// Files ending in `.bin` are written as CBOR, anything else as JSON text.
void save_graph(const KnowledgeHypergraph& g, const std::filesystem::path& path);
KnowledgeHypergraph load_graph(const std::filesystem::path& path);

/// SHA-256 over the canonical JSON form.
std::string graph_digest(const KnowledgeHypergraph& g);

}  // namespace hgr
