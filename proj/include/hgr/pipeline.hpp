#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgr/anchoring.hpp"
#include "hgr/config.hpp"
#include "hgr/construction.hpp"
#include "hgr/evaluation.hpp"
#include "hgr/generation.hpp"
#include "hgr/oracle/gateway.hpp"
#include "hgr/planning.hpp"
#include "hgr/reasoning.hpp"

namespace hgr {

/// Artifact layout of a run directory.
struct RunPaths {
  std::filesystem::path dir;

  std::filesystem::path graph() const { return dir / "graph.bin"; }
  std::filesystem::path chunks() const { return dir / "chunks"; }
  std::filesystem::path indexes() const { return dir / "indexes"; }
  std::filesystem::path index(IndexKind kind) const { return indexes() / (std::string(to_string(kind)) + ".idx"); }
  std::filesystem::path manifest() const { return dir / "manifest.json"; }
  std::filesystem::path trace() const { return dir / "trace.jsonl"; }
  std::filesystem::path transcript() const { return dir / "transcript.jsonl"; }
  std::filesystem::path report_json() const { return dir / "report.json"; }
  std::filesystem::path report_csv() const { return dir / "report.csv"; }
};

/// Graph, indexes and chunks ready for answering questions.
struct Workspace {
  KnowledgeHypergraph graph;
  GraphIndexes indexes;
  ChunkStore chunks;
  std::string graph_hash;
};

/// Throws DataError naming the build step that produces a missing or stale
/// artifact.
Workspace load_workspace(const RunPaths& paths);

std::unique_ptr<oracle::OracleGateway> make_gateway(const BackendConfig& cfg);

/// Ingests facts (and optionally chunks, a directory or a JSONL file) into the
/// run directory.
KnowledgeHypergraph build_graph_artifacts(const RunPaths& paths, const std::filesystem::path& facts,
                                          const std::optional<std::filesystem::path>& chunks);

/// Adds synonym hyperedges to the stored graph.
KnowledgeHypergraph augment_graph(const KnowledgeHypergraph& g, const RunConfig& cfg, oracle::OracleGateway& gw,
                                  AugmentStats* stats = nullptr);

/// Builds and stores the three similarity indexes.
GraphIndexes build_index_artifacts(const RunPaths& paths, const KnowledgeHypergraph& g, oracle::OracleGateway& gw);

struct QueryResult {
  std::string question;
  std::string answer;
  bool no_evidence = false;
  bool anchors_relaxed = false;
  AnchorSet anchors;
  std::size_t subgraph_entities = 0;
  std::size_t subgraph_edges = 0;
  std::string plan_context;
  bool plan_fallback = false;
  std::vector<ReasoningDAG> initial;
  std::vector<ReasoningDAG> completed;
  std::vector<CandidateAnswer> ranked;
  SearchStats stats;
  /// Mean stop depth over subquestion retrievals that found a path.
  std::optional<double> d_avg;
  std::size_t retrievals = 0;
  std::vector<nlohmann::json> trace;
};

QueryResult answer_question(const Workspace& ws, const RunConfig& cfg, oracle::OracleGateway& gw,
                            const std::string& question);

/// Answer, anchors, DAGs with named paths, candidates and stats.
nlohmann::json query_result_to_json(const QueryResult& r, const Workspace& ws);

/// Manifest common to query and eval runs. Timing is recorded only when the
/// backend is not in deterministic mode.
nlohmann::json make_manifest(const std::string& command, const RunConfig& cfg, const Workspace& ws,
                             const oracle::OracleGateway& gw, nlohmann::json details,
                             std::optional<double> elapsed_seconds);

/// Evaluates every QA line, resuming from an existing report in the run
/// directory. The report is rewritten after each question.
std::vector<EvalRow> run_evaluation(const RunPaths& paths, const Workspace& ws, const RunConfig& cfg,
                                    oracle::OracleGateway& gw, const std::filesystem::path& qa_file);

/// Writes `text` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace hgr
