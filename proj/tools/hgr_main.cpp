// Command-line front end: build, augment, index, anchor, query, eval, stats.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hgr/config.hpp"
#include "hgr/errors.hpp"
#include "hgr/graph_io.hpp"
#include "hgr/oracle/calls.hpp"
#include "hgr/pipeline.hpp"
#include "hgr/retrieval.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitOracle = 3;

struct ConfigFlags {
  std::string config_file;
  std::string preset;
  bool lite = false;
  std::string strategy;
  std::string backend;
  std::string fixtures;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::vector<std::string> overrides;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--config", f.config_file, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--preset", f.preset, "full or lite");
  cmd->add_flag("--lite", f.lite, "Embedding-only entity weights and edge-only context");
  cmd->add_option("--strategy", f.strategy, "dfs or bfs");
  cmd->add_option("--backend", f.backend, "mock or http");
  cmd->add_option("--fixtures", f.fixtures, "Rule file for the mock backend")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "Seed of the mock backend");
  cmd->add_option("--workers", f.workers, "Questions evaluated in parallel");
  cmd->add_option("--set", f.overrides, "Override a config field, key=value (repeatable)");
}

hgr::RunConfig resolve_config(const ConfigFlags& f) {
  json doc = json::object();
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw hgr::DataError("cannot parse config " + f.config_file);
  }
  if (!f.preset.empty()) doc["preset"] = f.preset;
  hgr::RunConfig cfg = hgr::config_from_json(doc);

  json flags = json::object();
  if (f.lite) flags["lite_mode"] = true;
  if (!f.strategy.empty()) flags["strategy"] = f.strategy;
  if (f.workers) flags["workers"] = *f.workers;
  json backend = json::object();
  if (!f.backend.empty()) backend["kind"] = f.backend;
  if (!f.fixtures.empty()) backend["fixtures"] = f.fixtures;
  if (f.seed) backend["seed"] = *f.seed;
  if (!backend.empty()) flags["backend"] = backend;
  for (const auto& kv : f.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected key=value, got '" + kv + "'");
    std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    json parsed = json::parse(value, nullptr, false);
    json v = parsed.is_discarded() ? json(value) : parsed;
    if (auto dot = key.find('.'); dot != std::string::npos)
      flags[key.substr(0, dot)][key.substr(dot + 1)] = v;
    else
      flags[key] = v;
  }
  if (!flags.empty()) cfg = hgr::config_from_json(flags, cfg);
  spdlog::info("effective config {} {}", hgr::config_hash(cfg), hgr::config_to_json(cfg).dump());
  return cfg;
}

void write_jsonl(const fs::path& path, const std::vector<json>& records) {
  std::string text;
  for (const auto& r : records) text += r.dump() + "\n";
  hgr::write_file_atomic(path, text);
}

void write_transcript(const hgr::RunPaths& paths, const hgr::oracle::OracleGateway& gw) {
  std::ofstream out(paths.transcript());
  gw.write_transcript(out);
}

void print_query(const hgr::QueryResult& r, const hgr::Workspace& ws) {
  std::cout << "answer: " << r.answer << "\n";
  if (r.no_evidence) std::cout << "no graph evidence\n";
  for (std::size_t i = 0; i < r.completed.size(); ++i) {
    const auto& dag = r.completed[i];
    std::cout << "dag " << i << " edges:";
    for (const auto& [a, b] : dag.plan.deps) std::cout << " " << a << "->" << b;
    std::cout << "\n";
    for (const auto& level : dag.levels)
      for (int id : level) {
        const auto& sq = dag.subquestion(id);
        std::cout << "  [level " << sq.level << "] " << id << ": " << sq.text << "\n";
        auto it = dag.ap.find(id);
        if (it == dag.ap.end() || it->second.empty()) continue;
        const auto& pair = it->second.front();
        std::cout << "      answer: " << pair.answer << "\n      path: " << hgr::render_path(ws.graph, pair.path)
                  << "\n";
      }
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Multi-hop question answering over knowledge hypergraphs"};
  app.require_subcommand(1);
  std::string run_dir;

  auto* build = app.add_subcommand("build", "Ingest fact records into a run directory");
  std::string facts, chunks;
  build->add_option("--facts", facts, "Fact records, JSONL")->required()->check(CLI::ExistingFile);
  build->add_option("--chunks", chunks, "Source chunks: directory of <id>.txt or JSONL")->check(CLI::ExistingPath);
  build->add_option("--run-dir", run_dir, "Run directory")->required();

  ConfigFlags flags;
  auto* augment = app.add_subcommand("augment", "Add synonym hyperedges to the graph");
  augment->add_option("--run-dir", run_dir)->required();
  add_config_flags(augment, flags);

  auto* index = app.add_subcommand("index", "Build the similarity indexes");
  index->add_option("--run-dir", run_dir)->required();
  add_config_flags(index, flags);

  std::string question;
  auto* anchor = app.add_subcommand("anchor", "Show the anchors and subgraph of a question");
  anchor->add_option("--run-dir", run_dir)->required();
  anchor->add_option("--question", question)->required();
  add_config_flags(anchor, flags);

  bool as_json = false;
  auto* query = app.add_subcommand("query", "Answer one question");
  query->add_option("--run-dir", run_dir)->required();
  query->add_option("--question", question)->required();
  query->add_flag("--json", as_json, "Print the full result as JSON");
  add_config_flags(query, flags);

  std::string qa_file;
  auto* eval = app.add_subcommand("eval", "Evaluate a QA file");
  eval->add_option("--run-dir", run_dir)->required();
  eval->add_option("--qa", qa_file, "QA records, JSONL")->required()->check(CLI::ExistingFile);
  add_config_flags(eval, flags);

  auto* stats = app.add_subcommand("stats", "Summarize the graph and indexes of a run directory");
  stats->add_option("--run-dir", run_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  hgr::RunPaths paths{run_dir};
  auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  if (*build) {
    auto g = hgr::build_graph_artifacts(paths, facts, chunks.empty() ? std::nullopt : std::optional<fs::path>(chunks));
    std::cout << json({{"entities", g.entity_count()}, {"hyperedges", g.edge_count()}, {"graph", paths.graph()}}).dump(2)
              << "\n";
    return 0;
  }

  if (*stats) {
    if (!fs::exists(paths.graph())) throw hgr::DataError("no graph in " + run_dir + "; run `hgr build` first");
    auto g = hgr::load_graph(paths.graph());
    std::size_t synonyms = 0;
    std::map<std::size_t, std::size_t> arity;
    for (const auto& [id, e] : g.hyperedges()) {
      if (e.kind == hgr::EdgeKind::synonym) ++synonyms;
      ++arity[e.entities.size()];
    }
    json ar = json::object();
    for (const auto& [n, c] : arity) ar[std::to_string(n)] = c;
    json indexes = json::object();
    for (auto kind : {hgr::IndexKind::entity_name, hgr::IndexKind::entity_desc, hgr::IndexKind::hyperedge_name}) {
      std::string status = "missing";
      if (fs::exists(paths.index(kind)))
        status = hgr::load_index(paths.index(kind)).source_hash() == hgr::index_source_hash(g, kind) ? "current" : "stale";
      indexes[hgr::to_string(kind)] = status;
    }
    std::cout << json({{"entities", g.entity_count()},
                       {"hyperedges", g.edge_count()},
                       {"synonym_hyperedges", synonyms},
                       {"arity", ar},
                       {"graph_hash", hgr::graph_digest(g)},
                       {"indexes", indexes}})
                     .dump(2)
              << "\n";
    return 0;
  }

  hgr::RunConfig cfg = resolve_config(flags);
  auto gw = hgr::make_gateway(cfg.backend);

  if (*augment) {
    if (!fs::exists(paths.graph())) throw hgr::DataError("no graph in " + run_dir + "; run `hgr build` first");
    hgr::AugmentStats st;
    auto g = hgr::augment_graph(hgr::load_graph(paths.graph()), cfg, *gw, &st);
    hgr::save_graph(g, paths.graph());
    std::cout << json({{"synonym_hyperedges_added", st.edges_added},
                       {"batches_judged", st.batches},
                       {"judge_failures", st.failures}})
                     .dump(2)
              << "\n";
    return 0;
  }

  if (*index) {
    if (!fs::exists(paths.graph())) throw hgr::DataError("no graph in " + run_dir + "; run `hgr build` first");
    auto g = hgr::load_graph(paths.graph());
    auto idx = hgr::build_index_artifacts(paths, g, *gw);
    std::cout << json({{"entity_name", idx.entity_name.size()},
                       {"entity_desc", idx.entity_desc.size()},
                       {"hyperedge_name", idx.hyperedge_name.size()},
                       {"dim", idx.entity_name.dim()}})
                     .dump(2)
              << "\n";
    return 0;
  }

  hgr::Workspace ws = hgr::load_workspace(paths);

  if (*anchor) {
    hgr::oracle::CachedEmbedder embed(*gw, std::string(hgr::oracle::site::kAnchoring));
    auto outcome = hgr::anchor_question(question, ws.indexes, cfg.anchor, *gw, embed.as_function());
    auto hq = hgr::build_question_subgraph(ws.graph, outcome.anchors, cfg.anchor.d_max);
    json topics = json::array(), targets = json::array();
    for (auto v : outcome.anchors.topics) topics.push_back({{"id", v.value}, {"name", ws.graph.entity(v).name}});
    for (auto e : outcome.anchors.targets) targets.push_back({{"id", e.value}, {"name", ws.graph.edge(e).name}});
    json merged = json::object();
    for (const auto& [from, to] : hq.merge_map) merged[std::to_string(from.value)] = to.value;
    std::cout << json({{"keywords", outcome.anchors.keywords},
                       {"topics", topics},
                       {"targets", targets},
                       {"relaxed", outcome.relaxed},
                       {"no_graph_evidence", outcome.no_graph_evidence},
                       {"subgraph", {{"entities", hq.graph.entity_count()}, {"hyperedges", hq.graph.edge_count()}}},
                       {"merge_map", merged}})
                     .dump(2)
              << "\n";
    return 0;
  }

  if (*query) {
    hgr::QueryResult r = hgr::answer_question(ws, cfg, *gw, question);
    json details = {{"question", question},
                    {"answer", r.answer},
                    {"no_evidence", r.no_evidence},
                    {"lite_mode", cfg.retrieval.lite_mode},
                    {"completed_dags", r.completed.size()},
                    {"search", hgr::search_stats_to_json(r.stats)},
                    {"d_avg", r.d_avg ? json(*r.d_avg) : json(nullptr)}};
    hgr::write_file_atomic(paths.manifest(),
                           hgr::make_manifest("query", cfg, ws, *gw, details, elapsed()).dump(2) + "\n");
    write_jsonl(paths.trace(), r.trace);
    write_transcript(paths, *gw);
    if (as_json)
      std::cout << hgr::query_result_to_json(r, ws).dump(2) << "\n";
    else
      print_query(r, ws);
    return 0;
  }

  if (*eval) {
    auto rows = hgr::run_evaluation(paths, ws, cfg, *gw, qa_file);
    json details = {{"qa_file", qa_file}, {"aggregate", hgr::aggregate_to_json(hgr::aggregate_rows(rows))}};
    hgr::write_file_atomic(paths.manifest(),
                           hgr::make_manifest("eval", cfg, ws, *gw, details, elapsed()).dump(2) + "\n");
    write_transcript(paths, *gw);
    std::cout << details["aggregate"].dump(2) << "\n";
    return 0;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("hgr"));
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("HGR_LOG")) spdlog::set_level(spdlog::level::from_str(level));
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hgr::OracleError& e) {
    std::cerr << "oracle error: " << e.what() << "\n";
    return kExitOracle;
  } catch (const hgr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
