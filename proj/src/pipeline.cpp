#include "hgr/pipeline.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include <spdlog/spdlog.h>

#include "hgr/errors.hpp"
#include "hgr/graph_io.hpp"
#include "hgr/metrics.hpp"
#include "hgr/oracle/calls.hpp"
#include "hgr/oracle/mock_backend.hpp"
#include "hgr/retrieval.hpp"
#include "hgr/text_util.hpp"
#ifdef HGR_HAVE_HTTP
#include "hgr/oracle/http_backend.hpp"
#endif

namespace hgr {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << text;
    if (!out) throw DataError("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

Workspace load_workspace(const RunPaths& paths) {
  if (!fs::exists(paths.graph()))
    throw DataError("no graph at " + paths.graph().string() + "; run `hgr build` on this run directory first");
  Workspace ws;
  ws.graph = load_graph(paths.graph());
  ws.graph_hash = graph_digest(ws.graph);
  auto load = [&](IndexKind kind) {
    fs::path p = paths.index(kind);
    if (!fs::exists(p))
      throw DataError(std::string("missing ") + to_string(kind) + " index; run `hgr index` on this run directory");
    VectorIndex idx = load_index(p);
    if (idx.source_hash() != index_source_hash(ws.graph, kind))
      throw DataError(std::string("the ") + to_string(kind) +
                      " index is stale for the current graph; rerun `hgr index` on this run directory");
    return idx;
  };
  ws.indexes.entity_name = load(IndexKind::entity_name);
  ws.indexes.entity_desc = load(IndexKind::entity_desc);
  ws.indexes.hyperedge_name = load(IndexKind::hyperedge_name);
  ws.chunks = ChunkStore::from_directory(paths.chunks());
  return ws;
}

std::unique_ptr<oracle::OracleGateway> make_gateway(const BackendConfig& cfg) {
  oracle::GatewayOptions opts;
  opts.max_retries = cfg.max_retries;
  opts.in_flight_cap = cfg.in_flight_cap;
  opts.deterministic = cfg.deterministic;
  std::unique_ptr<oracle::OracleBackend> backend;
  if (cfg.kind == "mock") {
    oracle::MockFixtures fixtures = cfg.fixtures.empty() ? oracle::MockFixtures{} : oracle::MockFixtures::load(cfg.fixtures);
    backend = std::make_unique<oracle::MockBackend>(std::move(fixtures), cfg.seed);
  } else if (cfg.kind == "http") {
#ifdef HGR_HAVE_HTTP
    oracle::HttpBackendOptions h;
    h.base_url = cfg.url;
    h.path = cfg.path;
    h.protocol = cfg.protocol == "chat_completions" ? oracle::HttpProtocol::chat_completions
                                                     : oracle::HttpProtocol::native;
    h.chat_model = cfg.chat_model;
    h.embedding_model = cfg.embedding_model;
    h.api_key_env = cfg.api_key_env;
    h.prompt_dir = cfg.prompt_dir;
    h.timeout_seconds = cfg.timeout_seconds;
    backend = std::make_unique<oracle::HttpBackend>(std::move(h));
#else
    throw DataError("this build has no http oracle backend (configure with -DHGR_ENABLE_HTTP=ON)");
#endif
  } else {
    throw DataError("unknown oracle backend '" + cfg.kind + "'");
  }
  return std::make_unique<oracle::OracleGateway>(std::move(backend), opts);
}

KnowledgeHypergraph build_graph_artifacts(const RunPaths& paths, const fs::path& facts,
                                          const std::optional<fs::path>& chunks) {
  KnowledgeHypergraph g = ingest_facts(read_fact_records(facts));
  fs::create_directories(paths.dir);
  save_graph(g, paths.graph());
  if (chunks) {
    ChunkStore store = fs::is_directory(*chunks) ? ChunkStore::from_directory(*chunks) : ChunkStore::from_jsonl(*chunks);
    store.save_directory(paths.chunks());
  }
  return g;
}

KnowledgeHypergraph augment_graph(const KnowledgeHypergraph& g, const RunConfig& cfg, oracle::OracleGateway& gw,
                                  AugmentStats* stats) {
  oracle::CachedEmbedder embed(gw, std::string(oracle::site::kConstruction));
  VectorIndex names = build_index(g, IndexKind::entity_name, embed.as_function());
  auto components = similarity_components(similarity_candidates(g, names, cfg.synonym_threshold));
  return augment_synonyms(g, components, gw, cfg.synonym_batch_cap, stats);
}

GraphIndexes build_index_artifacts(const RunPaths& paths, const KnowledgeHypergraph& g, oracle::OracleGateway& gw) {
  oracle::CachedEmbedder embed(gw, std::string(oracle::site::kEmbedIndex));
  GraphIndexes idx;
  idx.entity_name = build_index(g, IndexKind::entity_name, embed.as_function());
  idx.entity_desc = build_index(g, IndexKind::entity_desc, embed.as_function());
  idx.hyperedge_name = build_index(g, IndexKind::hyperedge_name, embed.as_function());
  fs::create_directories(paths.indexes());
  save_index(idx.entity_name, paths.index(IndexKind::entity_name));
  save_index(idx.entity_desc, paths.index(IndexKind::entity_desc));
  save_index(idx.hyperedge_name, paths.index(IndexKind::hyperedge_name));
  return idx;
}

QueryResult answer_question(const Workspace& ws, const RunConfig& cfg, oracle::OracleGateway& gw,
                            const std::string& question) {
  QueryResult r;
  r.question = question;
  oracle::CachedEmbedder anchor_embed(gw, std::string(oracle::site::kAnchoring));
  oracle::CachedEmbedder plan_embed(gw, std::string(oracle::site::kPlanning));
  oracle::CachedEmbedder retrieval_embed(gw, std::string(oracle::site::kRetrieval));

  AnchorOutcome anchored = anchor_question(question, ws.indexes, cfg.anchor, gw, anchor_embed.as_function());
  r.anchors = anchored.anchors;
  r.anchors_relaxed = anchored.relaxed;

  QuestionSubgraph hq;
  if (!anchored.no_graph_evidence) hq = build_question_subgraph(ws.graph, anchored.anchors, cfg.anchor.d_max);
  r.subgraph_entities = hq.graph.entity_count();
  r.subgraph_edges = hq.graph.edge_count();

  if (hq.graph.edge_count() > 0) {
    SubgraphIndexes sub = restrict_indexes(ws.indexes, hq);
    AnchorSet local;
    local.keywords = anchored.anchors.keywords;
    for (EntityId v : anchored.anchors.topics)
      if (hq.graph.has_entity(hq.canonical(v))) local.topics.insert(hq.canonical(v));
    for (HyperedgeId e : anchored.anchors.targets)
      if (hq.graph.has_edge(e)) local.targets.insert(e);

    EmbeddingRelevance relevance(sub.indexes.entity_desc, plan_embed(question));
    PlanContextGraph pcg = build_plan_context_graph(hq.graph, local, [&](EntityId v) { return relevance(v); },
                                                    cfg.plan_depth, cfg.plan_width, cfg.retrieval.aggregator);
    r.plan_context = form_plan_context(pcg, cfg.plan_context_budget);

    std::vector<std::string> topics;
    for (EntityId v : local.topics) topics.push_back(hq.graph.entity(v).name);
    if (topics.empty()) topics = local.keywords;

    std::vector<ReasoningPlan> plans;
    try {
      plans = propose_initial_plans(gw, question, topics, r.plan_context, cfg.initial_plans);
    } catch (const NoFeasiblePlanError& ex) {
      spdlog::warn("{}; answering with a single-step plan", ex.what());
      r.plan_fallback = true;
      plans = {single_node_plan(question, topics)};
    }
    for (auto& p : plans) {
      try {
        r.initial.push_back(build_reasoning_dag(std::move(p)));
      } catch (const Error& ex) {
        spdlog::warn("dropping plan: {}", ex.what());
      }
    }
    if (r.initial.empty()) {
      r.plan_fallback = true;
      r.initial.push_back(build_reasoning_dag(single_node_plan(question, topics)));
    }

    RetrievalEnv env;
    env.hq = &hq;
    env.indexes = &sub;
    env.chunks = &ws.chunks;
    env.gw = &gw;
    env.embed = retrieval_embed.as_function();
    env.anchor = cfg.anchor;
    env.cfg = cfg.retrieval;

    std::map<std::string, std::vector<AnswerPathPair>> cache;
    std::vector<double> depths;
    SubquestionResolver resolve = [&](const ReasoningDAG&, const Subquestion& sq) {
      std::string key = sq.text;
      for (const auto& t : sq.topics) key += '\x1f' + t;
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
      RetrievalOutcome found = retrieve_answers_with_paths(env, sq);
      ++r.retrievals;
      if (!found.pairs.empty()) depths.push_back(static_cast<double>(found.stop_depth));
      return cache.emplace(key, std::move(found.pairs)).first->second;
    };
    DagRefiner refine = [&](const ReasoningDAG& dag, const JointAssignment& a) {
      return refine_dag(dag, a, gw, question);
    };
    ReasonResult reasoned = reason(r.initial, resolve, refine, {cfg.solutions, cfg.strategy, cfg.branch_cap});
    r.completed = std::move(reasoned.completed);
    r.stats = reasoned.stats;
    r.trace = std::move(reasoned.trace);
    if (!depths.empty()) {
      double s = 0.0;
      for (double d : depths) s += d;
      r.d_avg = s / static_cast<double>(depths.size());
    }
  }

  FinalAnswer final = generate_final_answer(gw, question, r.completed, cfg.answer_context_budget);
  r.answer = final.answer;
  r.no_evidence = final.no_evidence;
  r.ranked = std::move(final.ranked);
  return r;
}

json query_result_to_json(const QueryResult& r, const Workspace& ws) {
  json topics = json::array(), targets = json::array();
  for (EntityId v : r.anchors.topics) topics.push_back({{"id", v.value}, {"name", ws.graph.entity(v).name}});
  for (HyperedgeId e : r.anchors.targets) targets.push_back({{"id", e.value}, {"name", ws.graph.edge(e).name}});
  json initial = json::array(), completed = json::array(), ranked = json::array();
  for (const auto& d : r.initial) initial.push_back(dag_to_json(d, &ws.graph));
  for (const auto& d : r.completed) completed.push_back(dag_to_json(d, &ws.graph));
  for (const auto& c : r.ranked) ranked.push_back({{"answer", c.answer}, {"dag_digest", c.source_dag_digest}});
  return {{"question", r.question},
          {"answer", r.answer},
          {"no_evidence", r.no_evidence},
          {"anchors",
           {{"keywords", r.anchors.keywords},
            {"topics", std::move(topics)},
            {"targets", std::move(targets)},
            {"relaxed", r.anchors_relaxed}}},
          {"subgraph", {{"entities", r.subgraph_entities}, {"hyperedges", r.subgraph_edges}}},
          {"plan_fallback", r.plan_fallback},
          {"initial_dags", std::move(initial)},
          {"completed_dags", std::move(completed)},
          {"candidates", std::move(ranked)},
          {"search", search_stats_to_json(r.stats)},
          {"d_avg", r.d_avg ? json(*r.d_avg) : json(nullptr)},
          {"retrievals", r.retrievals}};
}

json make_manifest(const std::string& command, const RunConfig& cfg, const Workspace& ws,
                   const oracle::OracleGateway& gw, json details, std::optional<double> elapsed_seconds) {
  json m = {{"command", command},
            {"config", config_to_json(cfg)},
            {"config_hash", config_hash(cfg)},
            {"graph_hash", ws.graph_hash},
            {"graph", {{"entities", ws.graph.entity_count()}, {"hyperedges", ws.graph.edge_count()}}},
            {"backend", gw.backend_name()},
            {"usage", oracle::usage_report_to_json(gw.usage_report())},
            {"details", std::move(details)}};
  if (elapsed_seconds && !gw.options().deterministic) m["timing"] = {{"elapsed_seconds", *elapsed_seconds}};
  return m;
}

std::vector<EvalRow> run_evaluation(const RunPaths& paths, const Workspace& ws, const RunConfig& cfg,
                                    oracle::OracleGateway& gw, const fs::path& qa_file) {
  std::vector<QaLine> lines = read_qa_file(qa_file);
  std::map<std::string, EvalRow> done;
  if (fs::exists(paths.report_json())) {
    std::ifstream in(paths.report_json());
    json prior = json::parse(in, nullptr, false);
    if (prior.is_discarded()) throw DataError("cannot parse existing report " + paths.report_json().string());
    for (auto& row : report_rows_from_json(prior))
      if (!row.failed()) done.emplace(row.id, std::move(row));
  }

  std::vector<std::optional<EvalRow>> rows(lines.size());
  std::mutex mu;
  auto flush = [&] {
    std::vector<EvalRow> finished;
    for (const auto& r : rows)
      if (r) finished.push_back(*r);
    write_file_atomic(paths.report_json(), report_to_json(finished).dump(2) + "\n");
    write_file_atomic(paths.report_csv(), report_to_csv(finished));
  };

  auto evaluate = [&](std::size_t i) {
    const QaLine& line = lines[i];
    EvalRow row;
    if (!line.record) {
      row.id = "line" + std::to_string(line.line);
      row.error = line.error;
    } else {
      const QaRecord& rec = *line.record;
      {
        std::lock_guard lock(mu);
        auto it = done.find(rec.id);
        if (it != done.end()) {
          rows[i] = it->second;
          return;
        }
      }
      row.id = rec.id;
      row.question = rec.question;
      row.golden_answer = rec.golden_answer;
      try {
        QueryResult qr = answer_question(ws, cfg, gw, rec.question);
        row.answer = qr.answer;
        row.no_evidence = qr.no_evidence;
        row.d_avg = qr.d_avg;
        row.f1 = f1_score(qr.answer, rec.golden_answer);
        if (rec.context) {
          oracle::CachedEmbedder embed(gw, std::string(oracle::site::kEvaluation));
          std::string retrieved = qr.ranked.empty() ? "" : qr.ranked.front().aggregated_context;
          row.rs = retrieval_similarity(retrieved, *rec.context, embed.as_function());
        }
        if (cfg.grade_answers) row.ge = generation_eval(gw, rec.question, qr.answer, rec.golden_answer);
      } catch (const Error& ex) {
        row.error = ex.what();
      }
    }
    std::lock_guard lock(mu);
    rows[i] = std::move(row);
    flush();
  };

  if (cfg.workers <= 1 || lines.size() <= 1) {
    for (std::size_t i = 0; i < lines.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(cfg.workers, lines.size()); ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < lines.size(); i = next++) evaluate(i);
      });
  }
  std::lock_guard lock(mu);
  flush();
  std::vector<EvalRow> out;
  for (auto& r : rows)
    if (r) out.push_back(std::move(*r));
  return out;
}

}  // namespace hgr
