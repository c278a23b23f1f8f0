// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Every check runs offline against the mock oracle backend.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "brute_force.hpp"
#include "generators.hpp"
#include "hgr/construction.hpp"
#include "hgr/errors.hpp"
#include "hgr/evaluation.hpp"
#include "hgr/metrics.hpp"
#include "hgr/oracle/mock_backend.hpp"
#include "hgr/pipeline.hpp"
#include "hgr/planning.hpp"
#include "hgr/retrieval.hpp"
#include "hgr/scoring.hpp"
#include "toy_graphs.hpp"

#ifndef HGR_CLI_PATH
#define HGR_CLI_PATH "hgr"
#endif

using namespace hgr;
using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned tolerances.
constexpr double kHandTolerance = 1e-9;
constexpr double kTieTolerance = 1e-9;
constexpr double kAc1Seconds = 30.0;
constexpr double kAc2Seconds = 60.0;
constexpr double kSuiteSeconds = 300.0;

/// Thrown by `require` with the failed condition's description.
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed(what);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ReasoningPlan plan_of(int n, const std::set<Dependency>& deps) {
  ReasoningPlan p;
  for (int i = 0; i < n; ++i) p.subquestions.push_back({i, "subquestion " + std::to_string(i), {}, 0});
  p.deps = deps;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

/// Runs the CLI, returning its exit code and stdout.
std::pair<int, std::string> run_cli(const std::string& args, const fs::path& scratch) {
  static int n = 0;
  auto out = scratch / ("stdout" + std::to_string(n));
  auto err = scratch / ("stderr" + std::to_string(n++));
  std::string cmd = std::string("'") + HGR_CLI_PATH + "' " + args + " >" + quoted(out) + " 2>" + quoted(err);
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (code != 0) std::cerr << slurp(err);
  return {code, slurp(out)};
}

// ---------------------------------------------------------------------------

std::string ac1_structural() {
  auto t0 = Clock::now();
  hgr_test::Rng rng(1001);
  hgr_test::RandomGraphSpec spec{30, 5, 20};
  std::size_t paths_checked = 0, positive_paths = 0;
  const int graphs = 200;
  for (int checked = 0; checked < graphs;) {
    auto g = hgr_test::random_hypergraph(rng, spec);
    if (g.edge_count() == 0) continue;
    ++checked;
    for (const auto& [e, _] : g.hyperedges()) require(g.neighbors(e) == hgr_test::bf_neighbors(g, e), "neighbors");

    for (int trial = 0; trial < 5; ++trial) {
      EntitySet ents;
      EdgeSet edges;
      for (const auto& [v, _] : g.entities())
        if (hgr_test::uniform(rng, 0, 9) == 0) ents.insert(v);
      for (const auto& [e, _] : g.hyperedges())
        if (hgr_test::uniform(rng, 0, 9) == 0) edges.insert(e);
      std::size_t depth = hgr_test::uniform(rng, 0, 4);
      require(g.k_hop_neighborhood(ents, edges, depth) == hgr_test::bf_k_hop(g, ents, edges, depth), "k_hop");
    }

    std::vector<HyperedgeId> ids;
    for (const auto& [e, _] : g.hyperedges()) ids.push_back(e);
    for (int trial = 0; trial < 20; ++trial) {
      ReasoningPath p;
      std::size_t len = hgr_test::uniform(rng, 1, 5);
      bool walk = trial % 2 == 0;
      p.edges.push_back(ids[hgr_test::uniform(rng, 0, ids.size() - 1)]);
      while (p.edges.size() < len) {
        if (walk) {
          auto nbrs = hgr_test::bf_neighbors(g, p.back());
          if (nbrs.empty()) break;
          auto it = nbrs.begin();
          std::advance(it, static_cast<long>(hgr_test::uniform(rng, 0, nbrs.size() - 1)));
          p.edges.push_back(*it);
        } else {
          p.edges.push_back(ids[hgr_test::uniform(rng, 0, ids.size() - 1)]);
        }
      }
      bool expected = hgr_test::bf_connected(g, p);
      require(g.is_connected_path(p) == expected, "is_connected_path");
      ++paths_checked;
      positive_paths += expected ? 1 : 0;
    }

    auto sim = hgr_test::random_similarity_edges(rng, std::max<std::size_t>(g.entity_count(), 2),
                                                 hgr_test::uniform(rng, 0, 15));
    require(similarity_components(sim) == hgr_test::bf_components(sim), "similarity_components");
  }
  double secs = seconds_since(t0);
  require(secs < kAc1Seconds, fmt::format("runtime {:.1f}s over {}s", secs, kAc1Seconds));
  return fmt::format("{} graphs, {} paths ({} connected), {:.2f}s", graphs, paths_checked, positive_paths, secs);
}

void check_reduction(int n, const std::set<Dependency>& deps) {
  auto red = hasse_reduce(deps);
  require(red == hgr_test::bf_transitive_reduction(n, deps), "matches brute-force reduction");
  require(hgr_test::bf_closure(n, red) == hgr_test::bf_closure(n, deps), "closure preserved");
  require(hasse_reduce(red) == red, "idempotent");
}

std::string ac2_hasse() {
  auto t0 = Clock::now();
  hgr_test::Rng rng(2002);
  std::size_t exhaustive = 0;
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t masks = std::uint64_t{1} << (n * (n - 1) / 2);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      auto deps = hgr_test::upper_triangular_dag(n, mask);
      check_reduction(n, deps);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      check_reduction(n, hgr_test::relabel(deps, perm));
      ++exhaustive;
    }
  }
  for (int round = 0; round < 500; ++round) {
    int n = static_cast<int>(hgr_test::uniform(rng, 1, 12));
    check_reduction(n, hgr_test::random_dag(rng, n, static_cast<double>(hgr_test::uniform(rng, 1, 9)) / 10.0));
  }
  double secs = seconds_since(t0);
  require(secs < kAc2Seconds, fmt::format("runtime {:.1f}s over {}s", secs, kAc2Seconds));
  return fmt::format("{} exhaustive relations (each also relabeled) + 500 random, {:.2f}s", exhaustive, secs);
}

std::string ac3_levels() {
  hgr_test::Rng rng(3003);
  const int corpus = 1000;
  for (int round = 0; round < corpus; ++round) {
    int n = static_cast<int>(hgr_test::uniform(rng, 1, 12));
    auto deps = hgr_test::random_dag(rng, n, static_cast<double>(hgr_test::uniform(rng, 1, 8)) / 10.0);
    auto dag = build_reasoning_dag(plan_of(n, deps));
    for (const auto& [i, j] : dag.plan.deps) require(dag.level_of(i) < dag.level_of(j), "reduced dep order");
    for (const auto& [i, j] : deps) require(dag.level_of(i) < dag.level_of(j), "original dep order");
    auto bf = hgr_test::bf_levels(n, deps);
    for (const auto& [id, level] : bf) require(dag.level_of(id) == level, "longest-path level");
  }

  json rules;
  std::ifstream(hgr_test::fixture_path("gaap/mock.json")) >> rules;
  auto gaap = build_reasoning_dag(plan_from_json(rules.at("plans").at(0).at("plans").at(0)));
  require(gaap.levels == std::vector<std::vector<int>>{{0}, {1, 2}}, "fixture levels");
  return fmt::format("{} random DAGs; fixture levels [[0],[1,2]]", corpus);
}

std::string ac4_scores() {
  auto sets = hgr_test::graph_from_sets(4, {{0, 1, 2}, {1, 2, 3}});
  std::map<std::uint32_t, double> w = {{0, 0.3}, {1, 0.8}, {2, 0.2}, {3, 0.5}};
  auto ew = [&](EntityId v) { return w.at(v.value); };
  auto near = [](double a, double b) { return std::abs(a - b) <= kHandTolerance; };
  require(near(overlap_score(sets, HyperedgeId(1), HyperedgeId(0), ew), 0.5), "EWO {0.8,0.2} -> 0.5");
  w = {{0, 0.3}, {1, 0.9}, {2, 0.1}, {3, 0.5}};
  require(near(overlap_score(sets, HyperedgeId(1), HyperedgeId(0), ew), 0.5), "EWO {0.9,0.1} -> 0.5");
  auto single = hgr_test::graph_from_sets(3, {{0, 1}, {1, 2}});
  w = {{0, 0.6}, {1, 0.7}, {2, 0.2}};
  require(near(overlap_score(single, HyperedgeId(1), HyperedgeId(0), ew), 0.7), "EWO {0.7} -> 0.7");
  w = {{0, 0.6}, {1, 0.2}, {2, 0.0}};
  require(near(path_score(single, ReasoningPath{{HyperedgeId(0)}}, ew), 0.4), "SP {0.6,0.2} -> 0.4");
  w = {{0, 0.0}, {1, 0.0}, {2, 0.0}, {3, 0.0}};
  require(overlap_score(sets, HyperedgeId(1), HyperedgeId(0), ew) == 0.0, "all-zero EWO");

  hgr_test::Rng rng(4004);
  int cases = 0;
  std::size_t ranked = 0;
  while (cases < 100) {
    auto g = hgr_test::random_hypergraph(rng);
    if (g.edge_count() == 0) continue;
    HyperedgeId from = g.hyperedges().begin()->first;
    auto nbrs = g.neighbors(from);
    if (nbrs.size() < 2) continue;
    ++cases;
    std::map<EntityId, double> base;
    for (const auto& [v, _] : g.entities())
      base[v] = static_cast<double>(hgr_test::uniform(rng, 0, 1000)) / 1000.0;
    double c = std::exp(static_cast<double>(hgr_test::uniform(rng, 0, 2000)) / 200.0 - 5.0);
    auto original = [&](EntityId v) { return base.at(v); };
    auto scaled = [&](EntityId v) { return c * base.at(v); };

    std::vector<ScoredDirection> a, b;
    for (HyperedgeId n : nbrs) {
      ReasoningPath p{{from, n}};
      a.push_back({p, n, overlap_score(g, n, from, original)});
      b.push_back({p, n, overlap_score(g, n, from, scaled)});
    }
    rank_directions(a);
    rank_directions(b);
    std::map<HyperedgeId, double> score;
    for (const auto& d : a) score[d.terminal] = d.ewo;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      double hi = score.at(b[i].terminal), lo = score.at(b[i + 1].terminal);
      require(hi >= lo - kTieTolerance, "rescaled order keeps scores non-increasing");
    }
    ranked += a.size();
  }
  return fmt::format("hand values within {:g}; {} rescaling cases ({} directions)", kHandTolerance, cases, ranked);
}

std::string ac5_beam() {
  hgr_test::Rng rng(5005);
  hgr_test::RandomGraphSpec spec{20, 4, 16};
  int instances = 0, reachable_count = 0, narrow_paths = 0;
  while (instances < 200) {
    auto g = hgr_test::random_hypergraph(rng, spec);
    if (g.edge_count() == 0) continue;
    ++instances;
    std::vector<HyperedgeId> ids;
    for (const auto& [e, _] : g.hyperedges()) ids.push_back(e);
    EdgeSet seeds;
    for (std::size_t i = 0, n = hgr_test::uniform(rng, 1, 2); i < n; ++i)
      seeds.insert(ids[hgr_test::uniform(rng, 0, ids.size() - 1)]);
    HyperedgeId gold = ids[hgr_test::uniform(rng, 0, ids.size() - 1)];
    std::size_t d_max = hgr_test::uniform(rng, 1, 3);

    std::map<EntityId, double> base;
    for (const auto& [v, _] : g.entities()) base[v] = static_cast<double>(hgr_test::uniform(rng, 0, 100)) / 100.0;
    auto weight = [&](EntityId v) { return base.at(v); };
    PathPicker gold_picker = [gold](const std::vector<ReasoningPath>& shown) -> std::optional<std::vector<std::size_t>> {
      std::vector<std::size_t> picks;
      for (std::size_t i = 0; i < shown.size(); ++i)
        if (shown[i].contains(gold)) picks.push_back(i);
      return picks;
    };

    auto dist = hgr_test::bf_edge_distances(g, seeds);
    RetrievalConfig cfg;
    cfg.d_max = d_max;
    cfg.beam = kUnbounded;
    cfg.path_shortlist = kUnbounded;
    cfg.lite_mode = true;
    auto wide = beam_search(g, seeds, {}, weight, cfg, nullptr, gold_picker);
    bool reachable = dist.contains(gold) && dist.at(gold) + 1 <= d_max;
    require(!wide.selected.empty() == reachable, "unbounded beam reaches the gold edge iff BFS does");
    if (reachable) {
      require(wide.stop_depth == dist.at(gold) + 1, "stops at the BFS depth");
      ++reachable_count;
    }

    cfg.beam = 4;
    PathPicker all = [](const std::vector<ReasoningPath>& shown) -> std::optional<std::vector<std::size_t>> {
      std::vector<std::size_t> picks(shown.size());
      std::iota(picks.begin(), picks.end(), 0);
      return picks;
    };
    for (const auto& picker : {gold_picker, all}) {
      auto narrow = beam_search(g, seeds, {}, weight, cfg, nullptr, picker);
      for (const auto& sp : narrow.selected) {
        ++narrow_paths;
        require(g.is_connected_path(sp.path) && seeds.contains(sp.path.edges.front()), "narrow path well formed");
        for (std::size_t i = 0; i < sp.path.length(); ++i) {
          auto it = dist.find(sp.path.edges[i]);
          require(it != dist.end() && it->second <= i, "narrow path inside the BFS-reachable set");
        }
      }
      for (HyperedgeId e : narrow.visited) require(dist.contains(e), "visited edge reachable");
    }
  }
  return fmt::format("{} instances ({} reachable); {} narrow-beam paths inside the BFS set", instances,
                     reachable_count, narrow_paths);
}

std::string ac6_end_to_end() {
  auto gaap = hgr_test::fixture_path("gaap");
  auto fixtures = " --fixtures " + quoted(gaap / "mock.json");
  std::vector<std::string> manifests;
  json doc;
  for (int run_no = 0; run_no < 3; ++run_no) {
    auto run = hgr_test::scratch_dir("acceptance-e2e-" + std::to_string(run_no));
    auto scratch = hgr_test::scratch_dir("acceptance-e2e-io-" + std::to_string(run_no));
    auto rd = " --run-dir " + quoted(run);
    require(run_cli("build --facts " + quoted(gaap / "facts.jsonl") + " --chunks " + quoted(gaap / "chunks") + rd,
                    scratch)
                    .first == 0,
            "build");
    require(run_cli("augment" + rd + fixtures, scratch).first == 0, "augment");
    require(run_cli("index" + rd + fixtures, scratch).first == 0, "index");
    auto [code, out] = run_cli("query --json" + rd + fixtures + " --question '" + hgr_test::kGaapQuestion + "'", scratch);
    require(code == 0, "query exit code");
    doc = json::parse(out);
    manifests.push_back(slurp(run / "manifest.json"));
  }
  require(manifests[0] == manifests[1] && manifests[1] == manifests[2], "identical manifests");
  require(doc.at("answer") == "Financial statements", "final answer");
  const auto& dag = doc.at("completed_dags").at(0);
  require(dag.at("deps") == json::parse("[[0,1],[0,2]]"), "DAG edges 0->1, 0->2");
  require(dag.at("levels") == json::parse("[[0],[1,2]]"), "levels");
  std::size_t longest = 0;
  for (const auto& sq : dag.at("subquestions"))
    if (sq.at("level") == 1)
      for (const auto& a : sq.at("answers")) longest = std::max(longest, a.at("path").size());
  require(longest >= 2, "a level-1 path of at least two edges");
  return fmt::format("3 identical manifests; answer \"Financial statements\"; longest level-1 path {} edges", longest);
}

/// A chain start -> ... -> gold of `hops` edges plus one distractor edge per
/// chain entity, with rules that anchor on the start and accept only the gold
/// edge.
struct PlantedInstance {
  KnowledgeHypergraph graph;
  json rules;
  std::string question;
  HyperedgeId gold;
  EntityId start;
};

PlantedInstance planted(std::size_t hops, hgr_test::Rng& rng) {
  std::vector<std::string> words = {"AMBER", "BASALT", "CEDAR",   "DUNE",  "EMBER",  "FJORD",   "GLACIER",
                                    "HARBOR", "IVORY", "JUNIPER", "KELP",  "LAGOON", "MESA",    "NECTAR",
                                    "ONYX",  "PRAIRIE", "QUARRY", "RIDGE", "SIERRA", "TUNDRA"};
  std::shuffle(words.begin(), words.end(), rng);
  std::size_t next = 0;
  HypergraphBuilder b;
  std::vector<EntityId> chain;
  for (std::size_t i = 0; i <= hops; ++i) {
    chain.push_back(b.add_entity(words[next], "A place called " + words[next] + "."));
    ++next;
  }
  PlantedInstance inst;
  for (std::size_t i = 1; i <= hops; ++i) {
    const auto& from = words[i - 1];
    const auto& to = words[i];
    std::string name = i == hops ? from + " guards the buried treasure at " + to + "." : "A road joins " + from + " and " + to + ".";
    auto e = b.add_edge(name, {chain[i - 1], chain[i]}, std::nullopt);
    if (i == hops) inst.gold = *e;
  }
  for (std::size_t i = 0; i < hops; ++i) {
    auto side = b.add_entity(words[next], "A place called " + words[next] + ".");
    b.add_edge("A trail leaves " + words[i] + " for " + words[next] + ".", {chain[i], side}, std::nullopt);
    ++next;
  }
  inst.graph = std::move(b).freeze();
  inst.start = chain.front();
  inst.question = "Where is the treasure reached from " + words[0] + "?";
  inst.rules = {{"keywords", {{{"match", words[0]}, {"keywords", {words[0]}}}}},
                {"sufficient", {{{"match", "treasure"}, {"require", {"buried treasure"}}}}}};
  return inst;
}

std::string ac7_depth() {
  hgr_test::Rng rng(7007);
  auto cfg = preset_config("full");
  cfg.anchor.theta_e = 0.99;  // keep the gold fact from being matched as a target edge
  std::vector<double> per_hop;
  std::string detail;
  for (std::size_t h = 1; h <= 3; ++h) {
    double sum = 0.0;
    const int variants = 3;
    for (int v = 0; v < variants; ++v) {
      auto inst = planted(h, rng);
      auto gw = hgr_test::mock_gateway(inst.rules);
      auto ws = hgr_test::workspace_from_graph(inst.graph, *gw);
      auto r = answer_question(ws, cfg, *gw, inst.question);
      require(r.d_avg.has_value(), fmt::format("h={} variant {} found a path", h, v));
      auto dist = hgr_test::bf_edge_distances(inst.graph, inst.graph.incident_edges(inst.start));
      require(*r.d_avg == static_cast<double>(dist.at(inst.gold) + 1),
              fmt::format("h={} variant {} stops at the first sufficient depth", h, v));
      sum += *r.d_avg;
    }
    per_hop.push_back(sum / variants);
    detail += fmt::format("{}h={}: d_avg {:.2f}", detail.empty() ? "" : ", ", h, per_hop.back());
  }
  require(std::is_sorted(per_hop.begin(), per_hop.end()), "d_avg non-decreasing in h");
  return detail;
}

std::string ac8_strategies() {
  std::map<std::string, QueryResult> results;
  const std::string question = "Which agencies operate the sites that launched Orion?";
  for (auto strategy : {SearchStrategy::dfs, SearchStrategy::bfs}) {
    auto cfg = preset_config("full");
    cfg.backend.fixtures = hgr_test::fixture_path("branching/mock.json").string();
    cfg.initial_plans = 3;
    cfg.solutions = 3;
    cfg.strategy = strategy;
    auto gw = make_gateway(cfg.backend);
    auto ws = hgr_test::fixture_workspace(hgr_test::fixture_path("branching"), cfg, *gw);
    auto r = answer_question(ws, cfg, *gw, question);
    require(r.initial.size() == 3, fmt::format("{}: three initial plans", to_string(strategy)));
    require(r.completed.size() == 3, fmt::format("{}: three completed DAGs", to_string(strategy)));
    for (const auto& dag : r.completed)
      for (const auto& [id, pairs] : dag.ap) require(!pairs.empty(), "answered subquestion");
    results.emplace(to_string(strategy), std::move(r));
  }
  // Each subquestion must offer at least two answers for the search to branch.
  std::set<std::string> first_level_answers;
  for (const auto& dag : results.at("bfs").completed) first_level_answers.insert(dag.ap.at(0).front().answer);
  for (const auto& dag : results.at("dfs").completed) first_level_answers.insert(dag.ap.at(0).front().answer);
  require(first_level_answers.size() >= 2, "at least two answers per subquestion");
  auto dfs = results.at("dfs").stats, bfs = results.at("bfs").stats;
  require(bfs.peak_frontier_width > dfs.peak_frontier_width, "bfs peak frontier above dfs");
  return fmt::format("peak frontier bfs {} > dfs {}; states bfs {}, dfs {}", bfs.peak_frontier_width,
                     dfs.peak_frontier_width, bfs.states_visited, dfs.states_visited);
}

std::string ac9_metrics() {
  require(std::abs(f1_score("financial statements required", "financial statements") - 0.8) <= kHandTolerance,
          "worked F1 example");
  require(f1_score("Financial statements", "financial statements") == 1.0, "identical F1");
  require(f1_score("tax reporting", "financial statements") == 0.0, "disjoint F1");
  require(f1_score("", "") == 1.0 && f1_score("", "x") == 0.0 && f1_score("x", "") == 0.0, "empty F1");

  Embedder embed = [](const std::string& s) { return oracle::mock_embedding(s); };
  for (const std::string x : {"Financial statements", "GAAP", "a much longer retrieved passage about tax reporting"})
    require(std::abs(retrieval_similarity(x, x, embed) - 1.0) <= kHandTolerance, "RS(x, x) = 1");

  auto cfg = preset_config("full");
  cfg.backend.fixtures = hgr_test::fixture_path("gaap/mock.json").string();
  auto gw = make_gateway(cfg.backend);
  auto ws = hgr_test::fixture_workspace(hgr_test::fixture_path("gaap"), cfg, *gw);
  RunPaths paths{hgr_test::scratch_dir("acceptance-eval")};
  auto rows = run_evaluation(paths, ws, cfg, *gw, hgr_test::fixture_path("gaap/qa.jsonl"));
  require(rows.size() == 3, "three rows");
  double f1_sum = 0.0;
  for (const auto& row : rows) {
    double f = f1_score(row.answer, row.golden_answer);
    require(row.f1 && *row.f1 == f, "row F1");
    f1_sum += f;
  }
  json report;
  std::ifstream(paths.report_json()) >> report;
  double stored = report.at("aggregate").at("f1").get<double>();
  require(std::abs(stored - f1_sum / 3.0) <= kHandTolerance, "aggregate F1 equals the hand mean");
  return fmt::format("F1 worked example 0.8; RS(x,x)=1; aggregate F1 {:.4f} over 3 rows", stored);
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  auto t0 = Clock::now();
  struct Criterion {
    const char* id;
    const char* name;
    std::function<std::string()> run;
  };
  std::vector<Criterion> criteria = {
      {"AC1", "structural oracle equivalence", ac1_structural},
      {"AC2", "transitive reduction correctness", ac2_hasse},
      {"AC3", "leveling law", ac3_levels},
      {"AC4", "overlap and path score checks", ac4_scores},
      {"AC5", "beam search completeness", ac5_beam},
      {"AC6", "end-to-end fixture regression", ac6_end_to_end},
      {"AC7", "depth behavior on planted hops", ac7_depth},
      {"AC8", "search strategy statistics", ac8_strategies},
      {"AC9", "metrics", ac9_metrics},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = Clock::now();
    try {
      std::string detail = c.run();
      std::cout << fmt::format("{} PASS {}: {} [{:.2f}s]", c.id, c.name, detail, seconds_since(start)) << std::endl;
    } catch (const std::exception& ex) {
      ++failures;
      std::cout << fmt::format("{} FAIL {}: {} [{:.2f}s]", c.id, c.name, ex.what(), seconds_since(start)) << std::endl;
    }
  }

  double total = seconds_since(t0);
#ifdef HGR_HAVE_HTTP
  const char* http = "http backend compiled in but unused";
#else
  const char* http = "http backend not compiled";
#endif
  bool offline_ok = failures == 0 && total < kSuiteSeconds;
  if (!offline_ok) ++failures;
  std::cout << fmt::format("AC10 {} offline suite: {}; mock oracles only; {:.1f}s (limit {}s)",
                           offline_ok ? "PASS" : "FAIL", http, total, kSuiteSeconds)
            << std::endl;
  return failures == 0 ? 0 : 1;
}
