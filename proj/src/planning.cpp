#include "hgr/planning.hpp"

#include <algorithm>
#include <functional>

#include <spdlog/spdlog.h>

#include "hgr/digest.hpp"
#include "hgr/errors.hpp"
#include "hgr/oracle/calls.hpp"
#include "hgr/text_util.hpp"

namespace hgr {

using nlohmann::json;

const Subquestion* ReasoningPlan::find(int id) const {
  for (const auto& s : subquestions)
    if (s.id == id) return &s;
  return nullptr;
}

ReasoningPlan plan_from_json(const json& doc) {
  ReasoningPlan plan;
  try {
    if (!doc.is_object()) throw InvalidPlanError("plan must be an object");
    for (const auto& s : doc.at("subquestions")) {
      Subquestion sq;
      sq.id = s.at("id").get<int>();
      sq.text = trim(s.at("text").get<std::string>());
      if (s.contains("topics") && !s.at("topics").is_null())
        sq.topics = s.at("topics").get<std::vector<std::string>>();
      plan.subquestions.push_back(std::move(sq));
    }
    if (doc.contains("deps"))
      for (const auto& d : doc.at("deps")) {
        if (!d.is_array() || d.size() != 2) throw InvalidPlanError("dependency must be a pair");
        plan.deps.emplace(d[0].get<int>(), d[1].get<int>());
      }
  } catch (const json::exception& ex) {
    throw InvalidPlanError(std::string("malformed plan: ") + ex.what());
  }
  return plan;
}

json plan_to_json(const ReasoningPlan& plan) {
  json subs = json::array();
  for (const auto& s : plan.subquestions) subs.push_back({{"id", s.id}, {"text", s.text}, {"topics", s.topics}});
  json deps = json::array();
  for (const auto& [i, j] : plan.deps) deps.push_back({i, j});
  return {{"subquestions", std::move(subs)}, {"deps", std::move(deps)}};
}

std::optional<std::vector<int>> find_cycle(const std::set<Dependency>& deps) {
  std::map<int, std::vector<int>> adj;
  for (const auto& [i, j] : deps) {
    adj[i].push_back(j);
    adj[j];
  }
  std::map<int, int> color;  // 0 unvisited, 1 on stack, 2 done
  std::vector<int> stack;
  std::optional<std::vector<int>> found;
  std::function<bool(int)> visit = [&](int u) {
    color[u] = 1;
    stack.push_back(u);
    for (int v : adj[u]) {
      if (color[v] == 1) {
        auto it = std::find(stack.begin(), stack.end(), v);
        found = std::vector<int>(it, stack.end());
        return true;
      }
      if (color[v] == 0 && visit(v)) return true;
    }
    stack.pop_back();
    color[u] = 2;
    return false;
  };
  for (const auto& [u, next] : adj)
    if (color[u] == 0 && visit(u)) break;
  return found;
}

void validate_plan(const ReasoningPlan& plan, bool require_dense_ids) {
  if (plan.subquestions.empty()) throw InvalidPlanError("plan has no subquestions");
  std::set<int> ids;
  for (const auto& s : plan.subquestions) {
    if (!ids.insert(s.id).second) throw InvalidPlanError("duplicate subquestion id " + std::to_string(s.id));
    if (trim(s.text).empty()) throw InvalidPlanError("subquestion " + std::to_string(s.id) + " has no text");
    if (s.text.size() > kMaxSubquestionChars)
      throw InvalidPlanError("subquestion " + std::to_string(s.id) + " is longer than " +
                             std::to_string(kMaxSubquestionChars) + " characters");
  }
  if (require_dense_ids && (*ids.begin() != 0 || *ids.rbegin() != static_cast<int>(ids.size()) - 1))
    throw InvalidPlanError("subquestion ids must be 0.." + std::to_string(ids.size() - 1));
  for (const auto& [i, j] : plan.deps) {
    if (!ids.contains(i) || !ids.contains(j))
      throw InvalidPlanError("dependency (" + std::to_string(i) + ", " + std::to_string(j) + ") names an unknown id");
    if (i == j) throw InvalidPlanError("subquestion " + std::to_string(i) + " depends on itself");
  }
  if (auto cycle = find_cycle(plan.deps)) throw CycleError(*cycle);
}

std::set<Dependency> hasse_reduce(const std::set<Dependency>& deps) {
  if (auto cycle = find_cycle(deps)) throw CycleError(*cycle);
  std::map<int, std::vector<int>> adj;
  for (const auto& [i, j] : deps) adj[i].push_back(j);
  std::map<int, std::set<int>> reach;  // nodes reachable in >= 1 step
  std::function<const std::set<int>&(int)> reachable = [&](int u) -> const std::set<int>& {
    auto it = reach.find(u);
    if (it != reach.end()) return it->second;
    std::set<int> out;
    for (int v : adj[u]) {
      out.insert(v);
      const auto& rv = reachable(v);
      out.insert(rv.begin(), rv.end());
    }
    return reach[u] = std::move(out);
  };
  std::set<Dependency> out;
  for (const auto& [i, j] : deps) {
    bool covered = false;
    for (int k : adj[i])
      if (k != j && reachable(k).contains(j)) {
        covered = true;
        break;
      }
    if (!covered) out.emplace(i, j);
  }
  return out;
}

const Subquestion& ReasoningDAG::subquestion(int id) const {
  const Subquestion* s = plan.find(id);
  if (!s) throw PreconditionError("no subquestion " + std::to_string(id));
  return *s;
}

void assign_levels(ReasoningDAG& dag) {
  std::map<int, std::vector<int>> preds;
  std::map<int, Subquestion*> by_id;
  for (auto& s : dag.plan.subquestions) {
    by_id[s.id] = &s;
    preds[s.id];
  }
  for (const auto& [i, j] : dag.plan.deps) preds[j].push_back(i);

  std::set<int> fixed;
  for (int l = 0; l <= dag.completed_level && l < static_cast<int>(dag.levels.size()); ++l)
    fixed.insert(dag.levels[static_cast<std::size_t>(l)].begin(), dag.levels[static_cast<std::size_t>(l)].end());

  std::map<int, int> level;
  std::function<int(int)> compute = [&](int id) -> int {
    auto it = level.find(id);
    if (it != level.end()) return it->second;
    int l = fixed.contains(id) ? by_id.at(id)->level : dag.completed_level + 1;
    if (!fixed.contains(id))
      for (int p : preds[id]) l = std::max(l, compute(p) + 1);
    return level[id] = l;
  };
  dag.levels.clear();
  for (auto& s : dag.plan.subquestions) {
    s.level = compute(s.id);
    if (static_cast<std::size_t>(s.level) >= dag.levels.size()) dag.levels.resize(static_cast<std::size_t>(s.level) + 1);
    dag.levels[static_cast<std::size_t>(s.level)].push_back(s.id);
  }
  for (auto& l : dag.levels) std::sort(l.begin(), l.end());
}

ReasoningDAG build_reasoning_dag(ReasoningPlan plan) {
  validate_plan(plan, false);
  plan.deps = hasse_reduce(plan.deps);
  std::sort(plan.subquestions.begin(), plan.subquestions.end(),
            [](const Subquestion& a, const Subquestion& b) { return a.id < b.id; });
  ReasoningDAG dag;
  dag.plan = std::move(plan);
  assign_levels(dag);
  return dag;
}

ReasoningPlan single_node_plan(const std::string& question, const std::vector<std::string>& topics) {
  ReasoningPlan plan;
  std::string text = trim(question);
  if (text.size() > kMaxSubquestionChars) text.resize(kMaxSubquestionChars);
  plan.subquestions.push_back({0, text.empty() ? "?" : text, topics, 0});
  return plan;
}

json dag_to_json(const ReasoningDAG& dag, const KnowledgeHypergraph* names) {
  json subs = json::array();
  for (const auto& s : dag.plan.subquestions) {
    json entry = {{"id", s.id}, {"text", s.text}, {"topics", s.topics}, {"level", s.level}};
    auto it = dag.ap.find(s.id);
    if (it != dag.ap.end()) {
      json pairs = json::array();
      for (const auto& p : it->second) {
        json path = json::array();
        for (HyperedgeId e : p.path.edges) {
          if (names && names->has_edge(e))
            path.push_back({{"id", e.value}, {"name", names->edge(e).name}});
          else
            path.push_back({{"id", e.value}});
        }
        pairs.push_back({{"answer", p.answer}, {"path", path}, {"score", p.score}, {"context_digest", p.context_digest}});
      }
      entry["answers"] = std::move(pairs);
    }
    subs.push_back(std::move(entry));
  }
  json deps = json::array();
  for (const auto& [i, j] : dag.plan.deps) deps.push_back({i, j});
  return {{"subquestions", std::move(subs)},
          {"deps", std::move(deps)},
          {"levels", dag.levels},
          {"completed_level", dag.completed_level}};
}

std::string dag_digest(const ReasoningDAG& dag) { return short_digest(dag_to_json(dag).dump()); }

PlanContextGraph build_plan_context_graph(const KnowledgeHypergraph& hq, const AnchorSet& anchors,
                                          const EntityScoreFn& relevance, std::size_t depth, std::size_t width,
                                          Aggregator aggregator) {
  PlanContextGraph pcg;
  std::vector<HyperedgeId> frontier;
  auto add = [&](HyperedgeId e, int layer, double score) {
    if (!pcg.layer_of.emplace(e, layer).second) return false;
    pcg.score_of[e] = score;
    frontier.push_back(e);
    return true;
  };

  EdgeSet seeds;
  for (HyperedgeId e : anchors.targets)
    if (hq.has_edge(e)) seeds.insert(e);
  for (EntityId v : anchors.topics)
    if (hq.has_entity(v)) {
      const auto& inc = hq.incident_edges(v);
      seeds.insert(inc.begin(), inc.end());
    }
  for (HyperedgeId e : seeds) {
    std::vector<double> scores;
    for (EntityId v : hq.edge(e).entities) scores.push_back(relevance(v));
    add(e, 0, aggregate(scores, aggregator));
  }

  for (std::size_t d = 1; d <= depth && !frontier.empty(); ++d) {
    std::vector<HyperedgeId> current;
    current.swap(frontier);
    for (HyperedgeId f : current) {
      std::vector<std::pair<double, HyperedgeId>> scored;
      for (HyperedgeId n : hq.neighbors(f))
        if (!pcg.layer_of.contains(n)) scored.emplace_back(overlap_score(hq, n, f, relevance, aggregator), n);
      std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      if (scored.size() > width) scored.resize(width);
      for (const auto& [score, n] : scored) add(n, static_cast<int>(d), score);
    }
  }

  EdgeSet kept;
  for (const auto& [e, layer] : pcg.layer_of) kept.insert(e);
  pcg.graph = hq.induced_subgraph(kept);
  return pcg;
}

std::string form_plan_context(const PlanContextGraph& pcg, std::size_t char_budget) {
  std::vector<std::tuple<int, double, HyperedgeId>> order;
  for (const auto& [e, layer] : pcg.layer_of) order.emplace_back(layer, -pcg.score_of.at(e), e);
  std::sort(order.begin(), order.end());
  std::string out;
  for (const auto& [layer, neg_score, e] : order) {
    const Hyperedge& he = pcg.graph.edge(e);
    std::string line = he.name + " {";
    for (std::size_t i = 0; i < he.entities.size(); ++i)
      line += (i ? "; " : "") + pcg.graph.entity(he.entities[i]).name;
    line += "}\n";
    if (out.size() + line.size() > char_budget) break;
    out += line;
  }
  return out;
}

std::vector<ReasoningPlan> propose_initial_plans(oracle::OracleGateway& gw, const std::string& question,
                                                 const std::vector<std::string>& topics,
                                                 const std::string& context, std::size_t n) {
  std::vector<ReasoningPlan> plans;
  for (std::size_t variant = 0; variant < n; ++variant) {
    for (int attempt = 0; attempt < 2; ++attempt) {
      std::optional<json> raw;
      try {
        raw = oracle::propose_plan(gw, question, topics, context, static_cast<int>(variant), oracle::site::kPlanning);
      } catch (const OracleError& ex) {
        spdlog::warn("plan proposal {} failed: {}", variant, ex.what());
        break;
      }
      if (!raw) continue;
      try {
        ReasoningPlan plan = plan_from_json(*raw);
        validate_plan(plan);
        std::sort(plan.subquestions.begin(), plan.subquestions.end(),
                  [](const Subquestion& a, const Subquestion& b) { return a.id < b.id; });
        if (std::find(plans.begin(), plans.end(), plan) == plans.end()) plans.push_back(std::move(plan));
        break;
      } catch (const Error& ex) {
        spdlog::warn("plan proposal {} rejected: {}", variant, ex.what());
      }
    }
  }
  if (plans.empty()) throw NoFeasiblePlanError("no feasible plan for the question");
  return plans;
}

}  // namespace hgr
