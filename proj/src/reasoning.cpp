#include "hgr/reasoning.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include <spdlog/spdlog.h>

#include "hgr/errors.hpp"
#include "hgr/oracle/calls.hpp"

namespace hgr {

using nlohmann::json;

const char* to_string(SearchStrategy s) noexcept { return s == SearchStrategy::bfs ? "bfs" : "dfs"; }

SearchStrategy search_strategy_from_string(const std::string& s) {
  if (s == "dfs") return SearchStrategy::dfs;
  if (s == "bfs") return SearchStrategy::bfs;
  throw DataError("unknown search strategy '" + s + "'");
}

json search_stats_to_json(const SearchStats& s) {
  return {{"states_visited", s.states_visited},
          {"peak_frontier_width", s.peak_frontier_width},
          {"peak_depth", s.peak_depth}};
}

std::vector<JointAssignment> joint_assignments(const std::map<int, std::vector<AnswerPathPair>>& options,
                                               std::size_t cap) {
  std::vector<int> ids;
  std::vector<std::vector<AnswerPathPair>> sets;
  for (const auto& [id, pairs] : options) {
    if (pairs.empty()) return {};
    ids.push_back(id);
    auto sorted = pairs;
    std::stable_sort(sorted.begin(), sorted.end(), [](const AnswerPathPair& a, const AnswerPathPair& b) {
      if (a.answer != b.answer) return a.answer < b.answer;
      return a.path < b.path;
    });
    sets.push_back(std::move(sorted));
  }
  if (ids.empty()) return {JointAssignment{}};

  std::vector<JointAssignment> all;
  std::vector<std::size_t> pos(ids.size(), 0);
  while (true) {
    JointAssignment a;
    for (std::size_t i = 0; i < ids.size(); ++i) a.emplace(ids[i], sets[i][pos[i]]);
    all.push_back(std::move(a));
    bool exhausted = true;
    for (std::size_t k = ids.size(); k-- > 0;) {
      if (++pos[k] < sets[k].size()) {
        exhausted = false;
        break;
      }
      pos[k] = 0;
    }
    if (exhausted) break;
  }
  if (all.size() <= cap) return all;

  auto total = [](const JointAssignment& a) {
    double s = 0.0;
    for (const auto& [id, p] : a) s += p.score;
    return s;
  };
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return total(all[x]) > total(all[y]); });
  order.resize(cap);
  std::sort(order.begin(), order.end());
  std::vector<JointAssignment> kept;
  for (std::size_t i : order) kept.push_back(std::move(all[i]));
  return kept;
}

ReasoningDAG advance_dag(const ReasoningDAG& dag, const JointAssignment& assignment) {
  if (dag.complete()) throw PreconditionError("cannot advance a completed reasoning DAG");
  const auto& level = dag.levels[static_cast<std::size_t>(dag.completed_level + 1)];
  if (assignment.size() != level.size())
    throw PreconditionError("assignment does not cover the current level");
  ReasoningDAG next = dag;
  for (int id : level) {
    auto it = assignment.find(id);
    if (it == assignment.end()) throw PreconditionError("assignment misses subquestion " + std::to_string(id));
    next.ap[id] = {it->second};
  }
  ++next.completed_level;
  return next;
}

void validate_refinement(const ReasoningDAG& dag, const ReasoningPlan& proposal) {
  validate_plan(proposal, false);
  std::set<int> completed;
  for (int l = 0; l <= dag.completed_level; ++l)
    completed.insert(dag.levels[static_cast<std::size_t>(l)].begin(), dag.levels[static_cast<std::size_t>(l)].end());
  for (int id : completed) {
    const Subquestion* s = proposal.find(id);
    if (!s) throw InvalidPlanError("refinement drops completed subquestion " + std::to_string(id));
    if (s->text != dag.subquestion(id).text)
      throw InvalidPlanError("refinement rewrites completed subquestion " + std::to_string(id));
  }
  std::set<Dependency> old_closed, new_closed;
  for (const auto& d : dag.plan.deps)
    if (completed.contains(d.first) && completed.contains(d.second)) old_closed.insert(d);
  for (const auto& d : hasse_reduce(proposal.deps)) {
    if (completed.contains(d.second) && !completed.contains(d.first))
      throw InvalidPlanError("refinement adds a dependency into completed subquestion " + std::to_string(d.second));
    if (completed.contains(d.first) && completed.contains(d.second)) new_closed.insert(d);
  }
  if (old_closed != new_closed) throw InvalidPlanError("refinement changes dependencies among completed subquestions");
}

namespace {

json refinement_payload(const ReasoningDAG& dag, const std::string& question) {
  json subs = json::array();
  for (const auto& s : dag.plan.subquestions) {
    json entry = {{"id", s.id}, {"text", s.text}, {"topics", s.topics}, {"level", s.level}};
    auto it = dag.ap.find(s.id);
    if (it != dag.ap.end() && !it->second.empty()) entry["answer"] = it->second.front().answer;
    subs.push_back(std::move(entry));
  }
  json deps = json::array();
  for (const auto& [i, j] : dag.plan.deps) deps.push_back({i, j});
  return {{"question", question},
          {"subquestions", std::move(subs)},
          {"deps", std::move(deps)},
          {"completed_level", dag.completed_level}};
}

}  // namespace

ReasoningDAG refine_dag(const ReasoningDAG& dag, const JointAssignment& assignment, oracle::OracleGateway& gw,
                        const std::string& question) {
  ReasoningDAG next = advance_dag(dag, assignment);
  json payload = refinement_payload(next, question);
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::optional<json> raw;
    try {
      raw = oracle::refine_plan(gw, payload, oracle::site::kReasoning);
    } catch (const OracleError& ex) {
      spdlog::warn("plan refinement failed: {}", ex.what());
      return next;
    }
    if (!raw) return next;
    try {
      ReasoningPlan proposal = plan_from_json(*raw);
      validate_refinement(next, proposal);
      ReasoningDAG refined = next;
      std::sort(proposal.subquestions.begin(), proposal.subquestions.end(),
                [](const Subquestion& a, const Subquestion& b) { return a.id < b.id; });
      for (auto& s : proposal.subquestions)
        if (const Subquestion* old = next.plan.find(s.id); old && next.ap.contains(s.id)) s = *old;
      refined.plan.subquestions = std::move(proposal.subquestions);
      refined.plan.deps = hasse_reduce(proposal.deps);
      assign_levels(refined);
      return refined;
    } catch (const Error& ex) {
      spdlog::warn("plan refinement rejected: {}", ex.what());
      payload["repair_hint"] = ex.what();
    }
  }
  return next;
}

ReasonResult reason(const std::vector<ReasoningDAG>& initial, const SubquestionResolver& resolve,
                    const DagRefiner& refine, const ReasonOptions& options) {
  if (options.solutions == 0) throw PreconditionError("the number of solutions must be at least 1");
  ReasonResult out;
  std::deque<ReasoningDAG> frontier(initial.begin(), initial.end());
  out.stats.peak_frontier_width = frontier.size();

  auto log = [&](const ReasoningDAG& dag, const char* action) {
    out.trace.push_back({{"dag_digest", dag_digest(dag)},
                         {"level", dag.completed_level + 1},
                         {"action", action},
                         {"stats", search_stats_to_json(out.stats)}});
  };

  while (!frontier.empty() && out.completed.size() < options.solutions) {
    ReasoningDAG dag;
    if (options.strategy == SearchStrategy::dfs) {
      dag = std::move(frontier.back());
      frontier.pop_back();
    } else {
      dag = std::move(frontier.front());
      frontier.pop_front();
    }
    ++out.stats.states_visited;
    out.stats.peak_depth = std::max(out.stats.peak_depth, static_cast<std::size_t>(dag.completed_level + 1));

    if (dag.complete()) {
      log(dag, "complete");
      out.completed.push_back(std::move(dag));
      continue;
    }

    std::map<int, std::vector<AnswerPathPair>> options_at_level;
    bool dead = false;
    for (int id : dag.levels[static_cast<std::size_t>(dag.completed_level + 1)]) {
      auto pairs = resolve(dag, dag.subquestion(id));
      if (pairs.empty()) {
        dead = true;
        break;
      }
      options_at_level[id] = std::move(pairs);
    }
    if (dead) {
      log(dag, "prune");
      continue;
    }
    auto assignments = joint_assignments(options_at_level, options.branch_cap);
    log(dag, "expand");
    for (const auto& a : assignments) frontier.push_back(refine(dag, a));
    out.stats.peak_frontier_width = std::max(out.stats.peak_frontier_width, frontier.size());
  }
  return out;
}

}  // namespace hgr
