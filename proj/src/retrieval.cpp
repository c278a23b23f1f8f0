#include "hgr/retrieval.hpp"

#include <algorithm>
#include <set>

#include <spdlog/spdlog.h>

#include "hgr/digest.hpp"
#include "hgr/errors.hpp"
#include "hgr/oracle/calls.hpp"
#include "hgr/text_util.hpp"

namespace hgr {

double entity_weight(double relevance, double theta_emb, bool lite_mode,
                     const std::function<std::optional<double>()>& llm) {
  if (relevance < theta_emb) return 0.0;
  double fallback = std::clamp(relevance, 0.0, 1.0);
  if (lite_mode || !llm) return fallback;
  std::optional<double> s = llm();
  return s ? std::clamp(*s, 0.0, 1.0) : fallback;
}

EntityWeigher::EntityWeigher(const KnowledgeHypergraph& hq, EntityScoreFn relevance, std::string subquestion,
                             oracle::OracleGateway* gw, double theta_emb, bool lite_mode)
    : hq_(&hq),
      relevance_(std::move(relevance)),
      subquestion_(std::move(subquestion)),
      gw_(gw),
      theta_emb_(theta_emb),
      lite_mode_(lite_mode) {}

double EntityWeigher::operator()(EntityId v) {
  auto it = memo_.find(v);
  if (it != memo_.end()) return it->second;
  std::function<std::optional<double>()> llm;
  if (gw_)
    llm = [&]() -> std::optional<double> {
      const Entity& ent = hq_->entity(v);
      ++oracle_calls_;
      try {
        return oracle::score_entity(*gw_, ent.name, ent.description, subquestion_, oracle::site::kRetrieval);
      } catch (const OracleError& ex) {
        spdlog::warn("entity scoring failed for '{}': {}", ent.name, ex.what());
        return std::nullopt;
      }
    };
  double w = entity_weight(relevance_(v), theta_emb_, lite_mode_, llm);
  memo_.emplace(v, w);
  return w;
}

void rank_directions(std::vector<ScoredDirection>& candidates) {
  std::sort(candidates.begin(), candidates.end(), [](const ScoredDirection& a, const ScoredDirection& b) {
    if (a.ewo != b.ewo) return a.ewo > b.ewo;
    if (a.terminal != b.terminal) return a.terminal < b.terminal;
    return a.path < b.path;
  });
}

std::vector<ScoredDirection> select_directions(std::vector<ScoredDirection> candidates, std::size_t b,
                                               const DirectionPicker& picker) {
  if (b == 0) throw PreconditionError("beam width must be at least 1");
  rank_directions(candidates);
  auto top_b = [&] {
    if (candidates.size() > b) candidates.resize(b);
    return candidates;
  };
  if (!picker || candidates.empty()) return top_b();
  std::size_t shown = b > candidates.size() / 2 ? candidates.size() : 2 * b;
  std::vector<ScoredDirection> shortlist(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(shown));
  auto picks = picker(shortlist, b);
  if (!picks) return top_b();
  std::vector<ScoredDirection> out;
  std::set<std::size_t> taken;
  for (std::size_t i : *picks) {
    if (i >= shortlist.size() || !taken.insert(i).second) continue;
    out.push_back(shortlist[i]);
    if (out.size() == b) break;
  }
  return out;
}

std::vector<ScoredPath> select_paths(std::vector<ScoredPath> candidates, std::size_t shortlist,
                                     const PathPicker& picker) {
  std::sort(candidates.begin(), candidates.end(), [](const ScoredPath& a, const ScoredPath& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.path < b.path;
  });
  if (candidates.size() > shortlist) candidates.resize(shortlist);
  if (candidates.empty()) return {};
  std::vector<ScoredPath> out;
  if (!picker) {
    std::size_t n = candidates.size();
    double median = n % 2 ? candidates[n / 2].score : (candidates[n / 2 - 1].score + candidates[n / 2].score) / 2.0;
    for (const auto& c : candidates)
      if (c.score > 0.0 && c.score >= median) out.push_back(c);
    return out;
  }
  std::vector<ReasoningPath> shown;
  for (const auto& c : candidates) shown.push_back(c.path);
  auto picks = picker(shown);
  if (!picks) return {};
  std::set<std::size_t> taken;
  for (std::size_t i : *picks)
    if (i < candidates.size() && taken.insert(i).second) out.push_back(candidates[i]);
  return out;
}

BeamSearchResult beam_search(const KnowledgeHypergraph& g, const EdgeSet& seeds, const EdgeSet& targets,
                             const EntityScoreFn& weight, const RetrievalConfig& cfg,
                             const DirectionPicker& directions, const PathPicker& paths) {
  BeamSearchResult out;
  std::vector<ReasoningPath> frontier;
  for (HyperedgeId e : seeds)
    if (g.has_edge(e)) frontier.push_back(ReasoningPath{{e}});

  for (std::size_t d = 1; d <= cfg.d_max && !frontier.empty(); ++d) {
    if (d > 1) {
      std::vector<ScoredDirection> cands;
      for (const auto& p : frontier)
        for (HyperedgeId n : g.neighbors(p.back())) {
          if (p.contains(n)) continue;
          ReasoningPath next = p;
          next.edges.push_back(n);
          cands.push_back({std::move(next), n, overlap_score(g, n, p.back(), weight, cfg.aggregator)});
        }
      frontier.clear();
      for (auto& dir : select_directions(std::move(cands), cfg.beam, directions))
        frontier.push_back(std::move(dir.path));
      if (frontier.empty()) break;
    }
    std::set<ReasoningPath> candidate_set;
    for (const auto& p : frontier) {
      out.visited.insert(p.edges.begin(), p.edges.end());
      candidate_set.insert(p);
      for (std::size_t len = 1; len < p.length(); ++len)
        if (targets.contains(p.edges[len - 1]))
          candidate_set.insert(ReasoningPath{{p.edges.begin(), p.edges.begin() + static_cast<std::ptrdiff_t>(len)}});
    }
    std::vector<ScoredPath> scored;
    for (const auto& p : candidate_set) scored.push_back({p, path_score(g, p, weight, cfg.aggregator)});
    auto chosen = select_paths(std::move(scored), cfg.path_shortlist, paths);
    if (!chosen.empty()) {
      out.selected = std::move(chosen);
      out.stop_depth = d;
      return out;
    }
  }
  return out;
}

std::string render_path(const KnowledgeHypergraph& g, const ReasoningPath& p) {
  std::string s;
  for (std::size_t i = 0; i < p.edges.size(); ++i) s += (i ? " -> " : "") + g.edge(p.edges[i]).name;
  return s;
}

std::string fuse_knowledge(const KnowledgeHypergraph& g, const ReasoningPath& p, const ChunkStore* chunks,
                           bool lite_mode, std::size_t budget, const EntityScoreFn& weight) {
  if (lite_mode) {
    std::string s;
    for (std::size_t i = 0; i < p.edges.size(); ++i) s += (i ? "\n" : "") + g.edge(p.edges[i]).name;
    return s;
  }
  std::vector<std::string> edge_lines, chunk_lines;
  std::vector<std::pair<EntityId, std::string>> entity_lines;
  std::set<EntityId> seen_entities;
  std::set<std::string> seen_chunks;
  for (HyperedgeId e : p.edges) {
    const Hyperedge& he = g.edge(e);
    edge_lines.push_back("[edge] " + he.name);
    for (EntityId v : he.entities) {
      if (!seen_entities.insert(v).second) continue;
      const Entity& ent = g.entity(v);
      std::string line = "[entity] " + ent.name;
      if (!ent.aliases.empty()) {
        line += " (also:";
        for (std::size_t i = 0; i < ent.aliases.size(); ++i) line += (i ? ", " : " ") + ent.aliases[i].name;
        line += ")";
      }
      std::string desc = ent.description;
      for (const auto& a : ent.aliases)
        if (!a.description.empty()) desc += (desc.empty() ? "" : " ") + a.description;
      if (!desc.empty()) line += ": " + desc;
      entity_lines.emplace_back(v, std::move(line));
    }
    if (he.source_ref && seen_chunks.insert(*he.source_ref).second) {
      const std::string* text = chunks ? chunks->find(*he.source_ref) : nullptr;
      if (text)
        chunk_lines.push_back("[chunk " + *he.source_ref + "] " + *text);
      else if (chunks)
        spdlog::warn("chunk '{}' is missing from the chunk store", *he.source_ref);
    }
  }

  auto total = [&] {
    std::size_t n = 0;
    for (const auto& l : edge_lines) n += l.size() + 1;
    for (const auto& [v, l] : entity_lines) n += l.size() + 1;
    for (const auto& l : chunk_lines) n += l.size() + 1;
    return n;
  };
  if (total() > budget) {
    std::vector<std::pair<double, std::size_t>> by_weight;
    for (std::size_t i = 0; i < entity_lines.size(); ++i)
      by_weight.emplace_back(weight ? weight(entity_lines[i].first) : 0.0, i);
    // Lowest weight first; among equals the later line goes first.
    std::sort(by_weight.begin(), by_weight.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return a.second > b.second;
    });
    std::set<std::size_t> dropped;
    std::size_t size = total();
    for (const auto& [w, i] : by_weight) {
      if (size <= budget) break;
      size -= entity_lines[i].second.size() + 1;
      dropped.insert(i);
    }
    std::vector<std::pair<EntityId, std::string>> kept;
    for (std::size_t i = 0; i < entity_lines.size(); ++i)
      if (!dropped.contains(i)) kept.push_back(std::move(entity_lines[i]));
    entity_lines = std::move(kept);
    while (size > budget && !chunk_lines.empty()) {
      size -= chunk_lines.back().size() + 1;
      chunk_lines.pop_back();
    }
  }

  std::string out;
  auto append = [&](const std::string& line) {
    if (!out.empty()) out += '\n';
    out += line;
  };
  for (const auto& l : edge_lines) append(l);
  for (const auto& [v, l] : entity_lines) append(l);
  for (const auto& l : chunk_lines) append(l);
  return out;
}

RetrievalOutcome retrieve_answers_with_paths(const RetrievalEnv& env, const Subquestion& sq) {
  if (!env.hq || !env.indexes) throw PreconditionError("retrieval needs a question subgraph and its indexes");
  RetrievalOutcome out;
  const KnowledgeHypergraph& g = env.hq->graph;

  std::vector<std::string> keywords;
  if (env.gw) keywords = extract_keywords(*env.gw, sq.text, oracle::site::kRetrieval);
  for (const auto& t : sq.topics)
    if (std::find(keywords.begin(), keywords.end(), t) == keywords.end()) keywords.push_back(t);
  out.anchors = anchor_in_subgraph(keywords, sq.text, *env.indexes, env.anchor, env.embed);
  if (out.anchors.empty()) return out;

  EdgeSet seeds = out.anchors.targets;
  for (EntityId v : out.anchors.topics) {
    const auto& inc = g.incident_edges(v);
    seeds.insert(inc.begin(), inc.end());
  }

  EmbeddingRelevance relevance(env.indexes->indexes.entity_desc, env.embed(sq.text));
  EntityWeigher weigher(g, [&](EntityId v) { return relevance(v); }, sq.text, env.gw, env.cfg.theta_emb,
                        env.cfg.lite_mode);
  EntityScoreFn weight = weigher.as_function();

  DirectionPicker directions;
  PathPicker paths;
  if (!env.cfg.lite_mode && env.gw) {
    directions = [&](const std::vector<ScoredDirection>& shortlist, std::size_t b)
        -> std::optional<std::vector<std::size_t>> {
      std::vector<std::string> shown;
      for (const auto& d : shortlist) shown.push_back(render_path(g, d.path));
      try {
        return oracle::select_directions(*env.gw, sq.text, shown, b, oracle::site::kRetrieval);
      } catch (const OracleError& ex) {
        spdlog::warn("direction selection failed: {}", ex.what());
        return std::nullopt;
      }
    };
  }
  if (env.gw && !env.cfg.lite_mode) {
    paths = [&](const std::vector<ReasoningPath>& shortlist) -> std::optional<std::vector<std::size_t>> {
      std::vector<std::string> shown;
      for (const auto& p : shortlist) shown.push_back(render_path(g, p));
      try {
        return oracle::select_paths(*env.gw, sq.text, shown, oracle::site::kRetrieval);
      } catch (const OracleError& ex) {
        spdlog::warn("path selection failed: {}", ex.what());
        return std::nullopt;
      }
    };
  }

  BeamSearchResult found = beam_search(g, seeds, out.anchors.targets, weight, env.cfg, directions, paths);
  out.stop_depth = found.stop_depth;
  out.visited_edges = found.visited.size();
  for (const auto& sp : found.selected) {
    std::string context = fuse_knowledge(g, sp.path, env.chunks, env.cfg.lite_mode, env.cfg.fusion_budget, weight);
    std::optional<std::string> answer;
    if (env.gw) {
      try {
        answer = oracle::answer_step(*env.gw, sq.text, context, oracle::site::kRetrieval);
      } catch (const OracleError& ex) {
        spdlog::warn("step answering failed: {}", ex.what());
      }
    }
    if (!answer || trim(*answer).empty()) continue;
    out.pairs.push_back({*answer, sp.path, context, short_digest(context), sp.score});
  }
  return out;
}

}  // namespace hgr
