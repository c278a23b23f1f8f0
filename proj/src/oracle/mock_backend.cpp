#include "hgr/oracle/mock_backend.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "hgr/errors.hpp"
#include "hgr/text_util.hpp"

namespace hgr::oracle {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = 14695981039346656037ULL ^ (seed * 0x9E3779B97F4A7C15ULL);
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

const std::set<std::string, std::less<>> kSections = {
    "aliases",          "keywords",    "plans",        "refinements",       "entity_scores",
    "direction_preferences", "sufficient", "step_answers", "candidate_answers", "judge_preferences",
    "refuse",           "comment"};

json refusal(std::string reason) { return {{"refusal", true}, {"reason", std::move(reason)}}; }

double round2(double x) { return std::round(x * 100.0) / 100.0; }

std::string last_prefixed_line(const std::string& text, std::string_view prefix) {
  std::string found;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    if (line.starts_with(prefix)) {
      std::string t = trim(line.substr(prefix.size()));
      if (!t.empty()) found = std::move(t);
    }
    pos = end + 1;
  }
  return found;
}

}  // namespace

EmbeddingVector mock_embedding(std::string_view text, std::size_t dim, std::uint64_t seed) {
  std::vector<float> v(dim, 0.0f);
  std::string padded = " " + fold_text(text) + " ";
  if (padded.size() <= 2) {
    v[fnv1a("<empty>", seed) % dim] = 1.0f;
    return EmbeddingVector(std::move(v));
  }
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) v[fnv1a(std::string_view(padded).substr(i, 3), seed) % dim] += 1.0f;
  return EmbeddingVector(std::move(v)).normalized();
}

MockFixtures::MockFixtures(json doc) : doc_(std::move(doc)) {
  if (!doc_.is_object()) throw DataError("mock fixtures must be a JSON object");
  for (const auto& [key, value] : doc_.items()) {
    if (!kSections.contains(key)) throw DataError("unknown mock fixture section '" + key + "'");
    if (key != "comment" && !value.is_array()) throw DataError("mock fixture section '" + key + "' must be an array");
  }
}

MockFixtures MockFixtures::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open mock fixtures " + path.string());
  try {
    return MockFixtures(json::parse(in));
  } catch (const json::exception& ex) {
    throw DataError("cannot parse mock fixtures " + path.string() + ": " + ex.what());
  }
}

const json& MockFixtures::section(std::string_view name) const {
  static const json empty = json::array();
  auto it = doc_.find(std::string(name));
  return it == doc_.end() ? empty : *it;
}

const json* MockBackend::first_rule(std::string_view section, const std::string& question) const {
  for (const auto& rule : fixtures_.section(section))
    if (folded_contains(question, rule.value("match", ""))) return &rule;
  return nullptr;
}

BackendReply MockBackend::invoke(const OracleRequest& request) {
  const json& p = request.payload;
  for (const auto& k : fixtures_.section("refuse"))
    if (k.get<std::string>() == to_string(request.kind) && request.kind != OracleKind::Embed)
      return {refusal("fixture refuses this kind"), std::nullopt};

  json result;
  switch (request.kind) {
    case OracleKind::Embed: {
      auto v = mock_embedding(p.at("text").get<std::string>(), dim_, seed_);
      result = {{"vector", std::vector<float>(v.values().begin(), v.values().end())}};
      break;
    }
    case OracleKind::KeywordExtract: result = keywords(p); break;
    case OracleKind::SynonymJudge: result = synonyms(p); break;
    case OracleKind::PlanPropose: result = propose(p); break;
    case OracleKind::PlanRefine: result = refine(p); break;
    case OracleKind::EntityScore: result = entity_score(p); break;
    case OracleKind::DirectionSelect: result = directions(p); break;
    case OracleKind::PathSelect: result = paths(p); break;
    case OracleKind::StepAnswer: result = step_answer(p); break;
    case OracleKind::CandidateAnswer: result = candidate(p); break;
    case OracleKind::FinalJudge: result = judge(p); break;
  }
  return {std::move(result), std::nullopt};
}

std::vector<std::string> MockBackend::default_keywords(const std::string& question) const {
  std::vector<std::string> out;
  for (auto& t : content_tokens(question))
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
  return out;
}

json MockBackend::keywords(const json& p) const {
  std::string q = p.at("question").get<std::string>();
  if (const json* rule = first_rule("keywords", q)) return {{"keywords", rule->at("keywords")}};
  return {{"keywords", default_keywords(q)}};
}

// Members fold-equal to each other, or listed in one alias group, share a key.
// The judge confirms the largest keyed group with at least two members.
json MockBackend::synonyms(const json& p) const {
  const json& ents = p.at("entities");
  std::map<std::string, int> alias_group;
  int g = 0;
  for (const auto& group : fixtures_.section("aliases")) {
    for (const auto& name : group) alias_group.emplace(fold_text(name.get<std::string>()), g);
    ++g;
  }
  std::map<std::string, std::vector<std::size_t>> keyed;
  for (std::size_t i = 0; i < ents.size(); ++i) {
    std::string f = fold_text(ents[i].at("name").get<std::string>());
    auto it = alias_group.find(f);
    keyed[it != alias_group.end() ? "#" + std::to_string(it->second) : f].push_back(i);
  }
  std::vector<std::size_t> best;
  for (const auto& [key, members] : keyed)
    if (members.size() >= 2 && (members.size() > best.size() || (members.size() == best.size() && members < best)))
      best = members;
  return {{"synonymous", !best.empty()}, {"members", best}};
}

json MockBackend::propose(const json& p) const {
  std::string q = p.at("question").get<std::string>();
  if (const json* rule = first_rule("plans", q)) {
    const json& plans = rule->at("plans");
    if (plans.empty()) return refusal("fixture has no plans");
    auto variant = static_cast<std::size_t>(std::max(0, p.value("variant", 0)));
    return {{"plan", plans[variant % plans.size()]}};
  }
  json sub = {{"id", 0}, {"text", q}, {"topics", default_keywords(q)}};
  return {{"plan", {{"subquestions", json::array({sub})}, {"deps", json::array()}}}};
}

json MockBackend::refine(const json& p) const {
  std::string q = p.at("question").get<std::string>();
  int level = p.value("completed_level", -1);
  for (const auto& rule : fixtures_.section("refinements"))
    if (folded_contains(q, rule.value("match", "")) && rule.value("after_level", -2) == level)
      return {{"plan", rule.at("plan")}};
  return refusal("no refinement");
}

json MockBackend::entity_score(const json& p) const {
  std::string entity = p.at("entity").get<std::string>();
  std::string q = p.at("question").get<std::string>();
  for (const auto& rule : fixtures_.section("entity_scores"))
    if (fold_text(rule.value("entity", "")) == fold_text(entity) && folded_contains(q, rule.value("match", "")))
      return {{"score", rule.at("score")}};
  std::string desc = p.value("description", "");
  double s = cosine_similarity(mock_embedding(entity + " " + desc, dim_, seed_), mock_embedding(q, dim_, seed_));
  return {{"score", round2(std::clamp(s, 0.0, 1.0))}};
}

json MockBackend::directions(const json& p) const {
  const json& cands = p.at("candidates");
  std::size_t limit = p.value("limit", cands.size());
  std::vector<std::pair<int, std::size_t>> order;
  const json* rule = first_rule("direction_preferences", p.at("question").get<std::string>());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    int rank = 1;
    if (rule)
      for (const auto& pref : rule->at("prefer"))
        if (folded_contains(cands[i].get<std::string>(), pref.get<std::string>())) rank = 0;
    order.emplace_back(rank, i);
  }
  std::stable_sort(order.begin(), order.end());
  json picks = json::array();
  for (std::size_t i = 0; i < order.size() && i < limit; ++i) picks.push_back(order[i].second);
  return {{"picks", picks}};
}

json MockBackend::paths(const json& p) const {
  const json& cands = p.at("candidates");
  std::string q = p.at("question").get<std::string>();
  json picks = json::array();
  if (const json* rule = first_rule("sufficient", q)) {
    for (std::size_t i = 0; i < cands.size(); ++i) {
      bool all = true;
      for (const auto& req : rule->at("require"))
        all = all && folded_contains(cands[i].get<std::string>(), req.get<std::string>());
      if (all) picks.push_back(i);
    }
    return {{"picks", picks}};
  }
  auto wanted = content_tokens(q);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    auto have = content_tokens(cands[i].get<std::string>());
    std::set<std::string> have_set(have.begin(), have.end());
    std::size_t hit = 0;
    for (const auto& w : wanted) hit += have_set.contains(w) ? 1 : 0;
    if (!wanted.empty() && 2 * hit >= wanted.size()) picks.push_back(i);
  }
  return {{"picks", picks}};
}

json MockBackend::step_answer(const json& p) const {
  std::string q = p.at("question").get<std::string>();
  std::string ctx = p.at("context").get<std::string>();
  for (const auto& rule : fixtures_.section("step_answers"))
    if (folded_contains(q, rule.value("match", "")) && folded_contains(ctx, rule.value("context_contains", "")))
      return {{"answer", rule.at("answer")}};
  std::string last = last_prefixed_line(ctx, "[edge] ");
  if (last.empty()) last = last_prefixed_line(ctx, "");
  if (last.empty()) return refusal("no evidence in context");
  return {{"answer", last}};
}

json MockBackend::candidate(const json& p) const {
  std::string q = p.at("question").get<std::string>();
  std::string ctx = p.at("context").get<std::string>();
  for (const auto& rule : fixtures_.section("candidate_answers"))
    if (folded_contains(q, rule.value("match", "")) && folded_contains(ctx, rule.value("context_contains", "")))
      return {{"answer", rule.at("answer")}};
  if (p.value("no_evidence", false)) return {{"answer", "Insufficient evidence in the knowledge graph to answer."}};
  std::string last = last_prefixed_line(ctx, "Answer: ");
  if (last.empty()) return refusal("no answer in context");
  return {{"answer", last}};
}

// Ranking: fixture preference first, then by the share of answer tokens that
// also occur in the candidate's own context (consistency with its path).
json MockBackend::judge(const json& p) const {
  std::string q = p.at("question").get<std::string>();
  if (p.value("task", "rank") == "grade") {
    double f1 = multiset_f1(answer_tokens(p.at("answer").get<std::string>()),
                            answer_tokens(p.at("gold").get<std::string>()));
    if (p.at("answer").get<std::string>().empty()) f1 = 0.0;
    return {{"score", std::round(100.0 * f1)}};
  }
  const json& cands = p.at("candidates");
  const json* rule = first_rule("judge_preferences", q);
  std::vector<std::tuple<int, double, std::size_t>> order;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    std::string ans = cands[i].at("answer").get<std::string>();
    int pref = rule && folded_contains(ans, rule->value("prefer", "")) ? 0 : 1;
    auto toks = answer_tokens(ans);
    auto ctx = answer_tokens(cands[i].at("context").get<std::string>());
    std::set<std::string> ctx_set(ctx.begin(), ctx.end());
    std::size_t hit = 0;
    for (const auto& t : toks) hit += ctx_set.contains(t) ? 1 : 0;
    double consistency = toks.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(toks.size());
    order.emplace_back(pref, -consistency, i);
  }
  std::sort(order.begin(), order.end());
  json ranking = json::array();
  for (const auto& o : order) ranking.push_back(std::get<2>(o));
  return {{"ranking", ranking}};
}

}  // namespace hgr::oracle
