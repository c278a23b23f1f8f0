#include "hgr/oracle/calls.hpp"

#include "hgr/errors.hpp"

namespace hgr::oracle {

using nlohmann::json;

namespace {

json call(OracleGateway& gw, OracleKind kind, json payload, std::string_view site) {
  return gw.dispatch(OracleRequest{kind, std::move(payload), std::string(site)});
}

std::vector<std::size_t> indices(const json& arr) {
  std::vector<std::size_t> out;
  for (const auto& x : arr) out.push_back(x.get<std::size_t>());
  return out;
}

}  // namespace

EmbeddingVector embed(OracleGateway& gw, std::string_view text, std::string_view call_site) {
  json r = call(gw, OracleKind::Embed, {{"text", text}}, call_site);
  return EmbeddingVector(r["vector"].get<std::vector<float>>());
}

std::vector<std::string> extract_keywords(OracleGateway& gw, std::string_view question,
                                          std::string_view call_site) {
  json r = call(gw, OracleKind::KeywordExtract, {{"question", question}}, call_site);
  if (is_refusal(r)) return {};
  return r["keywords"].get<std::vector<std::string>>();
}

std::optional<std::vector<std::size_t>> judge_synonyms(OracleGateway& gw, const std::vector<SynonymMember>& members,
                                                       std::string_view call_site) {
  json list = json::array();
  for (const auto& m : members) list.push_back({{"name", m.name}, {"description", m.description}});
  json r = call(gw, OracleKind::SynonymJudge, {{"entities", std::move(list)}}, call_site);
  if (is_refusal(r)) return std::nullopt;
  return indices(r["members"]);
}

std::optional<json> propose_plan(OracleGateway& gw, std::string_view question,
                                 const std::vector<std::string>& topics, std::string_view context, int variant,
                                 std::string_view call_site) {
  json r = call(gw, OracleKind::PlanPropose,
                {{"question", question}, {"topics", topics}, {"context", context}, {"variant", variant}},
                call_site);
  if (is_refusal(r)) return std::nullopt;
  return r["plan"];
}

std::optional<json> refine_plan(OracleGateway& gw, const json& payload, std::string_view call_site) {
  json r = call(gw, OracleKind::PlanRefine, payload, call_site);
  if (is_refusal(r)) return std::nullopt;
  return r["plan"];
}

std::optional<double> score_entity(OracleGateway& gw, std::string_view entity, std::string_view description,
                                   std::string_view question, std::string_view call_site) {
  json r = call(gw, OracleKind::EntityScore,
                {{"entity", entity}, {"description", description}, {"question", question}}, call_site);
  if (is_refusal(r)) return std::nullopt;
  return r["score"].get<double>();
}

std::optional<std::vector<std::size_t>> select_directions(OracleGateway& gw, std::string_view question,
                                                          const std::vector<std::string>& candidates,
                                                          std::size_t limit, std::string_view call_site) {
  json r = call(gw, OracleKind::DirectionSelect,
                {{"question", question}, {"candidates", candidates}, {"limit", limit}}, call_site);
  if (is_refusal(r)) return std::nullopt;
  return indices(r["picks"]);
}

std::optional<std::vector<std::size_t>> select_paths(OracleGateway& gw, std::string_view question,
                                                     const std::vector<std::string>& candidates,
                                                     std::string_view call_site) {
  json r = call(gw, OracleKind::PathSelect, {{"question", question}, {"candidates", candidates}}, call_site);
  if (is_refusal(r)) return std::nullopt;
  return indices(r["picks"]);
}

std::optional<std::string> answer_step(OracleGateway& gw, std::string_view question, std::string_view context,
                                       std::string_view call_site) {
  json r = call(gw, OracleKind::StepAnswer, {{"question", question}, {"context", context}}, call_site);
  if (is_refusal(r)) return std::nullopt;
  return r["answer"].get<std::string>();
}

std::optional<std::string> candidate_answer(OracleGateway& gw, std::string_view question,
                                            std::string_view context, bool no_evidence,
                                            std::string_view call_site) {
  json r = call(gw, OracleKind::CandidateAnswer,
                {{"question", question}, {"context", context}, {"no_evidence", no_evidence}}, call_site);
  if (is_refusal(r)) return std::nullopt;
  return r["answer"].get<std::string>();
}

std::optional<std::vector<std::size_t>> rank_candidates(OracleGateway& gw, std::string_view question,
                                                        const std::vector<JudgeCandidate>& candidates,
                                                        std::string_view call_site) {
  json list = json::array();
  for (const auto& c : candidates) list.push_back({{"answer", c.answer}, {"context", c.context}});
  json r = call(gw, OracleKind::FinalJudge,
                {{"task", "rank"}, {"question", question}, {"candidates", std::move(list)}}, call_site);
  if (is_refusal(r)) return std::nullopt;
  return indices(r["ranking"]);
}

std::optional<double> grade_answer(OracleGateway& gw, std::string_view question, std::string_view answer,
                                   std::string_view gold, std::string_view call_site) {
  json r = call(gw, OracleKind::FinalJudge,
                {{"task", "grade"}, {"question", question}, {"answer", answer}, {"gold", gold}}, call_site);
  if (is_refusal(r)) return std::nullopt;
  return r["score"].get<double>();
}

EmbeddingVector CachedEmbedder::operator()(const std::string& text) {
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find(text);
    if (it != memo_.end()) return it->second;
  }
  EmbeddingVector v = embed(*gw_, text, call_site_);
  std::lock_guard lock(mu_);
  return memo_.emplace(text, std::move(v)).first->second;
}

Embedder CachedEmbedder::as_function() {
  return [this](const std::string& text) { return (*this)(text); };
}

}  // namespace hgr::oracle
