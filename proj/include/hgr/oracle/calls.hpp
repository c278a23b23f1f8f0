#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgr/oracle/gateway.hpp"
#include "hgr/vector_index.hpp"

// Typed wrappers over OracleGateway::dispatch. A refusal comes back as an
// empty optional (or an empty list where the result is a list).
namespace hgr::oracle {

EmbeddingVector embed(OracleGateway& gw, std::string_view text, std::string_view call_site);

std::vector<std::string> extract_keywords(OracleGateway& gw, std::string_view question,
                                          std::string_view call_site);

struct SynonymMember {
  std::string name;
  std::string description;
};

/// Indices into `members` that the judge confirms as one synonym set.
std::optional<std::vector<std::size_t>> judge_synonyms(OracleGateway& gw, const std::vector<SynonymMember>& members,
                                                       std::string_view call_site);

/// Raw plan object ({subquestions, deps}); parsing lives with the planner.
std::optional<nlohmann::json> propose_plan(OracleGateway& gw, std::string_view question,
                                           const std::vector<std::string>& topics, std::string_view context,
                                           int variant, std::string_view call_site);

std::optional<nlohmann::json> refine_plan(OracleGateway& gw, const nlohmann::json& payload,
                                          std::string_view call_site);

std::optional<double> score_entity(OracleGateway& gw, std::string_view entity, std::string_view description,
                                   std::string_view question, std::string_view call_site);

std::optional<std::vector<std::size_t>> select_directions(OracleGateway& gw, std::string_view question,
                                                          const std::vector<std::string>& candidates,
                                                          std::size_t limit, std::string_view call_site);

std::optional<std::vector<std::size_t>> select_paths(OracleGateway& gw, std::string_view question,
                                                     const std::vector<std::string>& candidates,
                                                     std::string_view call_site);

std::optional<std::string> answer_step(OracleGateway& gw, std::string_view question, std::string_view context,
                                       std::string_view call_site);

std::optional<std::string> candidate_answer(OracleGateway& gw, std::string_view question,
                                            std::string_view context, bool no_evidence,
                                            std::string_view call_site);

struct JudgeCandidate {
  std::string answer;
  std::string context;
};

std::optional<std::vector<std::size_t>> rank_candidates(OracleGateway& gw, std::string_view question,
                                                        const std::vector<JudgeCandidate>& candidates,
                                                        std::string_view call_site);

/// 0-100 quality grade of `answer` against `gold`.
std::optional<double> grade_answer(OracleGateway& gw, std::string_view question, std::string_view answer,
                                   std::string_view gold, std::string_view call_site);

/// Memoizing embedder bound to one call site.
class CachedEmbedder {
 public:
  CachedEmbedder(OracleGateway& gw, std::string call_site) : gw_(&gw), call_site_(std::move(call_site)) {}

  EmbeddingVector operator()(const std::string& text);
  Embedder as_function();

 private:
  OracleGateway* gw_;
  std::string call_site_;
  std::mutex mu_;
  std::map<std::string, EmbeddingVector, std::less<>> memo_;
};

}  // namespace hgr::oracle
