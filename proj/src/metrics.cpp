#include "hgr/metrics.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "hgr/errors.hpp"
#include "hgr/oracle/calls.hpp"
#include "hgr/text_util.hpp"

namespace hgr {

double f1_score(const std::string& prediction, const std::string& gold) {
  return multiset_f1(answer_tokens(prediction), answer_tokens(gold));
}

double retrieval_similarity(const std::string& retrieved, const std::string& gold, const Embedder& embed) {
  if (trim(retrieved).empty() || trim(gold).empty()) return 0.0;
  return std::clamp(cosine_similarity(embed(retrieved), embed(gold)), 0.0, 1.0);
}

std::optional<double> generation_eval(oracle::OracleGateway& judge, const std::string& question,
                                      const std::string& answer, const std::string& gold) {
  try {
    auto s = oracle::grade_answer(judge, question, answer, gold, oracle::site::kEvaluation);
    if (s) return std::clamp(*s, 0.0, 100.0);
  } catch (const OracleError& ex) {
    spdlog::warn("generation grading failed: {}", ex.what());
  }
  return std::nullopt;
}

}  // namespace hgr
