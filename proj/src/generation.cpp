#include "hgr/generation.hpp"

#include <algorithm>
#include <set>

#include <spdlog/spdlog.h>

#include "hgr/errors.hpp"
#include "hgr/oracle/calls.hpp"
#include "hgr/text_util.hpp"

namespace hgr {

std::string aggregate_dag_knowledge(const ReasoningDAG& dag, std::size_t budget) {
  std::string out;
  for (const auto& level : dag.levels)
    for (int id : level) {
      const Subquestion& sq = dag.subquestion(id);
      std::string block = "Subquestion " + std::to_string(id) + ": " + sq.text + "\n";
      auto it = dag.ap.find(id);
      if (it != dag.ap.end() && !it->second.empty()) {
        block += "Answer: " + it->second.front().answer + "\nContext:\n" + it->second.front().context;
      } else {
        block += "Answer:";
      }
      std::string sep = out.empty() ? "" : "\n\n";
      if (out.size() + sep.size() + block.size() > budget) {
        if (out.empty()) out = block.substr(0, budget);
        return out;
      }
      out += sep + block;
    }
  return out;
}

FinalAnswer generate_final_answer(oracle::OracleGateway& gw, const std::string& question,
                                  const std::vector<ReasoningDAG>& completed, std::size_t budget) {
  FinalAnswer out;
  std::vector<CandidateAnswer> candidates;
  for (const auto& dag : completed) {
    std::string context = aggregate_dag_knowledge(dag, budget);
    std::optional<std::string> answer;
    try {
      answer = oracle::candidate_answer(gw, question, context, false, oracle::site::kGeneration);
    } catch (const OracleError& ex) {
      spdlog::warn("candidate answer failed: {}", ex.what());
    }
    if (!answer || trim(*answer).empty()) continue;
    candidates.push_back({trim(*answer), dag_digest(dag), std::move(context)});
  }

  if (candidates.empty()) {
    out.no_evidence = true;
    std::optional<std::string> answer;
    try {
      answer = oracle::candidate_answer(gw, question, "", true, oracle::site::kGeneration);
    } catch (const OracleError& ex) {
      spdlog::warn("no-evidence answer failed: {}", ex.what());
    }
    out.answer = answer && !trim(*answer).empty() ? trim(*answer) : kNoEvidenceAnswer;
    return out;
  }

  std::vector<std::size_t> order;
  if (candidates.size() > 1) {
    std::vector<oracle::JudgeCandidate> shown;
    for (const auto& c : candidates) shown.push_back({c.answer, c.aggregated_context});
    try {
      if (auto ranking = oracle::rank_candidates(gw, question, shown, oracle::site::kGeneration)) {
        std::set<std::size_t> seen;
        for (std::size_t i : *ranking)
          if (i < candidates.size() && seen.insert(i).second) order.push_back(i);
      }
    } catch (const OracleError& ex) {
      spdlog::warn("final judge failed: {}", ex.what());
    }
  }
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
  for (std::size_t i : order) out.ranked.push_back(candidates[i]);
  out.answer = out.ranked.front().answer;
  return out;
}

}  // namespace hgr
