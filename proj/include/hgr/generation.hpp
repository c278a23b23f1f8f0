#pragma once

#include <string>
#include <vector>

#include "hgr/oracle/gateway.hpp"
#include "hgr/planning.hpp"

namespace hgr {

/// Answer given when no reasoning DAG could be completed and the oracle
/// offered nothing better.
inline constexpr const char* kNoEvidenceAnswer = "Insufficient evidence in the knowledge graph to answer.";

/// One block per subquestion in (level, id) order:
///   Subquestion <id>: <text>
///   Answer: <answer>
///   Context:
///   <fused context>
/// Blocks are separated by a blank line. Blocks past `budget` characters are
/// dropped; the first block is clipped to the budget instead.
std::string aggregate_dag_knowledge(const ReasoningDAG& dag, std::size_t budget = 8000);

struct CandidateAnswer {
  std::string answer;
  std::string source_dag_digest;
  std::string aggregated_context;
};

struct FinalAnswer {
  std::string answer;
  /// Best first; empty when the answer came from the no-evidence path.
  std::vector<CandidateAnswer> ranked;
  bool no_evidence = false;
};

/// One candidate per completed DAG, ranked by the judge. A judge failure keeps
/// generation order. With no candidates the oracle is asked to answer without
/// graph evidence.
FinalAnswer generate_final_answer(oracle::OracleGateway& gw, const std::string& question,
                                  const std::vector<ReasoningDAG>& completed, std::size_t budget = 8000);

}  // namespace hgr
