#pragma once

#include <string>

#include "hgr/hypergraph.hpp"

namespace hgr {

/// An answer to one subquestion together with the path that supports it.
struct AnswerPathPair {
  std::string answer;
  ReasoningPath path;
  /// Fused knowledge the answer was generated from.
  std::string context;
  std::string context_digest;
  /// Path score of `path` for the subquestion.
  double score = 0.0;

  friend bool operator==(const AnswerPathPair&, const AnswerPathPair&) = default;
};

}  // namespace hgr
