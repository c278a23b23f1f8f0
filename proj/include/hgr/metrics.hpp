#pragma once

#include <optional>
#include <string>

#include "hgr/oracle/gateway.hpp"
#include "hgr/vector_index.hpp"

namespace hgr {

/// Token-level F1 after extractive-QA normalization (case folded, punctuation
/// and articles removed). Both empty gives 1, exactly one empty gives 0.
double f1_score(const std::string& prediction, const std::string& gold);

/// Cosine of the two texts' embeddings clamped to [0, 1]; 0 if either is blank.
double retrieval_similarity(const std::string& retrieved, const std::string& gold, const Embedder& embed);

/// Judge grade in [0, 100], or nullopt when the judge refuses or fails.
std::optional<double> generation_eval(oracle::OracleGateway& judge, const std::string& question,
                                      const std::string& answer, const std::string& gold);

}  // namespace hgr
