#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "hgr/anchoring.hpp"
#include "hgr/reasoning.hpp"
#include "hgr/retrieval.hpp"
#include "hgr/scoring.hpp"

namespace hgr {

struct BackendConfig {
  std::string kind = "mock";  // mock | http
  std::string fixtures;       // mock rule file, optional
  std::uint64_t seed = 0;
  std::string url = "http://127.0.0.1:8080";
  std::string path = "/oracle";
  std::string protocol = "native";  // native | chat_completions
  std::string chat_model;
  std::string embedding_model;
  std::string api_key_env;
  std::string prompt_dir = "prompts";
  int timeout_seconds = 60;
  int max_retries = 3;
  int in_flight_cap = 8;
  bool deterministic = true;
};

/// Every tunable of a run. Serialized verbatim into run manifests.
struct RunConfig {
  std::string preset = "full";
  double synonym_threshold = 0.85;
  std::size_t synonym_batch_cap = 20;
  AnchorConfig anchor;
  std::size_t plan_depth = 3;
  std::size_t plan_width = 5;
  std::size_t plan_context_budget = 4000;
  std::size_t initial_plans = 2;
  RetrievalConfig retrieval;
  std::size_t solutions = 2;
  std::size_t branch_cap = 6;
  SearchStrategy strategy = SearchStrategy::dfs;
  std::size_t answer_context_budget = 8000;
  bool grade_answers = true;
  std::size_t workers = 1;
  BackendConfig backend;
};

/// "full" or "lite". Throws DataError for other names.
RunConfig preset_config(const std::string& name);

nlohmann::json config_to_json(const RunConfig& cfg);

/// Overlays `doc` onto `base` (starting from the preset named in `doc`, if
/// any). Unknown keys and out-of-range values throw DataError.
RunConfig config_from_json(const nlohmann::json& doc, const RunConfig& base = {});

/// Throws DataError naming the first offending field.
void validate_config(const RunConfig& cfg);

/// Short SHA-256 of the canonical JSON form.
std::string config_hash(const RunConfig& cfg);

}  // namespace hgr
