#include "hgr/config.hpp"

#include <set>

#include "hgr/digest.hpp"
#include "hgr/errors.hpp"

namespace hgr {

using nlohmann::json;

RunConfig preset_config(const std::string& name) {
  RunConfig cfg;
  if (name == "full") return cfg;
  if (name == "lite") {
    cfg.preset = "lite";
    cfg.plan_depth = 2;
    cfg.initial_plans = 1;
    cfg.solutions = 1;
    cfg.retrieval.lite_mode = true;
    return cfg;
  }
  throw DataError("unknown preset '" + name + "' (expected full or lite)");
}

namespace {

json beam_to_json(std::size_t b) { return b == kUnbounded ? json("unbounded") : json(b); }

std::size_t beam_from_json(const json& v) {
  if (v.is_string() && v.get<std::string>() == "unbounded") return kUnbounded;
  return v.get<std::size_t>();
}

json backend_to_json(const BackendConfig& b) {
  return {{"kind", b.kind},
          {"fixtures", b.fixtures},
          {"seed", b.seed},
          {"url", b.url},
          {"path", b.path},
          {"protocol", b.protocol},
          {"chat_model", b.chat_model},
          {"embedding_model", b.embedding_model},
          {"api_key_env", b.api_key_env},
          {"prompt_dir", b.prompt_dir},
          {"timeout_seconds", b.timeout_seconds},
          {"max_retries", b.max_retries},
          {"in_flight_cap", b.in_flight_cap},
          {"deterministic", b.deterministic}};
}

void backend_from_json(const json& doc, BackendConfig& b) {
  if (!doc.is_object()) throw DataError("config field 'backend' must be an object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "kind") b.kind = v.get<std::string>();
    else if (key == "fixtures") b.fixtures = v.get<std::string>();
    else if (key == "seed") b.seed = v.get<std::uint64_t>();
    else if (key == "url") b.url = v.get<std::string>();
    else if (key == "path") b.path = v.get<std::string>();
    else if (key == "protocol") b.protocol = v.get<std::string>();
    else if (key == "chat_model") b.chat_model = v.get<std::string>();
    else if (key == "embedding_model") b.embedding_model = v.get<std::string>();
    else if (key == "api_key_env") b.api_key_env = v.get<std::string>();
    else if (key == "prompt_dir") b.prompt_dir = v.get<std::string>();
    else if (key == "timeout_seconds") b.timeout_seconds = v.get<int>();
    else if (key == "max_retries") b.max_retries = v.get<int>();
    else if (key == "in_flight_cap") b.in_flight_cap = v.get<int>();
    else if (key == "deterministic") b.deterministic = v.get<bool>();
    else throw DataError("unknown config field 'backend." + key + "'");
  }
}

}  // namespace

json config_to_json(const RunConfig& c) {
  return {{"preset", c.preset},
          {"synonym_threshold", c.synonym_threshold},
          {"synonym_batch_cap", c.synonym_batch_cap},
          {"topic_threshold", c.anchor.theta_v},
          {"target_threshold", c.anchor.theta_e},
          {"topic_k", c.anchor.k_v},
          {"target_k", c.anchor.k_e},
          {"subgraph_depth", c.anchor.d_max},
          {"plan_depth", c.plan_depth},
          {"plan_width", c.plan_width},
          {"plan_context_budget", c.plan_context_budget},
          {"initial_plans", c.initial_plans},
          {"retrieval_depth", c.retrieval.d_max},
          {"beam_width", beam_to_json(c.retrieval.beam)},
          {"entity_gate", c.retrieval.theta_emb},
          {"lite_mode", c.retrieval.lite_mode},
          {"path_shortlist", c.retrieval.path_shortlist},
          {"fusion_budget", c.retrieval.fusion_budget},
          {"aggregator", to_string(c.retrieval.aggregator)},
          {"solutions", c.solutions},
          {"branch_cap", c.branch_cap},
          {"strategy", to_string(c.strategy)},
          {"answer_context_budget", c.answer_context_budget},
          {"grade_answers", c.grade_answers},
          {"workers", c.workers},
          {"backend", backend_to_json(c.backend)}};
}

RunConfig config_from_json(const json& doc, const RunConfig& base) {
  if (!doc.is_object()) throw DataError("config must be a JSON object");
  RunConfig c = base;
  if (doc.contains("preset")) {
    RunConfig preset = preset_config(doc["preset"].get<std::string>());
    preset.backend = c.backend;
    preset.workers = c.workers;
    c = preset;
  }
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "preset") continue;
      else if (key == "synonym_threshold") c.synonym_threshold = v.get<double>();
      else if (key == "synonym_batch_cap") c.synonym_batch_cap = v.get<std::size_t>();
      else if (key == "topic_threshold") c.anchor.theta_v = v.get<double>();
      else if (key == "target_threshold") c.anchor.theta_e = v.get<double>();
      else if (key == "topic_k") c.anchor.k_v = v.get<std::size_t>();
      else if (key == "target_k") c.anchor.k_e = v.get<std::size_t>();
      else if (key == "subgraph_depth") c.anchor.d_max = v.get<std::size_t>();
      else if (key == "plan_depth") c.plan_depth = v.get<std::size_t>();
      else if (key == "plan_width") c.plan_width = v.get<std::size_t>();
      else if (key == "plan_context_budget") c.plan_context_budget = v.get<std::size_t>();
      else if (key == "initial_plans") c.initial_plans = v.get<std::size_t>();
      else if (key == "retrieval_depth") c.retrieval.d_max = v.get<std::size_t>();
      else if (key == "beam_width") c.retrieval.beam = beam_from_json(v);
      else if (key == "entity_gate") c.retrieval.theta_emb = v.get<double>();
      else if (key == "lite_mode") c.retrieval.lite_mode = v.get<bool>();
      else if (key == "path_shortlist") c.retrieval.path_shortlist = v.get<std::size_t>();
      else if (key == "fusion_budget") c.retrieval.fusion_budget = v.get<std::size_t>();
      else if (key == "aggregator") c.retrieval.aggregator = aggregator_from_string(v.get<std::string>());
      else if (key == "solutions") c.solutions = v.get<std::size_t>();
      else if (key == "branch_cap") c.branch_cap = v.get<std::size_t>();
      else if (key == "strategy") c.strategy = search_strategy_from_string(v.get<std::string>());
      else if (key == "answer_context_budget") c.answer_context_budget = v.get<std::size_t>();
      else if (key == "grade_answers") c.grade_answers = v.get<bool>();
      else if (key == "workers") c.workers = v.get<std::size_t>();
      else if (key == "backend") backend_from_json(v, c.backend);
      else throw DataError("unknown config field '" + key + "'");
    }
  } catch (const json::exception& ex) {
    throw DataError(std::string("bad config value: ") + ex.what());
  }
  validate_config(c);
  return c;
}

void validate_config(const RunConfig& c) {
  auto unit = [](double v, const char* name) {
    if (!(v >= -1.0 && v <= 1.0)) throw DataError(std::string("config field '") + name + "' must lie in [-1, 1]");
  };
  auto positive = [](std::size_t v, const char* name) {
    if (v < 1) throw DataError(std::string("config field '") + name + "' must be at least 1");
  };
  unit(c.synonym_threshold, "synonym_threshold");
  unit(c.anchor.theta_v, "topic_threshold");
  unit(c.anchor.theta_e, "target_threshold");
  unit(c.retrieval.theta_emb, "entity_gate");
  positive(c.synonym_batch_cap, "synonym_batch_cap");
  positive(c.anchor.k_v, "topic_k");
  positive(c.anchor.k_e, "target_k");
  positive(c.plan_width, "plan_width");
  positive(c.initial_plans, "initial_plans");
  positive(c.retrieval.d_max, "retrieval_depth");
  positive(c.retrieval.beam, "beam_width");
  positive(c.retrieval.path_shortlist, "path_shortlist");
  positive(c.solutions, "solutions");
  positive(c.branch_cap, "branch_cap");
  positive(c.workers, "workers");
  if (c.backend.kind != "mock" && c.backend.kind != "http")
    throw DataError("config field 'backend.kind' must be mock or http");
  if (c.backend.protocol != "native" && c.backend.protocol != "chat_completions")
    throw DataError("config field 'backend.protocol' must be native or chat_completions");
  if (c.backend.max_retries < 0) throw DataError("config field 'backend.max_retries' must be non-negative");
  if (c.backend.in_flight_cap < 1) throw DataError("config field 'backend.in_flight_cap' must be at least 1");
}

std::string config_hash(const RunConfig& cfg) { return short_digest(config_to_json(cfg).dump()); }

}  // namespace hgr
