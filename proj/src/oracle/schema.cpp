#include "hgr/oracle/schema.hpp"

namespace hgr::oracle {

using nlohmann::json;

namespace {

std::optional<std::string> need(const json& r, const char* field, bool ok, const char* what) {
  if (!r.contains(field)) return std::string("missing field '") + field + "'";
  if (!ok) return std::string("field '") + field + "' must be " + what;
  return std::nullopt;
}

bool string_array(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v)
    if (!x.is_string()) return false;
  return true;
}

bool index_array(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v)
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0) return false;
  return true;
}

std::optional<std::string> check_plan(const json& r) {
  if (!r.contains("plan") || !r["plan"].is_object()) return "missing object 'plan'";
  const json& p = r["plan"];
  if (!p.contains("subquestions") || !p["subquestions"].is_array())
    return "plan.subquestions must be an array";
  for (const auto& q : p["subquestions"]) {
    if (!q.is_object() || !q.contains("id") || !q["id"].is_number_integer())
      return "each subquestion needs an integer 'id'";
    if (!q.contains("text") || !q["text"].is_string()) return "each subquestion needs a string 'text'";
    if (q.contains("topics") && !string_array(q["topics"])) return "subquestion topics must be strings";
  }
  if (!p.contains("deps") || !p["deps"].is_array()) return "plan.deps must be an array";
  for (const auto& d : p["deps"])
    if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer())
      return "each dep must be a pair of integers";
  return std::nullopt;
}

}  // namespace

std::optional<std::string> validate_result(const OracleRequest& request, const json& r) {
  if (!r.is_object()) return "result must be a JSON object";
  if (is_refusal(r)) {
    if (request.kind == OracleKind::Embed) return "embedding requests cannot be refused";
    return std::nullopt;
  }
  switch (request.kind) {
    case OracleKind::Embed: {
      if (!r.contains("vector")) return "missing field 'vector'";
      const json& v = r["vector"];
      if (!v.is_array() || v.empty()) return "field 'vector' must be a non-empty array";
      for (const auto& x : v)
        if (!x.is_number()) return "field 'vector' must hold numbers";
      return std::nullopt;
    }
    case OracleKind::KeywordExtract:
      return need(r, "keywords", r.contains("keywords") && string_array(r["keywords"]), "an array of strings");
    case OracleKind::SynonymJudge:
      return need(r, "members", r.contains("members") && index_array(r["members"]),
                  "an array of member indices");
    case OracleKind::PlanPropose:
    case OracleKind::PlanRefine:
      return check_plan(r);
    case OracleKind::EntityScore: {
      bool ok = r.contains("score") && r["score"].is_number() && r["score"].get<double>() >= 0.0 &&
                r["score"].get<double>() <= 1.0;
      return need(r, "score", ok, "a number in [0, 1]");
    }
    case OracleKind::DirectionSelect:
    case OracleKind::PathSelect:
      return need(r, "picks", r.contains("picks") && index_array(r["picks"]), "an array of indices");
    case OracleKind::StepAnswer:
    case OracleKind::CandidateAnswer:
      return need(r, "answer", r.contains("answer") && r["answer"].is_string(), "a string");
    case OracleKind::FinalJudge: {
      if (request.payload.value("task", "rank") == "grade") {
        bool ok = r.contains("score") && r["score"].is_number() && r["score"].get<double>() >= 0.0 &&
                  r["score"].get<double>() <= 100.0;
        return need(r, "score", ok, "a number in [0, 100]");
      }
      return need(r, "ranking", r.contains("ranking") && index_array(r["ranking"]), "an array of indices");
    }
  }
  return "unknown oracle kind";
}

}  // namespace hgr::oracle
