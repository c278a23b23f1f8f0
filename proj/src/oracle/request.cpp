#include "hgr/oracle/request.hpp"

#include <array>
#include <utility>

#include "hgr/errors.hpp"

namespace hgr::oracle {

namespace {
constexpr std::array<std::pair<OracleKind, const char*>, 11> kNames = {{
    {OracleKind::Embed, "Embed"},
    {OracleKind::KeywordExtract, "KeywordExtract"},
    {OracleKind::SynonymJudge, "SynonymJudge"},
    {OracleKind::PlanPropose, "PlanPropose"},
    {OracleKind::PlanRefine, "PlanRefine"},
    {OracleKind::EntityScore, "EntityScore"},
    {OracleKind::DirectionSelect, "DirectionSelect"},
    {OracleKind::PathSelect, "PathSelect"},
    {OracleKind::StepAnswer, "StepAnswer"},
    {OracleKind::CandidateAnswer, "CandidateAnswer"},
    {OracleKind::FinalJudge, "FinalJudge"},
}};
}  // namespace

const char* to_string(OracleKind kind) noexcept {
  for (const auto& [k, n] : kNames)
    if (k == kind) return n;
  return "?";
}

OracleKind oracle_kind_from_string(std::string_view s) {
  for (const auto& [k, n] : kNames)
    if (s == n) return k;
  throw OracleError("unknown oracle kind '" + std::string(s) + "'");
}

bool is_refusal(const nlohmann::json& result) {
  return result.is_object() && result.contains("refusal") && result["refusal"] == true;
}

}  // namespace hgr::oracle
