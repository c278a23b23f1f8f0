#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace hgr::oracle {

enum class OracleKind {
  Embed,
  KeywordExtract,
  SynonymJudge,
  PlanPropose,
  PlanRefine,
  EntityScore,
  DirectionSelect,
  PathSelect,
  StepAnswer,
  CandidateAnswer,
  FinalJudge,
};

const char* to_string(OracleKind kind) noexcept;
OracleKind oracle_kind_from_string(std::string_view s);

/// Module tags used for metering.
namespace site {
inline constexpr std::string_view kEmbedIndex = "embed-index";
inline constexpr std::string_view kConstruction = "construction";
inline constexpr std::string_view kAnchoring = "anchoring";
inline constexpr std::string_view kPlanning = "planning";
inline constexpr std::string_view kReasoning = "reasoning";
inline constexpr std::string_view kRetrieval = "retrieval";
inline constexpr std::string_view kGeneration = "generation";
inline constexpr std::string_view kEvaluation = "evaluation";
}  // namespace site

inline constexpr int kSchemaVersion = 1;

struct OracleRequest {
  OracleKind kind;
  nlohmann::json payload;
  std::string call_site;
};

struct TokenCounts {
  std::int64_t input = 0;
  std::int64_t output = 0;
};

/// What a backend hands back: the kind-specific result object (or a refusal
/// object `{"refusal": true}`) and, when the backend knows it, token usage.
struct BackendReply {
  nlohmann::json result;
  std::optional<TokenCounts> usage;
};

class OracleBackend {
 public:
  virtual ~OracleBackend() = default;
  virtual std::string name() const = 0;
  /// May throw TransientOracleError (retried) or any other OracleError.
  virtual BackendReply invoke(const OracleRequest& request) = 0;
};

bool is_refusal(const nlohmann::json& result);

}  // namespace hgr::oracle
