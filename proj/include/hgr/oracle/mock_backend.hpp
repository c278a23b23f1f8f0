#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hgr/oracle/request.hpp"
#include "hgr/vector_index.hpp"

namespace hgr::oracle {

inline constexpr std::size_t kMockEmbeddingDim = 256;

/// Character-trigram hashing embedding of the folded text, L2-normalized.
/// Texts with no alphanumeric content map to a fixed unit vector.
EmbeddingVector mock_embedding(std::string_view text, std::size_t dim = kMockEmbeddingDim, std::uint64_t seed = 0);

/// Rule tables driving the mock backend. Every rule carries a `match` string
/// tested by folded containment against the request's question. Recognized
/// sections: aliases, keywords, plans, refinements, entity_scores,
/// direction_preferences, sufficient, step_answers, candidate_answers,
/// judge_preferences, refuse. See tests/fixtures for the format.
class MockFixtures {
 public:
  MockFixtures() : doc_(nlohmann::json::object()) {}
  explicit MockFixtures(nlohmann::json doc);

  static MockFixtures load(const std::filesystem::path& path);

  const nlohmann::json& doc() const noexcept { return doc_; }
  const nlohmann::json& section(std::string_view name) const;

 private:
  nlohmann::json doc_;
};

/// Deterministic offline backend: every reply is a pure function of
/// (kind, payload, seed, fixtures).
class MockBackend final : public OracleBackend {
 public:
  explicit MockBackend(MockFixtures fixtures = {}, std::uint64_t seed = 0, std::size_t dim = kMockEmbeddingDim)
      : fixtures_(std::move(fixtures)), seed_(seed), dim_(dim) {}

  std::string name() const override { return "mock"; }
  BackendReply invoke(const OracleRequest& request) override;

 private:
  nlohmann::json keywords(const nlohmann::json& p) const;
  nlohmann::json synonyms(const nlohmann::json& p) const;
  nlohmann::json propose(const nlohmann::json& p) const;
  nlohmann::json refine(const nlohmann::json& p) const;
  nlohmann::json entity_score(const nlohmann::json& p) const;
  nlohmann::json directions(const nlohmann::json& p) const;
  nlohmann::json paths(const nlohmann::json& p) const;
  nlohmann::json step_answer(const nlohmann::json& p) const;
  nlohmann::json candidate(const nlohmann::json& p) const;
  nlohmann::json judge(const nlohmann::json& p) const;

  std::vector<std::string> default_keywords(const std::string& question) const;
  const nlohmann::json* first_rule(std::string_view section, const std::string& question) const;

  MockFixtures fixtures_;
  std::uint64_t seed_;
  std::size_t dim_;
};

}  // namespace hgr::oracle
