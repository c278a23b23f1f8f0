#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "hgr/metrics.hpp"
#include "hgr/oracle/mock_backend.hpp"
#include "hgr/text_util.hpp"
#include "toy_graphs.hpp"

using namespace hgr;

namespace {

/// Multiset F1 by repeated removal from the gold list.
double slow_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
  if (pred.empty() && gold.empty()) return 1.0;
  if (pred.empty() || gold.empty()) return 0.0;
  auto left = gold;
  double common = 0;
  for (const auto& t : pred) {
    auto it = std::find(left.begin(), left.end(), t);
    if (it != left.end()) {
      left.erase(it);
      ++common;
    }
  }
  if (common == 0) return 0.0;
  double p = common / static_cast<double>(pred.size()), r = common / static_cast<double>(gold.size());
  return 2 * p * r / (p + r);
}

Embedder mock_embed() {
  return [](const std::string& s) { return oracle::mock_embedding(s); };
}

}  // namespace

TEST(F1, Examples) {
  EXPECT_DOUBLE_EQ(f1_score("Financial statements", "FINANCIAL STATEMENTS"), 1.0);
  EXPECT_DOUBLE_EQ(f1_score("The financial statements.", "financial statements"), 1.0);
  EXPECT_DOUBLE_EQ(f1_score("financial statements of the company", "financial statements"), 2.0 * (2.0 / 4.0) / 1.5);
  EXPECT_NEAR(f1_score("financial statements required", "financial statements"), 0.8, 1e-12);
  EXPECT_EQ(f1_score("tax", "financial statements"), 0.0);
  EXPECT_EQ(f1_score("", ""), 1.0);
  EXPECT_EQ(f1_score("", "x"), 0.0);
  EXPECT_EQ(f1_score("the", "x"), 0.0);
}

TEST(F1, MatchesSlowMultisetCount) {
  hgr_test::Rng rng(67);
  const std::vector<std::string> vocab = {"a", "the", "gaap", "tax", "Tax,", "statements", "x"};
  auto sentence = [&] {
    std::string s;
    for (std::size_t i = 0, n = hgr_test::uniform(rng, 0, 6); i < n; ++i)
      s += vocab[hgr_test::uniform(rng, 0, vocab.size() - 1)] + " ";
    return s;
  };
  for (int round = 0; round < 500; ++round) {
    auto p = sentence(), g = sentence();
    double f = f1_score(p, g);
    ASSERT_NEAR(f, slow_f1(answer_tokens(p), answer_tokens(g)), 1e-12);
    ASSERT_DOUBLE_EQ(f, f1_score(g, p));
    ASSERT_GE(f, 0.0);
    ASSERT_LE(f, 1.0);
  }
}

TEST(RetrievalSimilarity, RangeAndBlanks) {
  EXPECT_NEAR(retrieval_similarity("GAAP governs statements", "GAAP governs statements", mock_embed()), 1.0, 1e-6);
  EXPECT_EQ(retrieval_similarity("  ", "gold", mock_embed()), 0.0);
  EXPECT_EQ(retrieval_similarity("text", "", mock_embed()), 0.0);
  double s = retrieval_similarity("financial statements", "tax reporting", mock_embed());
  EXPECT_GE(s, 0.0);
  EXPECT_LT(s, 1.0);
}

TEST(GenerationEval, MockGradeFollowsOverlap) {
  auto gw = hgr_test::mock_gateway();
  EXPECT_EQ(generation_eval(*gw, "q", "Financial statements", "FINANCIAL STATEMENTS"), 100.0);
  EXPECT_EQ(generation_eval(*gw, "q", "", "FINANCIAL STATEMENTS"), 0.0);
  auto half = generation_eval(*gw, "q", "financial reports", "financial statements");
  ASSERT_TRUE(half);
  EXPECT_EQ(*half, 50.0);
  auto refusing = hgr_test::mock_gateway({{"refuse", {"FinalJudge"}}});
  EXPECT_FALSE(generation_eval(*refusing, "q", "a", "b"));
}
