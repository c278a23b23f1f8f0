#include <gtest/gtest.h>

#include "generators.hpp"
#include "hgr/errors.hpp"
#include "hgr/reasoning.hpp"
#include "toy_graphs.hpp"

using namespace hgr;
using nlohmann::json;

namespace {

AnswerPathPair pair_of(std::string answer, std::uint32_t edge, double score = 0.0) {
  AnswerPathPair p;
  p.answer = std::move(answer);
  p.path.edges = {HyperedgeId(edge)};
  p.score = score;
  return p;
}

ReasoningDAG gaap_dag() {
  ReasoningPlan p;
  p.subquestions = {{0, "What does GAAP stand for?", {"GAAP"}, 0},
                    {1, "What standards do GAAP require for financial reporting?", {"GAAP"}, 0},
                    {2, "What standards do GAAP require for tax reporting?", {"GAAP"}, 0}};
  p.deps = {{0, 1}, {0, 2}};
  return build_reasoning_dag(p);
}

SubquestionResolver answers_per_node(std::size_t n) {
  return [n](const ReasoningDAG&, const Subquestion& sq) {
    std::vector<AnswerPathPair> out;
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(pair_of("answer " + std::to_string(sq.id) + "." + std::to_string(i), static_cast<std::uint32_t>(i)));
    return out;
  };
}

ReasoningPlan plan_json(const json& doc) { return plan_from_json(doc); }

}  // namespace

TEST(JointAssignments, ProductOrderAndEdgeCases) {
  std::map<int, std::vector<AnswerPathPair>> opts = {{1, {pair_of("b", 0), pair_of("a", 1)}}, {2, {pair_of("x", 2)}}};
  auto all = joint_assignments(opts);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].at(1).answer, "a");
  EXPECT_EQ(all[1].at(1).answer, "b");
  EXPECT_TRUE(joint_assignments({{1, {pair_of("a", 0)}}, {2, {}}}).empty());
  auto none = joint_assignments({});
  ASSERT_EQ(none.size(), 1u);
  EXPECT_TRUE(none[0].empty());
}

TEST(JointAssignments, CapKeepsHighestScoresInProductOrder) {
  std::map<int, std::vector<AnswerPathPair>> opts = {
      {0, {pair_of("a", 0, 0.1), pair_of("b", 1, 0.9), pair_of("c", 2, 0.5)}},
      {1, {pair_of("x", 3, 0.0), pair_of("y", 4, 0.3)}}};
  auto kept = joint_assignments(opts, 2);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].at(0).answer, "b");
  EXPECT_EQ(kept[0].at(1).answer, "x");
  EXPECT_EQ(kept[1].at(0).answer, "b");
  EXPECT_EQ(kept[1].at(1).answer, "y");
}

TEST(JointAssignments, SizeIsProductUpToCap) {
  hgr_test::Rng rng(53);
  for (int round = 0; round < 100; ++round) {
    std::map<int, std::vector<AnswerPathPair>> opts;
    std::size_t product = 1;
    for (int id = 0, n = static_cast<int>(hgr_test::uniform(rng, 1, 4)); id < n; ++id) {
      std::size_t k = hgr_test::uniform(rng, 1, 3);
      product *= k;
      for (std::size_t i = 0; i < k; ++i)
        opts[id].push_back(pair_of("a" + std::to_string(i), static_cast<std::uint32_t>(i),
                                   static_cast<double>(hgr_test::uniform(rng, 0, 10))));
    }
    std::size_t cap = hgr_test::uniform(rng, 1, 10);
    auto out = joint_assignments(opts, cap);
    ASSERT_EQ(out.size(), std::min(product, cap));
    for (const auto& a : out) ASSERT_EQ(a.size(), opts.size());
  }
}

TEST(AdvanceDag, RecordsTheLevel) {
  auto dag = gaap_dag();
  auto next = advance_dag(dag, {{0, pair_of("Generally Accepted Accounting Principles", 0)}});
  EXPECT_EQ(next.completed_level, 0);
  EXPECT_EQ(next.ap.at(0).front().answer, "Generally Accepted Accounting Principles");
  EXPECT_EQ(next.plan, dag.plan);
  EXPECT_THROW(advance_dag(dag, {}), PreconditionError);
  EXPECT_THROW(advance_dag(dag, {{1, pair_of("x", 0)}}), PreconditionError);
  auto done = advance_dag(next, {{1, pair_of("x", 0)}, {2, pair_of("y", 0)}});
  EXPECT_TRUE(done.complete());
  EXPECT_THROW(advance_dag(done, {}), PreconditionError);
}

TEST(ValidateRefinement, AcceptsAppendedSubquestion) {
  auto next = advance_dag(gaap_dag(), {{0, pair_of("GAAP", 0)}});
  auto proposal = next.plan;
  proposal.subquestions.push_back({3, "Which authority issues GAAP?", {}, 0});
  proposal.deps.insert({1, 3});
  EXPECT_NO_THROW(validate_refinement(next, proposal));
}

TEST(ValidateRefinement, RejectsChangesToCompletedWork) {
  auto next = advance_dag(gaap_dag(), {{0, pair_of("GAAP", 0)}});
  auto dropped = next.plan;
  dropped.subquestions.erase(dropped.subquestions.begin());
  dropped.deps.clear();
  EXPECT_THROW(validate_refinement(next, dropped), InvalidPlanError);

  auto rewritten = next.plan;
  rewritten.subquestions[0].text = "What is GAAP?";
  EXPECT_THROW(validate_refinement(next, rewritten), InvalidPlanError);

  auto into_completed = next.plan;
  into_completed.deps = {{1, 0}, {0, 2}};
  EXPECT_THROW(validate_refinement(next, into_completed), InvalidPlanError);

  auto cyclic = next.plan;
  cyclic.deps.insert({2, 1});
  cyclic.deps.insert({1, 2});
  EXPECT_THROW(validate_refinement(next, cyclic), CycleError);
}

TEST(RefineDag, FixtureRefinementAddsALevel) {
  json refined = {{"subquestions",
                   {{{"id", 0}, {"text", "What does GAAP stand for?"}},
                    {{"id", 1}, {"text", "What standards do GAAP require for financial reporting?"}},
                    {{"id", 2}, {"text", "What standards do GAAP require for tax reporting?"}},
                    {{"id", 3}, {"text", "Which body issues those standards?"}}}},
                  {"deps", {{0, 1}, {0, 2}, {1, 3}}}};
  auto gw = hgr_test::mock_gateway(
      {{"refinements", {{{"match", "prepared"}, {"after_level", 0}, {"plan", refined}}}}});
  auto out = refine_dag(gaap_dag(), {{0, pair_of("GAAP", 0)}}, *gw, hgr_test::kGaapQuestion);
  EXPECT_EQ(out.completed_level, 0);
  ASSERT_EQ(out.levels.size(), 3u);
  EXPECT_EQ(out.levels[2], std::vector<int>{3});
  EXPECT_EQ(out.ap.at(0).front().answer, "GAAP");
  EXPECT_EQ(plan_json(plan_to_json(out.plan)).subquestions.size(), 4u);
}

TEST(RefineDag, InvalidProposalIsAskedOnceMoreThenIgnored) {
  json drops_root = {{"subquestions", {{{"id", 1}, {"text", "only this"}}}}, {"deps", json::array()}};
  auto gw = hgr_test::mock_gateway(
      {{"refinements", {{{"match", "prepared"}, {"after_level", 0}, {"plan", drops_root}}}}});
  auto base = gaap_dag();
  auto out = refine_dag(base, {{0, pair_of("GAAP", 0)}}, *gw, hgr_test::kGaapQuestion);
  EXPECT_EQ(gw->call_log().size(), 2u);
  EXPECT_EQ(out.plan, base.plan);
  EXPECT_EQ(out.completed_level, 0);

  auto silent = hgr_test::mock_gateway();
  auto kept = refine_dag(base, {{0, pair_of("GAAP", 0)}}, *silent, hgr_test::kGaapQuestion);
  EXPECT_EQ(kept.plan, base.plan);
}

TEST(Reason, OneAnswerPerNodeGivesOneDag) {
  ReasonOptions opts;
  opts.solutions = 2;
  auto res = reason({gaap_dag()}, answers_per_node(1), advance_dag, opts);
  ASSERT_EQ(res.completed.size(), 1u);
  EXPECT_TRUE(res.completed[0].complete());
  EXPECT_EQ(res.stats.states_visited, 3u);
  EXPECT_EQ(res.stats.peak_depth, 2u);
  ASSERT_EQ(res.trace.size(), 3u);
  EXPECT_EQ(res.trace[0].at("action"), "expand");
  EXPECT_EQ(res.trace[2].at("action"), "complete");
  for (int id : {0, 1, 2}) EXPECT_EQ(res.completed[0].ap.at(id).size(), 1u);
}

TEST(Reason, UnanswerableLevelPrunes) {
  auto resolver = [](const ReasoningDAG&, const Subquestion& sq) {
    return sq.id == 2 ? std::vector<AnswerPathPair>{} : std::vector<AnswerPathPair>{pair_of("a", 0)};
  };
  auto res = reason({gaap_dag()}, resolver, advance_dag, ReasonOptions{});
  EXPECT_TRUE(res.completed.empty());
  EXPECT_EQ(res.trace.back().at("action"), "prune");
  EXPECT_THROW(reason({gaap_dag()}, resolver, advance_dag, ReasonOptions{0}), PreconditionError);
}

TEST(Reason, BreadthFirstHoldsAWiderFrontier) {
  ReasonOptions dfs;
  dfs.solutions = 3;
  ReasonOptions bfs = dfs;
  bfs.strategy = SearchStrategy::bfs;
  auto a = reason({gaap_dag()}, answers_per_node(2), advance_dag, dfs);
  auto b = reason({gaap_dag()}, answers_per_node(2), advance_dag, bfs);
  EXPECT_EQ(a.completed.size(), 3u);
  EXPECT_EQ(b.completed.size(), 3u);
  EXPECT_LT(a.stats.peak_frontier_width, b.stats.peak_frontier_width);
  EXPECT_LT(a.stats.states_visited, b.stats.states_visited);
}

TEST(Reason, StrategyNames) {
  EXPECT_EQ(search_strategy_from_string("bfs"), SearchStrategy::bfs);
  EXPECT_STREQ(to_string(SearchStrategy::dfs), "dfs");
  EXPECT_THROW(search_strategy_from_string("astar"), DataError);
}
