#include <gtest/gtest.h>

#include "rgm/selection.hpp"

using namespace rgm;

namespace {

// Table with the given probabilities assigned to the first edges of p = 2
// (six candidates); remaining edges get probability 0.
EdgeProbabilityTable table_with(const std::vector<double>& probs, int p = 2) {
  EdgeProbabilityTable t;
  t.p = p;
  t.draws = 100;
  const auto edges = candidate_edges(p);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    EdgeSummary s;
    s.edge = edges[k];
    s.probability = k < probs.size() ? probs[k] : 0.0;
    s.conditional_mean = k % 2 ? -0.5 : 0.5;
    t.edges.push_back(s);
  }
  return t;
}

// A store whose draws visit explicit inclusion configurations for p = 2.
SampleStore store_with(const std::vector<std::pair<std::vector<char>, int>>& configs) {
  SampleStore store;
  store.p = 2;
  store.genes = {"g1", "g2"};
  store.chains.resize(1);
  const auto edges = candidate_edges(2);
  for (const auto& [config, count] : configs) {
    for (int c = 0; c < count; ++c) {
      Draw d;
      PriorState& s = d.state;
      s.p = 2;
      s.a_tilde = MatrixXd::Zero(2, 2);
      s.b_tilde = MatrixXd::Zero(2, 4);
      s.t = VectorXd::Constant(2, 0.5);
      s.tau = MatrixXd::Ones(2, 2);
      s.nu = MatrixXd::Ones(2, 4);
      s.sigma = VectorXd::Ones(2);
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (config[e]) s.latent(edges[e]) = 0.8 + 0.1 * c;
      store.chains[0].draws.push_back(d);
    }
  }
  return store;
}

}  // namespace

TEST(EdgeProbabilities, FrequenciesAndConditionalMeans) {
  const SampleStore store = store_with({{{1, 0, 0, 0, 1, 0}, 3}, {{1, 1, 0, 0, 0, 0}, 1}});
  const EdgeProbabilityTable t = edge_probabilities(store);
  ASSERT_EQ(t.edges.size(), 6u);
  EXPECT_EQ(t.draws, 4u);
  EXPECT_DOUBLE_EQ(t.edges[0].probability, 1.0);
  EXPECT_DOUBLE_EQ(t.edges[1].probability, 0.25);
  EXPECT_DOUBLE_EQ(t.edges[4].probability, 0.75);
  EXPECT_DOUBLE_EQ(t.edges[3].probability, 0.0);
  // Edge 0 latents: 0.8, 0.9, 1.0 then 0.8.
  EXPECT_NEAR(t.edges[0].conditional_mean, (0.8 + 0.9 + 1.0 + 0.8) / 4.0, 1e-12);
  EXPECT_EQ(t.edges[3].conditional_mean, 0.0);
  EXPECT_THROW(edge_probabilities(SampleStore{}), ValidationError);
}

TEST(SelectMpm, StrictlyAboveHalf) {
  const GraphEstimate g = select_mpm(table_with({0.5, 0.51, 0.9, 0.2}));
  ASSERT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(*g.cutoff, 0.5);
  EXPECT_EQ(g.rule, SelectionRule::Mpm);
  EXPECT_NEAR(g.expected_fdr, (0.49 + 0.1) / 2.0, 1e-12);
}

TEST(SelectFdr, WorkedExample) {
  const GraphEstimate g = select_fdr(table_with({0.9, 0.8, 0.6, 0.3}), 0.1);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].probability, 0.9);
  EXPECT_NEAR(g.expected_fdr, 0.1, 1e-12);
  EXPECT_FALSE(g.fdr_unmet);
  EXPECT_EQ(*g.alpha, 0.1);
}

// The chosen cutoff is the most permissive one whose selection meets alpha:
// a direct scan over every nested selection agrees.
TEST(SelectFdr, MatchesExhaustiveScan) {
  Rng rng = make_rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> probs(6);
    for (auto& v : probs) v = std::round(uniform01(rng) * 20.0) / 20.0;
    const double alpha = 0.05 + 0.3 * uniform01(rng);
    const EdgeProbabilityTable t = table_with(probs);
    const GraphEstimate g = select_fdr(t, alpha);
    std::vector<double> sorted = probs;
    std::sort(sorted.rbegin(), sorted.rend());
    std::size_t best = 0;
    for (std::size_t k = 1; k <= sorted.size(); ++k) {
      if (k < sorted.size() && sorted[k] == sorted[k - 1]) continue;  // ties enter together
      if (sorted[k - 1] == 0.0) break;
      double fdr = 0.0;
      for (std::size_t m = 0; m < k; ++m) fdr += 1.0 - sorted[m];
      if (fdr / k <= alpha + 1e-12) best = k;
    }
    EXPECT_EQ(g.edges.size(), best);
    EXPECT_EQ(g.fdr_unmet, best == 0);
    if (best) EXPECT_LE(g.expected_fdr, alpha + 1e-12);
  }
}

TEST(SelectFdr, UnmetTargetGivesEmptyGraph) {
  const GraphEstimate g = select_fdr(table_with({0.6, 0.5}), 0.1);
  EXPECT_TRUE(g.edges.empty());
  EXPECT_TRUE(g.fdr_unmet);
  EXPECT_THROW(select_fdr(table_with({0.6}), 0.0), ValidationError);
  EXPECT_THROW(select_fdr(table_with({0.6}), 1.0), ValidationError);
}

TEST(SelectHpm, MostVisitedConfiguration) {
  const SampleStore store = store_with({{{1, 0, 0, 0, 1, 0}, 5}, {{1, 1, 0, 0, 1, 0}, 3}, {{0, 0, 0, 0, 0, 0}, 2}});
  const GraphEstimate g = select_hpm(store);
  ASSERT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(g.edges[0].edge.name(), "Y2->Y1");
  EXPECT_EQ(g.edges[1].edge.name(), "X3->Y2");
  EXPECT_DOUBLE_EQ(*g.hpm_share, 0.5);
}

TEST(SelectHpm, TiesPreferSmallerGraphs) {
  const SampleStore store = store_with({{{1, 1, 0, 0, 0, 0}, 2}, {{0, 0, 1, 0, 0, 0}, 2}, {{0, 1, 0, 0, 0, 0}, 2}});
  const GraphEstimate g = select_hpm(store);
  ASSERT_EQ(g.edges.size(), 1u);
  // Two single-edge graphs tie; indicator 001000 sorts before 010000.
  EXPECT_EQ(g.edges[0].edge.name(), "X1->Y1");
}

TEST(SelectHpm, SizeGuard) {
  SampleStore store;
  store.p = 10;
  EXPECT_THROW(select_hpm(store), ValidationError);
}

TEST(EffectSign, Classification) {
  EXPECT_EQ(sign_of(0.3), EffectSign::Positive);
  EXPECT_EQ(sign_of(-0.3), EffectSign::Negative);
  EXPECT_EQ(sign_of(5e-7), EffectSign::Ambiguous);
}
