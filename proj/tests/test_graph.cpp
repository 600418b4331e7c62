#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "rgm/graph.hpp"

using namespace rgm;

namespace {

// Four-vertex graphs sharing the anchors 3 -> 1 and 4 -> 2.
ReciprocalGraph anchored(std::vector<DirectedEdge> extra, std::vector<UndirectedEdge> undirected = {}) {
  extra.push_back({3, 1});
  extra.push_back({4, 2});
  return ReciprocalGraph(4, extra, undirected);
}

ReciprocalGraph fig_a() { return anchored({{1, 2}, {2, 1}}); }
ReciprocalGraph fig_b() { return anchored({{1, 2}}); }
ReciprocalGraph fig_c() { return anchored({{2, 1}}); }
ReciprocalGraph fig_d() { return anchored({}, {{1, 2}}); }

std::vector<Independence> singleton_pairs(const std::vector<Independence>& all) {
  std::vector<Independence> out;
  for (const auto& r : all)
    if (r.first.size() == 1 && r.second.size() == 1) out.push_back(r);
  return out;
}

// Covariance of a linear system v = A v + e with independent unit-scale
// errors of random variances; A(i, j) != 0 for each edge j -> i.
Eigen::MatrixXd sem_covariance(const ReciprocalGraph& g, std::mt19937_64& rng) {
  const int p = g.vertex_count();
  std::uniform_real_distribution<double> mag(0.3, 0.9), var(0.5, 2.0);
  std::bernoulli_distribution sign(0.5);
  for (;;) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p, p);
    for (auto [from, to] : g.directed_edges()) A(to - 1, from - 1) = (sign(rng) ? 1 : -1) * mag(rng);
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(p, p) - A;
    if (std::abs(M.determinant()) < 0.05) continue;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < p; ++i) D(i, i) = var(rng);
    Eigen::MatrixXd Minv = M.inverse();
    return Minv * D * Minv.transpose();
  }
}

std::vector<int> indices(const VertexSet& s) {
  std::vector<int> v;
  for (int x : s) v.push_back(x - 1);
  return v;
}

Eigen::MatrixXd block(const Eigen::MatrixXd& m, const std::vector<int>& r, const std::vector<int>& c) {
  Eigen::MatrixXd out(r.size(), c.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = m(r[i], c[j]);
  return out;
}

// Largest absolute entry of Cov(V1, V2 | V3) under the Gaussian law.
double conditional_cross_covariance(const Eigen::MatrixXd& sigma, const Independence& q) {
  const auto a = indices(q.first), b = indices(q.second), c = indices(q.given);
  Eigen::MatrixXd cross = block(sigma, a, b);
  if (!c.empty()) {
    Eigen::MatrixXd cc = block(sigma, c, c);
    cross -= block(sigma, a, c) * cc.ldlt().solve(block(sigma, c, b));
  }
  return cross.cwiseAbs().maxCoeff();
}

std::vector<Independence> all_disjoint_triples(int p) {
  std::vector<Independence> out;
  int total = 1;
  for (int v = 0; v < p; ++v) total *= 4;
  for (int code = 0; code < total; ++code) {
    Independence q;
    int c = code;
    for (int v = 1; v <= p; ++v, c /= 4) {
      if (c % 4 == 1) q.first.insert(v);
      if (c % 4 == 2) q.second.insert(v);
      if (c % 4 == 3) q.given.insert(v);
    }
    if (!q.first.empty() && !q.second.empty() && q.first < q.second) out.push_back(q);
  }
  return out;
}

}  // namespace

TEST(ReciprocalGraph, RejectsInvalidEdges) {
  EXPECT_THROW(ReciprocalGraph(0, {}, {}), ValidationError);
  EXPECT_THROW(ReciprocalGraph(2, {{1, 3}}, {}), ValidationError);
  EXPECT_THROW(ReciprocalGraph(2, {{1, 1}}, {}), ValidationError);
  EXPECT_THROW(ReciprocalGraph(2, {{1, 2}}, {{2, 1}}), ValidationError);
}

TEST(ReciprocalGraph, UndirectedEdgesAreCanonical) {
  ReciprocalGraph g(3, {}, {{3, 1}, {1, 3}});
  EXPECT_EQ(g.undirected_edges().size(), 1u);
  EXPECT_TRUE(g.has_undirected(1, 3));
  EXPECT_TRUE(g.has_undirected(3, 1));
}

TEST(PathComponents, FollowUndirectedEdgesOnly) {
  ReciprocalGraph g(5, {{1, 2}, {2, 1}}, {{3, 4}});
  auto comps = path_components(g);
  std::vector<VertexSet> expected{{1}, {2}, {3, 4}, {5}};
  std::sort(comps.begin(), comps.end());
  EXPECT_EQ(comps, expected);
}

TEST(PathComponents, DirectedEdgeInsideComponentIsNotReciprocal) {
  EXPECT_TRUE(is_reciprocal(fig_a()));
  EXPECT_TRUE(is_reciprocal(fig_d()));
  ReciprocalGraph bad(3, {{1, 3}}, {{1, 2}, {2, 3}});
  EXPECT_FALSE(is_reciprocal(bad));
  EXPECT_THROW(moralize(bad), ValidationError);
}

TEST(Boundary, ParentsAndNeighbours) {
  ReciprocalGraph g(5, {{1, 2}, {4, 3}}, {{2, 3}, {3, 5}});
  EXPECT_EQ(boundary(g, {2}), (VertexSet{1, 3}));
  EXPECT_EQ(boundary(g, {2, 3}), (VertexSet{1, 4, 5}));
  EXPECT_EQ(boundary(g, {1}), VertexSet{});
}

TEST(AnteriorSet, ClosesOverBoundary) {
  ReciprocalGraph g(5, {{1, 2}, {4, 3}}, {{2, 3}});
  EXPECT_EQ(anterior_set(g, {2}), (VertexSet{1, 2, 3, 4}));
  EXPECT_EQ(anterior_set(g, {5}), (VertexSet{5}));
  EXPECT_EQ(anterior_set(fig_a(), {1}), (VertexSet{1, 2, 3, 4}));
}

TEST(Moralize, FeedbackPairKeepsAnchorsApart) {
  // Vertex 1 has parents {2, 3}, vertex 2 has parents {1, 4}: 2-3 and 1-4 are
  // added, 3-4 is not.
  ReciprocalGraph m = moralize(fig_a());
  EXPECT_TRUE(m.directed_edges().empty());
  std::set<UndirectedEdge> expected{{1, 2}, {1, 3}, {2, 4}, {2, 3}, {1, 4}};
  EXPECT_EQ(m.undirected_edges(), expected);
}

TEST(Moralize, UndirectedComponentJoinsItsWholeBoundary) {
  ReciprocalGraph m = moralize(fig_d());
  EXPECT_TRUE(m.has_undirected(3, 4));
  EXPECT_TRUE(m.has_undirected(1, 2));
}

TEST(Moralize, ColliderParentsAreMarried) {
  ReciprocalGraph g(3, {{1, 3}, {2, 3}}, {});
  EXPECT_TRUE(moralize(g).has_undirected(1, 2));
}

TEST(Separates, BasicAndErrors) {
  ReciprocalGraph chain(3, {}, {{1, 2}, {2, 3}});
  EXPECT_TRUE(separates(chain, {1}, {3}, {2}));
  EXPECT_FALSE(separates(chain, {1}, {3}, {}));
  EXPECT_THROW(separates(chain, {1}, {1}, {}), ValidationError);
  EXPECT_THROW(separates(fig_a(), {1}, {3}, {}), ValidationError);
}

TEST(ImpliedIndependencies, FeedbackPairHasExactlyTwoSingletonStatements) {
  auto rel = singleton_pairs(implied_independencies(fig_a()));
  std::vector<Independence> expected{{{3}, {4}, {}}, {{3}, {4}, {1, 2}}};
  EXPECT_EQ(rel, expected);
}

TEST(ImpliedIndependencies, EdgelessGraphIsFullyIndependent) {
  ReciprocalGraph g(3, {}, {});
  auto rel = implied_independencies(g);
  EXPECT_EQ(rel.size(), all_disjoint_triples(3).size());
}

TEST(ImpliedIndependencies, CompleteUndirectedGraphHasNone) {
  ReciprocalGraph g(3, {}, {{1, 2}, {1, 3}, {2, 3}});
  EXPECT_TRUE(implied_independencies(g).empty());
}

TEST(ImpliedIndependencies, EnumerationCap) {
  EXPECT_THROW(implied_independencies(ReciprocalGraph(kMaxEnumerationVertices + 1, {}, {})), ValidationError);
}

TEST(MarkovEquivalence, TwoVertexGraphsAreEquivalent) {
  std::vector<ReciprocalGraph> g{ReciprocalGraph(2, {{1, 2}, {2, 1}}, {}), ReciprocalGraph(2, {{1, 2}}, {}),
                                 ReciprocalGraph(2, {{2, 1}}, {}), ReciprocalGraph(2, {}, {{1, 2}})};
  for (auto& a : g)
    for (auto& b : g) EXPECT_TRUE(markov_equivalent(a, b));
}

TEST(MarkovEquivalence, AnchoredGraphsAreDistinct) {
  std::vector<ReciprocalGraph> g{fig_a(), fig_b(), fig_c(), fig_d()};
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (i != j) EXPECT_FALSE(markov_equivalent(g[i], g[j])) << i << " vs " << j;
}

// Separation statements are compared with the vanishing conditional
// covariances of a randomly parameterized linear system on the same directed
// graph (cycles allowed).
TEST(ImpliedIndependencies, MatchLinearSystemCovariances) {
  std::mt19937_64 rng(2024);
  std::bernoulli_distribution edge(0.3);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int p = 3 + trial % 3;
    std::vector<DirectedEdge> d;
    for (int i = 1; i <= p; ++i)
      for (int j = 1; j <= p; ++j)
        if (i != j && edge(rng)) d.push_back({i, j});
    ReciprocalGraph g(p, d, {});
    const Eigen::MatrixXd sigma = sem_covariance(g, rng);
    const auto implied = implied_independencies(g);
    for (const auto& q : all_disjoint_triples(p)) {
      const bool listed = std::binary_search(implied.begin(), implied.end(), q);
      const double cov = conditional_cross_covariance(sigma, q);
      if (listed) EXPECT_LT(cov, 1e-9) << to_dot(g);
      else EXPECT_GT(cov, 1e-7) << to_dot(g);
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(Induced, RelabelsVertices) {
  ReciprocalGraph g(4, {{1, 3}, {3, 4}}, {{2, 4}});
  ReciprocalGraph h = g.induced({3, 4});
  EXPECT_EQ(h.vertex_count(), 2);
  EXPECT_TRUE(h.has_directed(1, 2));
  EXPECT_TRUE(h.undirected_edges().empty());
}

TEST(Dot, MarksUndirectedEdges) {
  const std::string dot = to_dot(fig_d(), {"a", "b", "c", "d"});
  EXPECT_NE(dot.find("\"a\" -> \"b\" [dir=none]"), std::string::npos);
  EXPECT_NE(dot.find("\"c\" -> \"a\";"), std::string::npos);
}
