#pragma once

// Simulation-study metrics against a known truth, and analytics on fitted
// gene networks (motifs, degree posteriors, cascade ordering).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "rgm/errors.hpp"
#include "rgm/inference.hpp"
#include "rgm/selection.hpp"
#include "rgm/sem.hpp"

namespace rgm {

struct ConfusionSummary {
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::uint64_t total() const { return tp + fp + tn + fn; }
};

inline ConfusionSummary confusion(const GraphEstimate& estimate, const SemParameters& truth) {
  if (estimate.p != truth.p) throw ValidationError("confusion: estimate and truth have different p");
  ConfusionSummary c;
  for (const Edge& e : candidate_edges(truth.p)) {
    const bool actual = truth.coefficient(e) != 0.0;
    const bool predicted = estimate.contains(e);
    if (actual && predicted) ++c.tp;
    else if (actual) ++c.fn;
    else if (predicted) ++c.fp;
    else ++c.tn;
  }
  return c;
}

struct ClassificationMetrics {
  double tpr = 0.0;
  double fdr = 0.0;
  double mcc = 0.0;
};

// TPR is 1 with no actual positives, FDR is 0 with no predicted positives, and
// MCC is 0 when any margin of the table is empty.
inline ClassificationMetrics metrics(const ConfusionSummary& c) {
  ClassificationMetrics m;
  const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn), fn = static_cast<double>(c.fn);
  m.tpr = (c.tp + c.fn) ? tp / (tp + fn) : 1.0;
  m.fdr = (c.tp + c.fp) ? fp / (tp + fp) : 0.0;
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  m.mcc = denom > 0 ? (tp * tn - fp * fn) / std::sqrt(denom) : 0.0;
  return m;
}

struct RocPoint {
  double cutoff = 0.0;  // predicted positive iff probability >= cutoff
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // from (0, 0) to (1, 1)
  double auc = 0.0;
};

// Sweeps the cutoff down through the distinct probabilities. Tied
// probabilities move FPR and TPR together, so the trapezoidal area counts a
// tied positive/negative pair as one half.
inline RocCurve roc(const EdgeProbabilityTable& table, const SemParameters& truth) {
  if (table.p != truth.p) throw ValidationError("roc: table and truth have different p");
  std::vector<std::pair<double, bool>> scored;
  std::uint64_t positives = 0, negatives = 0;
  for (const auto& s : table.edges) {
    const bool actual = truth.coefficient(s.edge) != 0.0;
    scored.push_back({s.probability, actual});
    (actual ? positives : negatives) += 1;
  }
  if (!positives || !negatives) throw ValidationError("roc: truth needs both positive and negative edges");
  std::sort(scored.begin(), scored.end(), [](auto& a, auto& b) { return a.first > b.first; });

  RocCurve curve;
  curve.points.push_back({std::nextafter(1.0, 2.0), 0.0, 0.0});  // nothing selected
  std::uint64_t tp = 0, fp = 0;
  for (std::size_t k = 0; k < scored.size();) {
    const double cutoff = scored[k].first;
    while (k < scored.size() && scored[k].first == cutoff) {
      (scored[k].second ? tp : fp) += 1;
      ++k;
    }
    curve.points.push_back({cutoff, static_cast<double>(fp) / negatives, static_cast<double>(tp) / positives});
  }
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    const auto& a = curve.points[k - 1];
    const auto& b = curve.points[k];
    curve.auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  return curve;
}

// TPR of the ROC polyline at false-positive rate `fpr`; on a vertical segment
// the upper end is taken.
inline double roc_tpr_at(const RocCurve& curve, double fpr) {
  double best = 0.0;
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    const auto& a = curve.points[k - 1];
    const auto& b = curve.points[k];
    if (fpr < a.fpr || fpr > b.fpr) continue;
    const double y = b.fpr == a.fpr ? std::max(a.tpr, b.tpr) : a.tpr + (b.tpr - a.tpr) * (fpr - a.fpr) / (b.fpr - a.fpr);
    best = std::max(best, y);
  }
  return best;
}

struct AverageRocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

// Pointwise mean TPR over a uniform FPR grid of `grid_points` values in [0, 1].
inline std::vector<AverageRocPoint> average_roc(const std::vector<RocCurve>& curves, int grid_points = 101) {
  if (curves.empty()) throw ValidationError("average_roc: no curves");
  if (grid_points < 2) throw ValidationError("average_roc: need at least two grid points");
  std::vector<AverageRocPoint> out;
  for (int g = 0; g < grid_points; ++g) {
    const double f = static_cast<double>(g) / (grid_points - 1);
    double sum = 0.0;
    for (const auto& c : curves) sum += roc_tpr_at(c, f);
    out.push_back({f, sum / static_cast<double>(curves.size())});
  }
  return out;
}

struct FeedForwardLoop {
  int regulator = 0, intermediate = 0, target = 0;
  EffectSign regulator_to_intermediate{}, intermediate_to_target{}, regulator_to_target{};
};

struct FeedbackLoop {
  int first = 0, second = 0;  // first < second
  EffectSign forward{}, backward{};
  bool positive = false;      // sign product is +1
};

struct CascadeMotif {
  std::vector<int> genes;
  std::vector<EffectSign> signs;  // one per consecutive pair
};

struct MotifReport {
  std::vector<FeedForwardLoop> feed_forward;
  std::vector<FeedbackLoop> feedback;
  std::vector<CascadeMotif> cascades;
};

inline constexpr int kMaxCascadeEdges = 6;

namespace detail {

// Signed gene-gene adjacency: sign[i][j] for the edge i -> j (1-based), 0 = absent.
struct SignedAdjacency {
  int p = 0;
  std::vector<std::vector<char>> present;
  std::vector<std::vector<EffectSign>> sign;

  explicit SignedAdjacency(const GraphEstimate& g)
      : p(g.p),
        present(g.p + 1, std::vector<char>(g.p + 1, 0)),
        sign(g.p + 1, std::vector<EffectSign>(g.p + 1, EffectSign::Ambiguous)) {
    for (const auto& e : g.edges) {
      if (e.edge.kind != EdgeKind::GeneToGene) continue;
      present[e.edge.source][e.edge.target] = 1;
      sign[e.edge.source][e.edge.target] = e.sign;
    }
  }
  bool has(int a, int b) const { return present[a][b] != 0; }
};

}  // namespace detail

// Feed-forward loops (i -> j -> k with i -> k), two-gene feedback loops, and
// cascades over the gene-gene edges of an estimate. A cascade is a directed
// simple path of 2..kMaxCascadeEdges edges that cannot be extended at either
// end without repeating a gene or exceeding the cap.
inline MotifReport find_motifs(const GraphEstimate& estimate) {
  const detail::SignedAdjacency adj(estimate);
  const int p = adj.p;
  MotifReport report;
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= p; ++j)
      for (int k = 1; k <= p; ++k)
        if (i != j && j != k && i != k && adj.has(i, j) && adj.has(j, k) && adj.has(i, k))
          report.feed_forward.push_back({i, j, k, adj.sign[i][j], adj.sign[j][k], adj.sign[i][k]});

  for (int i = 1; i <= p; ++i)
    for (int j = i + 1; j <= p; ++j)
      if (adj.has(i, j) && adj.has(j, i)) {
        const int product = static_cast<int>(adj.sign[i][j]) * static_cast<int>(adj.sign[j][i]);
        report.feedback.push_back({i, j, adj.sign[i][j], adj.sign[j][i], product == 1});
      }

  std::vector<int> path;
  std::vector<char> on_path(p + 1, 0);
  auto extendable_at_start = [&] {
    if (static_cast<int>(path.size()) - 1 >= kMaxCascadeEdges) return false;
    for (int v = 1; v <= p; ++v)
      if (!on_path[v] && adj.has(v, path.front())) return true;
    return false;
  };
  std::function<void()> grow = [&] {
    const int edges = static_cast<int>(path.size()) - 1;
    bool extended = false;
    if (edges < kMaxCascadeEdges) {
      for (int v = 1; v <= p; ++v) {
        if (on_path[v] || !adj.has(path.back(), v)) continue;
        extended = true;
        path.push_back(v);
        on_path[v] = 1;
        grow();
        on_path[v] = 0;
        path.pop_back();
      }
    }
    if (!extended && edges >= 2 && !extendable_at_start()) {
      CascadeMotif m;
      m.genes = path;
      for (std::size_t k = 1; k < path.size(); ++k) m.signs.push_back(adj.sign[path[k - 1]][path[k]]);
      report.cascades.push_back(std::move(m));
    }
  };
  for (int start = 1; start <= p; ++start) {
    path = {start};
    on_path[start] = 1;
    grow();
    on_path[start] = 0;
  }
  return report;
}

struct DegreeSummary {
  std::vector<std::uint64_t> histogram;  // index = degree, 0..2(p-1)
  double mean = 0.0;
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

struct DegreePosterior {
  int p = 0;
  std::uint64_t draws = 0;
  std::vector<DegreeSummary> genes;
};

namespace detail {

// Linear-interpolation quantile of sorted data (R type 7).
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double h = (sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

}  // namespace detail

// Per-gene distribution of the number of included gene-gene edges touching the
// gene. A two-cycle contributes two edges to each of its endpoints.
inline DegreePosterior degree_posterior(const SampleStore& store) {
  if (store.empty()) throw ValidationError("degree_posterior: empty sample store");
  const int p = store.p;
  DegreePosterior out;
  out.p = p;
  out.draws = store.size();
  std::vector<std::vector<double>> samples(p);
  store.for_each_draw([&](const Draw& d) {
    std::vector<int> degree(p, 0);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        if (i != j && std::abs(d.state.a_tilde(i, j)) > d.state.t(i)) {
          ++degree[i];
          ++degree[j];
        }
    for (int g = 0; g < p; ++g) samples[g].push_back(degree[g]);
  });
  for (int g = 0; g < p; ++g) {
    auto& s = samples[g];
    std::sort(s.begin(), s.end());
    DegreeSummary summary;
    summary.histogram.assign(2 * (p - 1) + 1, 0);
    for (double v : s) ++summary.histogram[static_cast<std::size_t>(v)];
    summary.mean = std::accumulate(s.begin(), s.end(), 0.0) / s.size();
    summary.min = s.front();
    summary.max = s.back();
    summary.q1 = detail::quantile_sorted(s, 0.25);
    summary.median = detail::quantile_sorted(s, 0.5);
    summary.q3 = detail::quantile_sorted(s, 0.75);
    out.genes.push_back(std::move(summary));
  }
  return out;
}

// indegree - outdegree per gene over gene-gene edges.
inline std::vector<int> ordering_score(const GraphEstimate& estimate) {
  std::vector<int> score(estimate.p, 0);
  for (const auto& e : estimate.edges) {
    if (e.edge.kind != EdgeKind::GeneToGene) continue;
    ++score[e.edge.target - 1];
    --score[e.edge.source - 1];
  }
  return score;
}

// 1-based ranks with ties sharing their average rank.
inline std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t k = 0; k < order.size();) {
    std::size_t end = k;
    while (end < order.size() && values[order[end]] == values[order[k]]) ++end;
    const double rank = (k + 1 + end) / 2.0;
    for (std::size_t m = k; m < end; ++m) ranks[order[m]] = rank;
    k = end;
  }
  return ranks;
}

// Normalized Kendall distance between a ranking (any scores; smaller means
// earlier) and a reference ordering given as group positions (equal positions
// form a tie group). Pairs tied in the reference are skipped entirely; pairs
// tied in the ranking but ordered in the reference count one half.
inline double kendall_distance(std::span<const double> ranking, std::span<const int> reference) {
  if (ranking.size() != reference.size()) throw ValidationError("kendall_distance: length mismatch");
  const std::vector<double> ranks = average_ranks(ranking);
  double discordant = 0.0;
  std::uint64_t pairs = 0;
  for (std::size_t a = 0; a < ranks.size(); ++a) {
    for (std::size_t b = a + 1; b < ranks.size(); ++b) {
      if (reference[a] == reference[b]) continue;
      ++pairs;
      const double ref = reference[a] < reference[b] ? 1.0 : -1.0;
      const double diff = ranks[a] - ranks[b];
      if (diff == 0.0) discordant += 0.5;
      else if ((diff < 0 ? 1.0 : -1.0) != ref) discordant += 1.0;
    }
  }
  return pairs ? discordant / static_cast<double>(pairs) : 0.0;
}

}  // namespace rgm
