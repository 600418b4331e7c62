#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rgm/errors.hpp"
#include "rgm/inference.hpp"
#include "rgm/sem.hpp"

namespace rgm {

struct EdgeSummary {
  Edge edge;
  double probability = 0.0;
  double conditional_mean = 0.0;  // posterior mean of the effective coefficient given inclusion
  std::uint64_t included = 0;
};

struct EdgeProbabilityTable {
  int p = 0;
  std::uint64_t draws = 0;
  std::vector<std::string> genes;
  std::vector<EdgeSummary> edges;  // candidate_edges(p) order
};

enum class SelectionRule { Mpm, Fdr, Hpm, Cutoff };

inline std::string rule_name(SelectionRule r) {
  switch (r) {
    case SelectionRule::Mpm: return "mpm";
    case SelectionRule::Fdr: return "fdr";
    case SelectionRule::Hpm: return "hpm";
    case SelectionRule::Cutoff: return "cutoff";
  }
  return "unknown";
}

// Signs of reported effects; Ambiguous when |conditional mean| < 1e-6.
enum class EffectSign { Negative = -1, Ambiguous = 0, Positive = 1 };

inline constexpr double kAmbiguousEffect = 1e-6;

inline EffectSign sign_of(double mean) {
  if (std::abs(mean) < kAmbiguousEffect) return EffectSign::Ambiguous;
  return mean > 0 ? EffectSign::Positive : EffectSign::Negative;
}

struct SelectedEdge {
  Edge edge;
  double probability = 0.0;
  double effect = 0.0;
  EffectSign sign = EffectSign::Ambiguous;
};

struct GraphEstimate {
  int p = 0;
  std::vector<std::string> genes;
  SelectionRule rule = SelectionRule::Mpm;
  std::optional<double> alpha;     // FDR rule only
  std::optional<double> cutoff;    // MPM / FDR / Cutoff rules
  double expected_fdr = 0.0;       // posterior expected FDR of the selection
  bool fdr_unmet = false;          // FDR rule found no nonempty selection within alpha
  std::optional<double> hpm_share; // HPM rule: visit share of the configuration
  std::vector<SelectedEdge> edges;

  bool contains(const Edge& e) const {
    return std::any_of(edges.begin(), edges.end(), [&](const SelectedEdge& s) { return s.edge == e; });
  }
};

// Inclusion frequency of every candidate edge over all retained draws of all
// chains, with the mean effective coefficient among including draws.
inline EdgeProbabilityTable edge_probabilities(const SampleStore& store) {
  if (store.empty()) throw ValidationError("edge_probabilities: empty sample store");
  EdgeProbabilityTable table;
  table.p = store.p;
  table.genes = store.genes;
  table.draws = store.size();
  const auto edges = candidate_edges(store.p);
  std::vector<double> sums(edges.size(), 0.0);
  table.edges.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) table.edges[e].edge = edges[e];
  store.for_each_draw([&](const Draw& d) {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (d.state.included(edges[e])) {
        ++table.edges[e].included;
        sums[e] += d.state.latent(edges[e]);
      }
    }
  });
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto& s = table.edges[e];
    s.probability = static_cast<double>(s.included) / static_cast<double>(table.draws);
    s.conditional_mean = s.included ? sums[e] / static_cast<double>(s.included) : 0.0;
  }
  return table;
}

namespace detail {

inline GraphEstimate estimate_shell(const EdgeProbabilityTable& table, SelectionRule rule) {
  GraphEstimate g;
  g.p = table.p;
  g.genes = table.genes;
  g.rule = rule;
  return g;
}

inline SelectedEdge selected(const EdgeSummary& s) {
  return {s.edge, s.probability, s.conditional_mean, sign_of(s.conditional_mean)};
}

inline double expected_fdr(const std::vector<SelectedEdge>& edges) {
  if (edges.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& e : edges) sum += 1.0 - e.probability;
  return sum / static_cast<double>(edges.size());
}

}  // namespace detail

// Edges with probability strictly above `cutoff`.
inline GraphEstimate select_cutoff(const EdgeProbabilityTable& table, double cutoff,
                                   SelectionRule rule = SelectionRule::Cutoff) {
  GraphEstimate g = detail::estimate_shell(table, rule);
  g.cutoff = cutoff;
  for (const auto& s : table.edges)
    if (s.probability > cutoff) g.edges.push_back(detail::selected(s));
  g.expected_fdr = detail::expected_fdr(g.edges);
  return g;
}

inline GraphEstimate select_mpm(const EdgeProbabilityTable& table) {
  return select_cutoff(table, 0.5, SelectionRule::Mpm);
}

// Posterior expected FDR control: among cutoffs {0} ∪ {distinct
// probabilities}, the smallest one whose selection {p_e > c} has
// Σ(1 - p_e) / |selection| <= alpha. If no nonempty selection qualifies the
// result is empty with fdr_unmet set.
inline GraphEstimate select_fdr(const EdgeProbabilityTable& table, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw ValidationError("select_fdr: alpha must lie in (0, 1)");
  std::vector<double> cutoffs{0.0};
  for (const auto& s : table.edges) cutoffs.push_back(s.probability);
  std::sort(cutoffs.begin(), cutoffs.end());
  cutoffs.erase(std::unique(cutoffs.begin(), cutoffs.end()), cutoffs.end());
  constexpr double slack = 1e-12;
  for (double c : cutoffs) {
    GraphEstimate g = select_cutoff(table, c, SelectionRule::Fdr);
    if (!g.edges.empty() && g.expected_fdr <= alpha + slack) {
      g.alpha = alpha;
      return g;
    }
  }
  GraphEstimate g = detail::estimate_shell(table, SelectionRule::Fdr);
  g.alpha = alpha;
  g.fdr_unmet = true;
  return g;
}

// Visit counts per configuration; exposed for diagnostics and tests.
inline std::map<std::vector<char>, std::uint64_t> configuration_visits(const SampleStore& store) {
  const auto edges = candidate_edges(store.p);
  std::map<std::vector<char>, std::uint64_t> visits;
  store.for_each_draw([&](const Draw& d) {
    std::vector<char> config(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) config[e] = d.state.included(edges[e]);
    ++visits[config];
  });
  return visits;
}

inline constexpr int kMaxHpmEdges = 20;

// Most frequently visited inclusion configuration. Ties go to the
// configuration with fewer edges, then to the lexicographically smallest
// indicator vector in candidate order.
inline GraphEstimate select_hpm(const SampleStore& store) {
  const auto edges = candidate_edges(store.p);
  if (static_cast<int>(edges.size()) > kMaxHpmEdges) {
    throw ValidationError("select_hpm: " + std::to_string(edges.size()) + " candidate edges exceeds the limit of " +
                          std::to_string(kMaxHpmEdges));
  }
  if (store.empty()) throw ValidationError("select_hpm: empty sample store");
  const auto visits = configuration_visits(store);
  auto size_of = [](const std::vector<char>& c) { return std::count(c.begin(), c.end(), 1); };
  auto best = visits.begin();
  for (auto it = visits.begin(); it != visits.end(); ++it) {
    if (it->second > best->second ||
        (it->second == best->second &&
         (size_of(it->first) < size_of(best->first) ||
          (size_of(it->first) == size_of(best->first) && it->first < best->first)))) {
      best = it;
    }
  }
  const EdgeProbabilityTable table = edge_probabilities(store);
  GraphEstimate g = detail::estimate_shell(table, SelectionRule::Hpm);
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (best->first[e]) g.edges.push_back(detail::selected(table.edges[e]));
  g.expected_fdr = detail::expected_fdr(g.edges);
  g.hpm_share = static_cast<double>(best->second) / static_cast<double>(store.size());
  return g;
}

}  // namespace rgm
