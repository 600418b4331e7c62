#pragma once

// Reciprocal graphs: directed edges (including directed cycles) plus undirected
// edges, with the graph-theoretic machinery behind the global Markov property.
// Vertices are 1-based throughout the public interface.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rgm/errors.hpp"

namespace rgm {

using VertexSet = std::set<int>;
using DirectedEdge = std::pair<int, int>;    // (from, to)
using UndirectedEdge = std::pair<int, int>;  // stored as (min, max)

class ReciprocalGraph {
 public:
  ReciprocalGraph() = default;

  // Throws ValidationError on out-of-range vertices, self-loops, or a pair that
  // is both directed and undirected. Reciprocal validity is checked separately
  // by is_reciprocal().
  ReciprocalGraph(int vertex_count, const std::vector<DirectedEdge>& directed,
                  const std::vector<UndirectedEdge>& undirected)
      : vertex_count_(vertex_count) {
    if (vertex_count < 1) throw ValidationError("graph needs at least one vertex");
    for (auto [from, to] : directed) {
      check_vertex(from);
      check_vertex(to);
      if (from == to) throw ValidationError("self-loop on vertex " + std::to_string(from));
      directed_.insert({from, to});
    }
    for (auto [a, b] : undirected) {
      check_vertex(a);
      check_vertex(b);
      if (a == b) throw ValidationError("self-loop on vertex " + std::to_string(a));
      undirected_.insert({std::min(a, b), std::max(a, b)});
    }
    for (auto [from, to] : directed_) {
      if (undirected_.count({std::min(from, to), std::max(from, to)})) {
        throw ValidationError("pair {" + std::to_string(from) + "," + std::to_string(to) +
                              "} is both directed and undirected");
      }
    }
  }

  int vertex_count() const { return vertex_count_; }
  const std::set<DirectedEdge>& directed_edges() const { return directed_; }
  const std::set<UndirectedEdge>& undirected_edges() const { return undirected_; }

  bool has_directed(int from, int to) const { return directed_.count({from, to}) > 0; }
  bool has_undirected(int a, int b) const {
    return undirected_.count({std::min(a, b), std::max(a, b)}) > 0;
  }

  VertexSet vertices() const {
    VertexSet all;
    for (int v = 1; v <= vertex_count_; ++v) all.insert(v);
    return all;
  }

  // Subgraph induced by `keep`, with vertices relabelled 1..|keep| in
  // increasing order of their original index.
  ReciprocalGraph induced(const VertexSet& keep) const {
    std::vector<int> relabel(vertex_count_ + 1, 0);
    int next = 0;
    for (int v : keep) {
      check_vertex(v);
      relabel[v] = ++next;
    }
    std::vector<DirectedEdge> d;
    std::vector<UndirectedEdge> u;
    for (auto [a, b] : directed_)
      if (relabel[a] && relabel[b]) d.push_back({relabel[a], relabel[b]});
    for (auto [a, b] : undirected_)
      if (relabel[a] && relabel[b]) u.push_back({relabel[a], relabel[b]});
    return ReciprocalGraph(std::max(next, 1), d, u);
  }

  friend bool operator==(const ReciprocalGraph&, const ReciprocalGraph&) = default;

 private:
  void check_vertex(int v) const {
    if (v < 1 || v > vertex_count_) {
      throw ValidationError("vertex " + std::to_string(v) + " outside [1, " +
                            std::to_string(vertex_count_) + "]");
    }
  }

  int vertex_count_ = 0;
  std::set<DirectedEdge> directed_;
  std::set<UndirectedEdge> undirected_;
};

namespace detail {

inline void check_subset(const ReciprocalGraph& g, const VertexSet& s) {
  for (int v : s) {
    if (v < 1 || v > g.vertex_count()) {
      throw ValidationError("vertex " + std::to_string(v) + " not in graph");
    }
  }
}

inline std::vector<std::vector<int>> undirected_adjacency(const ReciprocalGraph& g) {
  std::vector<std::vector<int>> adj(g.vertex_count() + 1);
  for (auto [a, b] : g.undirected_edges()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

}  // namespace detail

// Connected components of the undirected-edge subgraph, ordered by smallest
// member. Isolated vertices come back as singletons.
inline std::vector<VertexSet> path_components(const ReciprocalGraph& g) {
  const int p = g.vertex_count();
  auto adj = detail::undirected_adjacency(g);
  std::vector<int> label(p + 1, 0);
  std::vector<VertexSet> components;
  for (int start = 1; start <= p; ++start) {
    if (label[start]) continue;
    components.emplace_back();
    std::vector<int> stack{start};
    label[start] = static_cast<int>(components.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      components.back().insert(v);
      for (int w : adj[v]) {
        if (!label[w]) {
          label[w] = label[start];
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

inline bool is_reciprocal(const ReciprocalGraph& g) {
  auto components = path_components(g);
  std::vector<int> label(g.vertex_count() + 1, 0);
  for (std::size_t c = 0; c < components.size(); ++c)
    for (int v : components[c]) label[v] = static_cast<int>(c);
  return std::none_of(g.directed_edges().begin(), g.directed_edges().end(),
                      [&](const DirectedEdge& e) { return label[e.first] == label[e.second]; });
}

// bd(S): parents (via directed edges into S) and undirected neighbours of S,
// minus S itself.
inline VertexSet boundary(const ReciprocalGraph& g, const VertexSet& s) {
  detail::check_subset(g, s);
  VertexSet bd;
  for (auto [from, to] : g.directed_edges())
    if (s.count(to) && !s.count(from)) bd.insert(from);
  for (auto [a, b] : g.undirected_edges()) {
    if (s.count(a) && !s.count(b)) bd.insert(b);
    if (s.count(b) && !s.count(a)) bd.insert(a);
  }
  return bd;
}

// Smallest superset of s with empty boundary.
inline VertexSet anterior_set(const ReciprocalGraph& g, const VertexSet& s) {
  VertexSet closure = s;
  for (;;) {
    VertexSet bd = boundary(g, closure);
    if (bd.empty()) return closure;
    closure.insert(bd.begin(), bd.end());
  }
}

// Joins every pair in the boundary of each path component, then drops edge
// directions. Path components are the undirected components; the two ends of
// a directed cycle stay in separate components, so each vertex of a cycle
// contributes its own parent set.
inline ReciprocalGraph moralize(const ReciprocalGraph& g) {
  if (!is_reciprocal(g)) {
    throw ValidationError("moralize: graph has a directed edge inside a path component");
  }
  std::vector<UndirectedEdge> edges(g.undirected_edges().begin(), g.undirected_edges().end());
  for (auto [from, to] : g.directed_edges()) edges.push_back({from, to});
  for (const auto& component : path_components(g)) {
    VertexSet bd = boundary(g, component);
    for (auto i = bd.begin(); i != bd.end(); ++i)
      for (auto j = std::next(i); j != bd.end(); ++j) edges.push_back({*i, *j});
  }
  return ReciprocalGraph(g.vertex_count(), {}, edges);
}

// True iff every path between v1 and v2 in the undirected graph meets v3.
inline bool separates(const ReciprocalGraph& g_undirected, const VertexSet& v1, const VertexSet& v2,
                      const VertexSet& v3) {
  if (!g_undirected.directed_edges().empty()) {
    throw ValidationError("separates: graph must be undirected");
  }
  detail::check_subset(g_undirected, v1);
  detail::check_subset(g_undirected, v2);
  detail::check_subset(g_undirected, v3);
  auto overlaps = [](const VertexSet& a, const VertexSet& b) {
    return std::any_of(a.begin(), a.end(), [&](int v) { return b.count(v) > 0; });
  };
  if (overlaps(v1, v2) || overlaps(v1, v3) || overlaps(v2, v3)) {
    throw ValidationError("separates: vertex sets must be pairwise disjoint");
  }
  auto adj = detail::undirected_adjacency(g_undirected);
  std::vector<char> seen(g_undirected.vertex_count() + 1, 0);
  std::vector<int> stack(v1.begin(), v1.end());
  for (int v : v1) seen[v] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v2.count(v)) return false;
    for (int w : adj[v]) {
      if (!seen[w] && !v3.count(w)) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return true;
}

struct Independence {
  VertexSet first;
  VertexSet second;
  VertexSet given;

  friend auto operator<=>(const Independence&, const Independence&) = default;
  friend bool operator==(const Independence&, const Independence&) = default;
};

inline constexpr int kMaxEnumerationVertices = 8;

// All disjoint (V1, V2 | V3) with V1, V2 nonempty such that V3 separates V1 and
// V2 in the moral graph of the subgraph induced by an(V1 ∪ V2 ∪ V3). Each
// unordered pair {V1, V2} is reported once, with the lexicographically smaller
// set first. Result is sorted.
inline std::vector<Independence> implied_independencies(const ReciprocalGraph& g) {
  const int p = g.vertex_count();
  if (p > kMaxEnumerationVertices) {
    throw ValidationError("implied_independencies: " + std::to_string(p) +
                          " vertices exceeds the enumeration cap of " +
                          std::to_string(kMaxEnumerationVertices));
  }
  auto to_set = [p](std::uint32_t mask) {
    VertexSet s;
    for (int v = 0; v < p; ++v)
      if (mask & (1u << v)) s.insert(v + 1);
    return s;
  };

  // Moral graph of the anterior closure, keyed by the union mask, as
  // undirected adjacency bitmasks over the original labels.
  const std::uint32_t full = (1u << p) - 1;
  std::vector<std::vector<std::uint32_t>> moral_by_union(full + 1);
  auto moral_adjacency = [&](std::uint32_t union_mask) -> const std::vector<std::uint32_t>& {
    auto& cached = moral_by_union[union_mask];
    if (!cached.empty()) return cached;
    VertexSet an = anterior_set(g, to_set(union_mask));
    std::vector<int> original(an.begin(), an.end());
    ReciprocalGraph m = moralize(g.induced(an));
    cached.assign(p, 0);
    for (auto [a, b] : m.undirected_edges()) {
      int u = original[a - 1] - 1;
      int w = original[b - 1] - 1;
      cached[u] |= 1u << w;
      cached[w] |= 1u << u;
    }
    return cached;
  };

  std::vector<Independence> out;
  // Assign each vertex to one of {unused, V1, V2, V3}.
  std::uint32_t total = 1;
  for (int v = 0; v < p; ++v) total *= 4;
  for (std::uint32_t code = 0; code < total; ++code) {
    std::uint32_t m1 = 0, m2 = 0, m3 = 0, c = code;
    for (int v = 0; v < p; ++v, c /= 4) {
      switch (c % 4) {
        case 1: m1 |= 1u << v; break;
        case 2: m2 |= 1u << v; break;
        case 3: m3 |= 1u << v; break;
        default: break;
      }
    }
    if (!m1 || !m2) continue;
    VertexSet s1 = to_set(m1), s2 = to_set(m2);
    if (!(s1 < s2)) continue;
    const auto& adj = moral_adjacency(m1 | m2 | m3);
    // Reachability from V1 avoiding V3.
    std::uint32_t reached = m1, frontier = m1;
    while (frontier) {
      std::uint32_t next = 0;
      for (int v = 0; v < p; ++v)
        if (frontier & (1u << v)) next |= adj[v];
      next &= ~reached & ~m3;
      reached |= next;
      frontier = next;
    }
    if (!(reached & m2)) out.push_back({std::move(s1), std::move(s2), to_set(m3)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool markov_equivalent(const ReciprocalGraph& g1, const ReciprocalGraph& g2) {
  if (g1.vertex_count() != g2.vertex_count()) {
    throw ValidationError("markov_equivalent: vertex counts differ");
  }
  return implied_independencies(g1) == implied_independencies(g2);
}

// Graphviz rendering; undirected edges are drawn without arrowheads.
inline std::string to_dot(const ReciprocalGraph& g, const std::vector<std::string>& labels = {}) {
  auto name = [&](int v) {
    return labels.size() >= static_cast<std::size_t>(v) ? labels[v - 1] : std::to_string(v);
  };
  std::ostringstream os;
  os << "digraph G {\n";
  for (int v = 1; v <= g.vertex_count(); ++v) os << "  \"" << name(v) << "\";\n";
  for (auto [a, b] : g.directed_edges()) os << "  \"" << name(a) << "\" -> \"" << name(b) << "\";\n";
  for (auto [a, b] : g.undirected_edges())
    os << "  \"" << name(a) << "\" -> \"" << name(b) << "\" [dir=none];\n";
  os << "}\n";
  return os.str();
}

}  // namespace rgm
