#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "maxvol/numerics.hpp"
#include "maxvol/oracle.hpp"

namespace maxvol {

// Graph side of the reduction: subdivisions, the triangle gadget, incidence
// matrices and exact small-scale packing solvers.

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

enum class Provenance {
  Unlabeled,
  Original,           // ref = vertex of the input graph
  SubdivisionFirst,   // p1 on the path of original edge `ref` (adjacent to the smaller endpoint)
  SubdivisionSecond,  // p2 on the path of original edge `ref`
  LineVertex,         // ref = edge index in the graph the line graph was built from
  GadgetFirst,        // w1 of original edge `ref`
  GadgetSecond,       // w2 of original edge `ref`
};

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Unlabeled: return "unlabeled";
    case Provenance::Original: return "original";
    case Provenance::SubdivisionFirst: return "p1";
    case Provenance::SubdivisionSecond: return "p2";
    case Provenance::LineVertex: return "line";
    case Provenance::GadgetFirst: return "w1";
    case Provenance::GadgetSecond: return "w2";
  }
  return "?";
}

struct VertexLabel {
  Provenance kind = Provenance::Unlabeled;
  std::size_t ref = 0;

  friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};

/// Simple undirected graph. Edges are kept normalized (u < v) and sorted, so
/// edge indices are canonical.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t vertexCount, std::vector<Edge> edges, std::vector<VertexLabel> labels = {})
      : n_(vertexCount), edges_(std::move(edges)), labels_(std::move(labels)) {
    for (auto& [u, v] : edges_) {
      if (u >= n_ || v >= n_)
        fail(ErrorKind::Domain, "edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range");
      if (u == v) fail(ErrorKind::Domain, "self-loop at vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto it = std::adjacent_find(edges_.begin(), edges_.end()); it != edges_.end())
      fail(ErrorKind::Domain, "parallel edge {" + std::to_string(it->first) + "," + std::to_string(it->second) + "}");
    if (labels_.empty()) labels_.assign(n_, VertexLabel{});
    if (labels_.size() != n_) fail(ErrorKind::Dimension, "label count does not match vertex count");
    adj_.assign(n_, {});
    for (const auto& [u, v] : edges_) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<VertexLabel>& labels() const { return labels_; }
  const VertexLabel& label(Vertex v) const { return labels_.at(v); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (const auto& nb : adj_) best = std::max(best, nb.size());
    return best;
  }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& nb = adj_.at(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  std::optional<std::size_t> edge_index(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
    if (it == edges_.end() || *it != Edge{u, v}) return std::nullopt;
    return std::size_t(it - edges_.begin());
  }

  /// Neighbor bitmasks; only for graphs with at most 64 vertices.
  std::vector<std::uint64_t> adjacency_masks() const {
    if (n_ > 64) fail(ErrorKind::TooLarge, "bitmask search limited to 64 vertices");
    std::vector<std::uint64_t> m(n_, 0);
    for (const auto& [u, v] : edges_) {
      m[u] |= std::uint64_t{1} << v;
      m[v] |= std::uint64_t{1} << u;
    }
    return m;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<VertexLabel> labels_;
  std::vector<std::vector<Vertex>> adj_;
};

// --- basic structure -------------------------------------------------------

inline Graph cycle_graph(std::size_t length) {
  if (length < 3) fail(ErrorKind::Domain, "cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < length; ++i) e.emplace_back(i, (i + 1) % length);
  return Graph(length, std::move(e));
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, std::move(e));
}

inline Graph petersen_graph() {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph(10, std::move(e));
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> e = a.edges();
  for (const auto& [u, v] : b.edges()) e.emplace_back(u + a.vertex_count(), v + a.vertex_count());
  return Graph(a.vertex_count() + b.vertex_count(), std::move(e));
}

inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  std::vector<bool> seen(g.vertex_count(), false);
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    out.emplace_back();
    std::queue<Vertex> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop();
      out.back().push_back(u);
      for (Vertex v : g.neighbors(u))
        if (!seen[v]) {
          seen[v] = true;
          q.push(v);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

/// Components that admit a 2-coloring (no odd cycle), including isolated vertices.
inline std::vector<std::vector<Vertex>> bipartite_components(const Graph& g) {
  std::vector<int> color(g.vertex_count(), -1);
  std::vector<std::vector<Vertex>> out;
  for (const auto& comp : connected_components(g)) {
    bool bip = true;
    std::queue<Vertex> q;
    color[comp.front()] = 0;
    q.push(comp.front());
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop();
      for (Vertex v : g.neighbors(u)) {
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          q.push(v);
        } else if (color[v] == color[u]) {
          bip = false;
        }
      }
    }
    if (bip) out.push_back(comp);
  }
  return out;
}

inline bool is_regular(const Graph& g, std::size_t degree) {
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != degree) return false;
  return true;
}

// --- constructions ---------------------------------------------------------

namespace detail {

// Replaces every edge flagged in `subdivide` by a path u, p1, p2, v.
inline Graph subdivide_edges(const Graph& g, const std::vector<bool>& subdivide) {
  const std::size_t n = g.vertex_count();
  std::vector<VertexLabel> labels;
  for (Vertex v = 0; v < n; ++v) labels.push_back({Provenance::Original, v});
  std::vector<Edge> edges;
  std::size_t next = n;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edges()[e];
    if (!subdivide[e]) {
      edges.emplace_back(u, v);
      continue;
    }
    const Vertex p1 = next++;
    const Vertex p2 = next++;
    labels.push_back({Provenance::SubdivisionFirst, e});
    labels.push_back({Provenance::SubdivisionSecond, e});
    edges.emplace_back(u, p1);
    edges.emplace_back(p1, p2);
    edges.emplace_back(p2, v);
  }
  return Graph(next, std::move(edges), std::move(labels));
}

}  // namespace detail

/// Every edge {u,v} becomes the path u, p1, p2, v.
inline Graph double_subdivide(const Graph& g) {
  return detail::subdivide_edges(g, std::vector<bool>(g.edge_count(), true));
}

struct MatchingResult {
  std::vector<std::size_t> edgeIndices;  // into g.edges()
  bool exact = false;                     // proven maximum
};

namespace detail {

struct ExactMatching {
  const Graph& g;
  std::vector<std::uint64_t> adj;
  std::unordered_map<std::uint64_t, int> memo;

  int solve(std::uint64_t freeMask) {
    if (std::popcount(freeMask) < 2) return 0;
    if (auto it = memo.find(freeMask); it != memo.end()) return it->second;
    const Vertex v = Vertex(std::countr_zero(freeMask));
    const std::uint64_t rest = freeMask & ~(std::uint64_t{1} << v);
    int best = solve(rest);
    for (std::uint64_t nb = adj[v] & rest; nb; nb &= nb - 1) {
      const Vertex u = Vertex(std::countr_zero(nb));
      best = std::max(best, 1 + solve(rest & ~(std::uint64_t{1} << u)));
    }
    memo.emplace(freeMask, best);
    return best;
  }

  std::vector<std::size_t> reconstruct(std::uint64_t freeMask) {
    std::vector<std::size_t> out;
    while (std::popcount(freeMask) >= 2) {
      const int target = solve(freeMask);
      if (target == 0) break;
      const Vertex v = Vertex(std::countr_zero(freeMask));
      const std::uint64_t rest = freeMask & ~(std::uint64_t{1} << v);
      bool matched = false;
      for (std::uint64_t nb = adj[v] & rest; nb; nb &= nb - 1) {
        const Vertex u = Vertex(std::countr_zero(nb));
        const std::uint64_t after = rest & ~(std::uint64_t{1} << u);
        if (1 + solve(after) == target) {
          out.push_back(*g.edge_index(v, u));
          freeMask = after;
          matched = true;
          break;
        }
      }
      if (!matched) freeMask = rest;
    }
    return out;
  }
};

// Alternating-path DFS from a free vertex; flips the first augmenting path
// found. No blossom shrinking, so it may miss paths through odd cycles.
inline bool augment_once(const Graph& g, std::vector<long>& mate) {
  const std::size_t n = g.vertex_count();
  for (Vertex root = 0; root < n; ++root) {
    if (mate[root] >= 0) continue;
    std::vector<bool> used(n, false);
    std::vector<Vertex> path{root};
    used[root] = true;
    std::function<bool(Vertex)> dfs = [&](Vertex u) -> bool {
      for (Vertex v : g.neighbors(u)) {
        if (used[v] || mate[u] == long(v)) continue;
        if (mate[v] < 0) {
          path.push_back(v);
          return true;
        }
        const Vertex w = Vertex(mate[v]);
        if (used[w]) continue;
        used[v] = used[w] = true;
        path.push_back(v);
        path.push_back(w);
        if (dfs(w)) return true;
        path.pop_back();
        path.pop_back();
      }
      return false;
    };
    if (dfs(root)) {
      for (std::size_t i = 0; i + 1 < path.size(); i += 2) {
        mate[path[i]] = long(path[i + 1]);
        mate[path[i + 1]] = long(path[i]);
      }
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Maximum matching: exhaustive search up to 20 vertices, otherwise greedy
/// maximal matching improved by alternating-path augmentation.
inline MatchingResult maximum_matching(const Graph& g) {
  MatchingResult res;
  if (g.vertex_count() <= 20) {
    detail::ExactMatching search{g, g.adjacency_masks(), {}};
    res.edgeIndices = search.reconstruct((std::uint64_t{1} << g.vertex_count()) - 1);
    res.exact = true;
  } else {
    std::vector<long> mate(g.vertex_count(), -1);
    for (const auto& [u, v] : g.edges())
      if (mate[u] < 0 && mate[v] < 0) {
        mate[u] = long(v);
        mate[v] = long(u);
      }
    while (detail::augment_once(g, mate)) {
    }
    for (Vertex u = 0; u < g.vertex_count(); ++u)
      if (mate[u] > long(u)) res.edgeIndices.push_back(*g.edge_index(u, Vertex(mate[u])));
    // a perfect matching is trivially maximum
    res.exact = 2 * res.edgeIndices.size() == g.vertex_count();
  }
  std::sort(res.edgeIndices.begin(), res.edgeIndices.end());
  return res;
}

struct MatchingSubdivision {
  Graph graph;
  MatchingResult matching;
};

/// Double-subdivides only the edges outside a maximum matching of a cubic
/// graph, so every vertex keeps at least two subdivided incident edges.
inline MatchingSubdivision matching_subdivide(const Graph& g) {
  if (!is_regular(g, 3)) fail(ErrorKind::Domain, "matching subdivision needs a 3-regular graph");
  MatchingResult m = maximum_matching(g);
  std::vector<bool> subdivide(g.edge_count(), true);
  for (std::size_t e : m.edgeIndices) subdivide[e] = false;
  return {detail::subdivide_edges(g, subdivide), std::move(m)};
}

/// Line graph of the subdivided graph plus, for every subdivided path
/// u, p1, p2, v, a vertex w1 joined to {u,p1}, {p1,p2} and a vertex w2
/// joined to {p1,p2}, {p2,v}. Line vertex k corresponds to edge k of `gp`.
inline Graph gadget_graph(const Graph& gp) {
  std::map<std::size_t, std::array<long, 2>> paths;  // original edge -> (p1, p2)
  for (Vertex v = 0; v < gp.vertex_count(); ++v) {
    const VertexLabel& lab = gp.label(v);
    if (lab.kind == Provenance::SubdivisionFirst) paths.try_emplace(lab.ref, std::array<long, 2>{-1, -1}).first->second[0] = long(v);
    if (lab.kind == Provenance::SubdivisionSecond) paths.try_emplace(lab.ref, std::array<long, 2>{-1, -1}).first->second[1] = long(v);
  }
  if (paths.empty()) fail(ErrorKind::Domain, "gadget graph needs subdivision provenance labels");

  const std::size_t m = gp.edge_count();
  std::vector<VertexLabel> labels;
  for (std::size_t k = 0; k < m; ++k) labels.push_back({Provenance::LineVertex, k});
  std::vector<Edge> edges;
  for (Vertex v = 0; v < gp.vertex_count(); ++v) {
    const auto& nb = gp.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) edges.emplace_back(*gp.edge_index(v, nb[i]), *gp.edge_index(v, nb[j]));
  }

  std::size_t next = m;
  for (const auto& [orig, pp] : paths) {
    if (pp[0] < 0 || pp[1] < 0) fail(ErrorKind::Domain, "incomplete subdivision path for edge " + std::to_string(orig));
    const Vertex p1 = Vertex(pp[0]);
    const Vertex p2 = Vertex(pp[1]);
    if (gp.degree(p1) != 2 || gp.degree(p2) != 2 || !gp.has_edge(p1, p2))
      fail(ErrorKind::Domain, "subdivision vertices of edge " + std::to_string(orig) + " are not a path");
    const Vertex u = gp.neighbors(p1)[0] == p2 ? gp.neighbors(p1)[1] : gp.neighbors(p1)[0];
    const Vertex v = gp.neighbors(p2)[0] == p1 ? gp.neighbors(p2)[1] : gp.neighbors(p2)[0];
    const std::size_t up1 = *gp.edge_index(u, p1);
    const std::size_t z = *gp.edge_index(p1, p2);
    const std::size_t p2v = *gp.edge_index(p2, v);
    const Vertex w1 = next++;
    const Vertex w2 = next++;
    labels.push_back({Provenance::GadgetFirst, orig});
    labels.push_back({Provenance::GadgetSecond, orig});
    edges.emplace_back(w1, up1);
    edges.emplace_back(w1, z);
    edges.emplace_back(w2, z);
    edges.emplace_back(w2, p2v);
  }
  return Graph(next, std::move(edges), std::move(labels));
}

/// |V| x |E| node-edge incidence matrix without any rank validation.
inline MatrixXd incidence_matrix_raw(const Graph& g) {
  MatrixXd a = MatrixXd::Zero(Eigen::Index(g.vertex_count()), Eigen::Index(g.edge_count()));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    a(Eigen::Index(g.edges()[e].first), Eigen::Index(e)) = 1.0;
    a(Eigen::Index(g.edges()[e].second), Eigen::Index(e)) = 1.0;
  }
  return a;
}

/// Incidence matrix as an MVD instance; every component must contain an odd
/// cycle, otherwise the matrix is row-rank deficient.
inline InstanceMatrix incidence_matrix(const Graph& g) {
  const auto bip = bipartite_components(g);
  if (!bip.empty()) {
    std::string comp;
    for (Vertex v : bip.front()) comp += (comp.empty() ? "" : ",") + std::to_string(v);
    fail(ErrorKind::Rank, "incidence matrix is rank deficient: component {" + comp + "} has no odd cycle");
  }
  return InstanceMatrix(incidence_matrix_raw(g));
}

// --- cycles and packings ---------------------------------------------------

inline constexpr std::size_t kMaxCycleCount = 1'000'000;
inline constexpr std::size_t kMaxOcpVertices = 32;
inline constexpr std::size_t kMaxTriangleVertices = 64;
inline constexpr std::size_t kMaxStableSetVertices = 40;

inline std::vector<std::array<Vertex, 3>> enumerate_triangles(const Graph& g) {
  std::vector<std::array<Vertex, 3>> out;
  for (const auto& [u, v] : g.edges())
    for (Vertex w : g.neighbors(v))
      if (w > v && g.has_edge(u, w)) out.push_back({u, v, w});
  return out;
}

/// Chordless odd cycles, each as its vertex sequence starting at the smallest
/// vertex. Any odd cycle contains a chordless odd cycle on a subset of its
/// vertices, so packings may restrict to these.
inline std::vector<std::vector<Vertex>> enumerate_odd_chordless_cycles(const Graph& g,
                                                                        std::size_t cap = kMaxCycleCount) {
  const auto adj = g.adjacency_masks();
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> path;
  auto bit = [](Vertex v) { return std::uint64_t{1} << v; };

  std::function<void(std::uint64_t)> extend = [&](std::uint64_t pathMask) {
    const Vertex s = path.front();
    const Vertex last = path.back();
    const std::uint64_t interior = pathMask & ~bit(s) & ~bit(last);
    for (Vertex v : g.neighbors(last)) {
      if (v <= s || (pathMask & bit(v))) continue;
      if (adj[v] & interior) continue;  // chord to the path interior
      const bool closes = path.size() >= 2 && (adj[v] & bit(s));
      if (closes) {
        if ((path.size() + 1) % 2 == 1 && path[1] < v) {
          out.push_back(path);
          out.back().push_back(v);
          if (out.size() > cap) fail(ErrorKind::TooLarge, "more than " + std::to_string(cap) + " odd cycles");
        }
        continue;
      }
      path.push_back(v);
      extend(pathMask | bit(v));
      path.pop_back();
    }
  };

  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    path.assign(1, s);
    extend(bit(s));
  }
  return out;
}

struct PackingResult {
  std::size_t value = 0;
  std::vector<std::vector<Vertex>> witness;  // vertex-disjoint cycles, cycle order
};

namespace detail {

// Exact maximum set packing over vertex masks, memoized on the set of still
// available vertices. Branches on the lowest available vertex: skip it, or
// take one of the sets whose smallest vertex it is.
struct PackingSearch {
  std::vector<std::vector<std::size_t>> byMin;
  const std::vector<std::uint64_t>& masks;
  std::unordered_map<std::uint64_t, int> memo;

  PackingSearch(const std::vector<std::uint64_t>& m, std::size_t vertexCount) : byMin(vertexCount), masks(m) {
    for (std::size_t i = 0; i < masks.size(); ++i) byMin[std::size_t(std::countr_zero(masks[i]))].push_back(i);
  }

  int solve(std::uint64_t avail) {
    if (avail == 0) return 0;
    if (auto it = memo.find(avail); it != memo.end()) return it->second;
    const std::size_t v = std::size_t(std::countr_zero(avail));
    const std::uint64_t rest = avail & ~(std::uint64_t{1} << v);
    int best = solve(rest);
    for (std::size_t k : byMin[v])
      if ((masks[k] & ~avail) == 0) best = std::max(best, 1 + solve(avail & ~masks[k]));
    memo.emplace(avail, best);
    return best;
  }

  std::vector<std::size_t> reconstruct(std::uint64_t avail) {
    std::vector<std::size_t> chosen;
    while (avail) {
      const int target = solve(avail);
      if (target == 0) break;
      const std::size_t v = std::size_t(std::countr_zero(avail));
      const std::uint64_t rest = avail & ~(std::uint64_t{1} << v);
      bool took = false;
      for (std::size_t k : byMin[v]) {
        if ((masks[k] & ~avail) == 0 && 1 + solve(avail & ~masks[k]) == target) {
          chosen.push_back(k);
          avail &= ~masks[k];
          took = true;
          break;
        }
      }
      if (!took) avail = rest;
    }
    return chosen;
  }
};

inline PackingResult pack(const std::vector<std::vector<Vertex>>& cycles, std::size_t vertexCount) {
  std::vector<std::uint64_t> masks;
  std::uint64_t all = 0;
  for (const auto& c : cycles) {
    std::uint64_t m = 0;
    for (Vertex v : c) m |= std::uint64_t{1} << v;
    masks.push_back(m);
    all |= m;
  }
  PackingSearch search(masks, vertexCount);
  PackingResult res;
  for (std::size_t k : search.reconstruct(all)) res.witness.push_back(cycles[k]);
  res.value = res.witness.size();
  return res;
}

}  // namespace detail

/// Exact odd cycle packing number with a witness (|V| <= 32).
inline PackingResult ocp_bruteforce(const Graph& g) {
  if (g.vertex_count() > kMaxOcpVertices)
    fail(ErrorKind::TooLarge, "odd cycle packing limited to 32 vertices, got " + std::to_string(g.vertex_count()));
  return detail::pack(enumerate_odd_chordless_cycles(g), g.vertex_count());
}

/// Exact maximum vertex-disjoint triangle packing (|V| <= 64).
inline PackingResult triangle_packing_bruteforce(const Graph& g) {
  if (g.vertex_count() > kMaxTriangleVertices)
    fail(ErrorKind::TooLarge, "triangle packing limited to 64 vertices, got " + std::to_string(g.vertex_count()));
  std::vector<std::vector<Vertex>> tris;
  for (const auto& t : enumerate_triangles(g)) tris.push_back({t[0], t[1], t[2]});
  return detail::pack(tris, g.vertex_count());
}

namespace detail {

inline int stable_set(std::uint64_t p, const std::vector<std::uint64_t>& adj) {
  if (p == 0) return 0;
  Vertex branch = 0;
  int branchDeg = -1;
  for (std::uint64_t q = p; q; q &= q - 1) {
    const Vertex v = Vertex(std::countr_zero(q));
    const int deg = std::popcount(adj[v] & p);
    if (deg <= 1) return 1 + stable_set(p & ~(adj[v] | (std::uint64_t{1} << v)), adj);
    if (deg > branchDeg) {
      branchDeg = deg;
      branch = v;
    }
  }
  const std::uint64_t bit = std::uint64_t{1} << branch;
  return std::max(stable_set(p & ~bit, adj), 1 + stable_set(p & ~(adj[branch] | bit), adj));
}

}  // namespace detail

/// Exact stability number alpha(G) (|V| <= 40).
inline std::size_t stable_set_bruteforce(const Graph& g) {
  if (g.vertex_count() > kMaxStableSetVertices)
    fail(ErrorKind::TooLarge, "stable set search limited to 40 vertices, got " + std::to_string(g.vertex_count()));
  if (g.vertex_count() == 0) return 0;
  const std::uint64_t all = (std::uint64_t{1} << g.vertex_count()) - 1;
  return std::size_t(detail::stable_set(all, g.adjacency_masks()));
}

// --- incidence determinants ------------------------------------------------

/// For a set of |V| edges: if every component of the spanning subgraph has as
/// many edges as vertices and contains an odd cycle, the incidence minor has
/// |det| = 2^(#components) and that exponent is returned; otherwise the minor
/// is singular.
inline std::optional<std::size_t> incidence_minor_exponent(const Graph& g, std::span<const std::size_t> edgeIndices) {
  if (edgeIndices.size() != g.vertex_count()) return std::nullopt;
  std::vector<Edge> sub;
  for (std::size_t e : edgeIndices) sub.push_back(g.edges().at(e));
  const Graph h(g.vertex_count(), std::move(sub));
  if (!bipartite_components(h).empty()) return std::nullopt;
  std::size_t comps = 0;
  for (const auto& comp : connected_components(h)) {
    std::size_t edgeEnds = 0;
    for (Vertex v : comp) edgeEnds += h.degree(v);
    if (edgeEnds / 2 != comp.size()) return std::nullopt;
    ++comps;
  }
  return comps;
}

/// Extends a packing of vertex-disjoint odd cycles to an incidence basis:
/// the cycle edges plus a forest hanging every other vertex off some cycle.
/// Its minor has |det| = 2^(packing size).
inline std::vector<std::size_t> odd_cycle_basis(const Graph& g, const PackingResult& packing) {
  std::vector<bool> covered(g.vertex_count(), false);
  std::vector<std::size_t> edges;
  for (const auto& cyc : packing.witness) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const auto e = g.edge_index(cyc[i], cyc[(i + 1) % cyc.size()]);
      if (!e) fail(ErrorKind::InternalConsistency, "packing witness is not a cycle of the graph");
      edges.push_back(*e);
      covered[cyc[i]] = true;
    }
  }
  std::queue<Vertex> q;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (covered[v]) q.push(v);
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop();
    for (Vertex v : g.neighbors(u))
      if (!covered[v]) {
        covered[v] = true;
        edges.push_back(*g.edge_index(u, v));
        q.push(v);
      }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    fail(ErrorKind::Domain, "some component carries no cycle of the packing");
  std::sort(edges.begin(), edges.end());
  return edges;
}

struct OcpSubdetReport {
  PackingResult packing;
  Basis maximizer;
  double logDeltaMax = 0.0;
  bool equal = false;
};

/// Computes ocp(G) and Delta_max(A_G) independently by exhaustive search and
/// checks Delta_max = 2^ocp.
inline OcpSubdetReport verify_ocp_subdet(const Graph& g) {
  const InstanceMatrix a = incidence_matrix(g);
  OcpSubdetReport rep;
  rep.packing = ocp_bruteforce(g);
  rep.maximizer = max_subdet_bruteforce(a);
  rep.logDeltaMax = rep.maximizer.logAbsDet;
  rep.equal = std::abs(rep.logDeltaMax - double(rep.packing.value) * std::numbers::ln2) <= 1e-9;
  if (!rep.equal)
    fail(ErrorKind::CorrespondenceViolation, "Delta_max = " + std::to_string(std::exp(rep.logDeltaMax)) +
                                                 " but 2^ocp = " + std::to_string(std::exp2(double(rep.packing.value))));
  return rep;
}

/// For the gadget graph built from `gp`: maps every triangle to the vertex of
/// `gp` it stands for (the endpoint shared by its line vertices). Returns
/// nullopt if some triangle has no such vertex.
inline std::optional<std::vector<Vertex>> gadget_triangle_vertices(const Graph& h, const Graph& gp) {
  std::vector<Vertex> out;
  for (const auto& t : enumerate_triangles(h)) {
    std::vector<Edge> lineEdges;
    for (Vertex x : t)
      if (h.label(x).kind == Provenance::LineVertex) lineEdges.push_back(gp.edges().at(h.label(x).ref));
    if (lineEdges.size() < 2) return std::nullopt;
    std::optional<Vertex> shared;
    for (Vertex cand : {lineEdges[0].first, lineEdges[0].second}) {
      bool all = true;
      for (const auto& e : lineEdges)
        if (e.first != cand && e.second != cand) all = false;
      if (all) shared = cand;
    }
    if (!shared) return std::nullopt;
    out.push_back(*shared);
  }
  return out;
}

}  // namespace maxvol
