#ifndef SEPCS_NETWORK_HPP
#define SEPCS_NETWORK_HPP

#include <optional>
#include <span>
#include <vector>

#include "sepcs/rational.hpp"

namespace sepcs {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Rational cost;
};

/// One way of leaving a vertex: the edge used and the vertex reached.
struct Arc {
  EdgeId edge = 0;
  Vertex to = 0;
};

/// Graph with nonnegative rational edge costs. Parallel edges are allowed,
/// self loops are not. In a directed network edge (u, v) is traversed u -> v.
class Network {
 public:
  Network() = default;
  Network(int num_vertices, bool directed);

  EdgeId add_edge(Vertex u, Vertex v, Rational cost);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool directed() const { return directed_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Arcs leaving v, sorted by (reached vertex, edge id).
  const std::vector<Arc>& out(Vertex v) const { return out_[v]; }
  /// Arcs entering v (reverse direction), same ordering. Equal to out() when
  /// undirected.
  const std::vector<Arc>& in(Vertex v) const { return in_[v]; }

  Vertex other(EdgeId e, Vertex v) const {
    return edges_[e].u == v ? edges_[e].v : edges_[e].u;
  }

 private:
  void insert_sorted(std::vector<Arc>& list, Arc arc);

  int num_vertices_ = 0;
  bool directed_ = false;
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
};

struct Path {
  std::vector<Vertex> vertices;  // from start to end
  std::vector<EdgeId> edges;     // edges[k] joins vertices[k] and vertices[k+1]
  Rational cost;
};

/// Restrictions for shortest-path searches. Null pointers mean "no restriction".
struct SearchOptions {
  const std::vector<bool>* edge_enabled = nullptr;
  /// Vertices that may terminate a path but never be passed through.
  const std::vector<bool>* no_transit = nullptr;
  /// Vertices that may not be entered at all.
  const std::vector<bool>* vertex_blocked = nullptr;
};

/// Single-source shortest paths with per-edge weights. Ties are broken by
/// the lexicographically smallest vertex sequence, then edge sequence, so
/// results are fully deterministic.
class ShortestPathTree {
 public:
  ShortestPathTree(const Network& net, Vertex root, std::span<const Rational> weight,
                   const SearchOptions& options = {});

  bool reached(Vertex v) const { return best_[v].has_value(); }
  const Rational& distance(Vertex v) const { return best_[v]->cost; }
  /// Path from the root to v; std::nullopt if unreachable.
  std::optional<Path> path_to(Vertex v) const { return best_[v]; }

 private:
  std::vector<std::optional<Path>> best_;
};

std::optional<Path> shortest_path(const Network& net, Vertex from, Vertex to,
                                  std::span<const Rational> weight,
                                  const SearchOptions& options = {});

/// Edge costs of the network as a weight vector.
std::vector<Rational> edge_costs(const Network& net);

/// Orders an edge set into a simple path from `from` to `to` (respecting
/// direction in directed networks). Returns std::nullopt if the edges do not
/// form exactly such a path. An empty set is a path iff from == to.
std::optional<Path> order_path(const Network& net, Vertex from, Vertex to,
                               std::span<const EdgeId> edges);

/// Vertices reachable from `from` (following edge direction).
std::vector<bool> reachable_from(const Network& net, Vertex from,
                                 const std::vector<bool>* edge_enabled = nullptr);

/// Removes cycles from a walk, keeping the first visit of each vertex in
/// chronological order (loop erasure).
Path loop_erase(const Path& walk);

}  // namespace sepcs

#endif  // SEPCS_NETWORK_HPP
