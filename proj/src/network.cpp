#include "sepcs/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace sepcs {

Network::Network(int num_vertices, bool directed)
    : num_vertices_(num_vertices), directed_(directed), out_(num_vertices), in_(num_vertices) {
  if (num_vertices < 0) throw std::invalid_argument("negative vertex count");
}

void Network::insert_sorted(std::vector<Arc>& list, Arc arc) {
  auto pos = std::lower_bound(list.begin(), list.end(), arc, [](const Arc& a, const Arc& b) {
    return a.to != b.to ? a.to < b.to : a.edge < b.edge;
  });
  list.insert(pos, arc);
}

EdgeId Network::add_edge(Vertex u, Vertex v, Rational cost) {
  if (u < 0 || v < 0 || u >= num_vertices_ || v >= num_vertices_) {
    throw std::invalid_argument("edge endpoint out of range");
  }
  if (u == v) throw std::invalid_argument("self loops are not supported");
  if (cost.sign() < 0) throw std::invalid_argument("negative edge cost");
  EdgeId id = num_edges();
  edges_.push_back(Edge{u, v, std::move(cost)});
  insert_sorted(out_[u], Arc{id, v});
  insert_sorted(in_[v], Arc{id, u});
  if (!directed_) {
    insert_sorted(out_[v], Arc{id, u});
    insert_sorted(in_[u], Arc{id, v});
  }
  return id;
}

namespace {

// Lexicographic comparison of two equally expensive candidate paths.
bool sequence_less(const Path& a, const Path& b) {
  if (a.vertices != b.vertices) return a.vertices < b.vertices;
  return a.edges < b.edges;
}

bool label_less(const Path& a, const Path& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  return sequence_less(a, b);
}

bool flag(const std::vector<bool>* mask, int idx) { return mask != nullptr && (*mask)[idx]; }

}  // namespace

ShortestPathTree::ShortestPathTree(const Network& net, Vertex root,
                                   std::span<const Rational> weight,
                                   const SearchOptions& options)
    : best_(net.num_vertices()) {
  const int n = net.num_vertices();
  std::vector<bool> done(n, false);
  best_[root] = Path{{root}, {}, Rational(0)};
  for (;;) {
    Vertex pick = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (done[v] || !best_[v]) continue;
      if (pick < 0 || label_less(*best_[v], *best_[pick])) pick = v;
    }
    if (pick < 0) break;
    done[pick] = true;
    if (pick != root && flag(options.no_transit, pick)) continue;
    const Path& base = *best_[pick];
    for (const Arc& arc : net.out(pick)) {
      if (options.edge_enabled != nullptr && !(*options.edge_enabled)[arc.edge]) continue;
      if (flag(options.vertex_blocked, arc.to) || done[arc.to]) continue;
      Path cand = base;
      cand.vertices.push_back(arc.to);
      cand.edges.push_back(arc.edge);
      cand.cost += weight[arc.edge];
      if (!best_[arc.to] || label_less(cand, *best_[arc.to])) best_[arc.to] = std::move(cand);
    }
  }
}

std::optional<Path> shortest_path(const Network& net, Vertex from, Vertex to,
                                  std::span<const Rational> weight,
                                  const SearchOptions& options) {
  return ShortestPathTree(net, from, weight, options).path_to(to);
}

std::vector<Rational> edge_costs(const Network& net) {
  std::vector<Rational> w;
  w.reserve(net.num_edges());
  for (const Edge& e : net.edges()) w.push_back(e.cost);
  return w;
}

std::optional<Path> order_path(const Network& net, Vertex from, Vertex to,
                               std::span<const EdgeId> edges) {
  Path path;
  path.vertices.push_back(from);
  if (edges.empty()) {
    if (from != to) return std::nullopt;
    return path;
  }
  std::vector<bool> used(edges.size(), false);
  std::vector<bool> visited(net.num_vertices(), false);
  visited[from] = true;
  Vertex cur = from;
  for (std::size_t step = 0; step < edges.size(); ++step) {
    std::size_t found = edges.size();
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (used[k]) continue;
      EdgeId e = edges[k];
      if (e < 0 || e >= net.num_edges()) return std::nullopt;
      const Edge& ed = net.edge(e);
      bool leaves = ed.u == cur || (!net.directed() && ed.v == cur);
      if (leaves) {
        if (found != edges.size()) return std::nullopt;  // branching
        found = k;
      }
    }
    if (found == edges.size()) return std::nullopt;
    used[found] = true;
    EdgeId e = edges[found];
    Vertex next = net.other(e, cur);
    if (visited[next]) return std::nullopt;
    visited[next] = true;
    path.edges.push_back(e);
    path.vertices.push_back(next);
    path.cost += net.edge(e).cost;
    cur = next;
    if (cur == to) break;
  }
  if (cur != to || path.edges.size() != edges.size()) return std::nullopt;
  return path;
}

std::vector<bool> reachable_from(const Network& net, Vertex from,
                                 const std::vector<bool>* edge_enabled) {
  std::vector<bool> seen(net.num_vertices(), false);
  std::vector<Vertex> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Arc& arc : net.out(v)) {
      if (edge_enabled != nullptr && !(*edge_enabled)[arc.edge]) continue;
      if (!seen[arc.to]) {
        seen[arc.to] = true;
        stack.push_back(arc.to);
      }
    }
  }
  return seen;
}

Path loop_erase(const Path& walk) {
  Path out;
  if (walk.vertices.empty()) return out;
  out.vertices.push_back(walk.vertices.front());
  for (std::size_t k = 0; k < walk.edges.size(); ++k) {
    Vertex next = walk.vertices[k + 1];
    auto hit = std::find(out.vertices.begin(), out.vertices.end(), next);
    if (hit != out.vertices.end()) {
      std::size_t keep = static_cast<std::size_t>(hit - out.vertices.begin());
      out.vertices.resize(keep + 1);
      out.edges.resize(keep);
      continue;
    }
    out.vertices.push_back(next);
    out.edges.push_back(walk.edges[k]);
  }
  return out;
}

}  // namespace sepcs
