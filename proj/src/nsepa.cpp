#include "sepcs/nsepa.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <string>

#include "sepcs/errors.hpp"

namespace sepcs {

namespace {

struct Blocks {
  std::vector<std::vector<EdgeId>> edges;  // per block
  std::vector<bool> cut;                   // per vertex
};

// Biconnected components (Hopcroft-Tarjan) of an undirected multigraph.
Blocks biconnected(const Network& net) {
  const int n = net.num_vertices();
  Blocks out;
  out.cut.assign(n, false);
  std::vector<int> disc(n, -1);
  std::vector<int> low(n, 0);
  std::vector<EdgeId> stack;
  int timer = 0;
  std::function<void(Vertex, EdgeId)> dfs = [&](Vertex v, EdgeId via) {
    disc[v] = low[v] = timer++;
    int children = 0;
    for (const Arc& arc : net.out(v)) {
      if (arc.edge == via) continue;
      Vertex w = arc.to;
      if (disc[w] < 0) {
        stack.push_back(arc.edge);
        ++children;
        dfs(w, arc.edge);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          if (via >= 0 || children > 1) out.cut[v] = true;
          std::vector<EdgeId> block;
          for (;;) {
            EdgeId e = stack.back();
            stack.pop_back();
            block.push_back(e);
            if (e == arc.edge) break;
          }
          std::sort(block.begin(), block.end());
          out.edges.push_back(std::move(block));
        }
      } else if (disc[w] < disc[v]) {
        stack.push_back(arc.edge);
        low[v] = std::min(low[v], disc[w]);
      }
    }
    if (via < 0 && children <= 1) out.cut[v] = false;
  };
  for (Vertex v = 0; v < n; ++v) {
    if (disc[v] < 0) dfs(v, -1);
  }
  return out;
}

std::vector<bool> reach_without(const Network& net, Vertex from, Vertex removed) {
  std::vector<bool> seen(net.num_vertices(), false);
  if (from == removed) return seen;
  std::deque<Vertex> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (const Arc& arc : net.out(v)) {
      if (arc.to == removed || seen[arc.to]) continue;
      seen[arc.to] = true;
      queue.push_back(arc.to);
    }
  }
  return seen;
}

// Series/parallel reduction down to a single s-t edge.
bool reduces_to_edge(std::vector<std::pair<Vertex, Vertex>> edges, Vertex s, Vertex t) {
  if (s == t) return edges.empty();
  for (;;) {
    for (auto& [a, b] : edges) {
      if (a > b) std::swap(a, b);
      if (a == b) return false;
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.size() == 1) {
      return edges[0] == std::make_pair(std::min(s, t), std::max(s, t));
    }
    std::map<Vertex, std::vector<int>> incident;
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
      incident[edges[k].first].push_back(k);
      incident[edges[k].second].push_back(k);
    }
    bool changed = false;
    for (const auto& [v, list] : incident) {
      if (v == s || v == t) continue;
      if (list.size() != 2) {
        if (list.size() < 2) return false;
        continue;
      }
      auto other = [&](int k) { return edges[k].first == v ? edges[k].second : edges[k].first; };
      Vertex a = other(list[0]);
      Vertex b = other(list[1]);
      edges[list[0]] = {a, b};
      edges.erase(edges.begin() + list[1]);
      changed = true;
      break;
    }
    if (!changed) return false;
  }
}

void require_undirected_fixed(const Game& game) {
  if (!game.graph) throw Unsupported("connection game needs a network");
  if (game.graph->directed()) throw Unsupported("n-series-parallel games are undirected");
  if (!game.all_fixed()) throw Unsupported("n-series-parallel games need fixed costs");
  for (const auto& s : game.spaces) {
    if (!std::holds_alternative<PathSpace>(s)) throw Unsupported("connection game needs path strategy spaces");
  }
}

Pairs pairs_of(const Game& game) {
  Pairs out;
  for (const auto& s : game.spaces) {
    const auto& ps = std::get<PathSpace>(s);
    out.push_back({ps.source, ps.terminal});
  }
  return out;
}

std::vector<Rational> tilde_weights(const Game& game, Player i) {
  std::vector<Rational> w;
  for (Resource e = 0; e < game.num_resources; ++e) w.push_back(game.cost[e].fixed_value() + game.d(i, e));
  return w;
}

ResourceSet sorted_edges(const Path& p) {
  ResourceSet s(p.edges.begin(), p.edges.end());
  std::sort(s.begin(), s.end());
  return s;
}

// Path with `alt` spliced in for the subpath between its endpoints.
Path splice(const Path& path, const Alternative& alt) {
  const auto& pv = path.vertices;
  auto a = std::find(pv.begin(), pv.end(), alt.path.vertices.front()) - pv.begin();
  auto b = std::find(pv.begin(), pv.end(), alt.path.vertices.back()) - pv.begin();
  Path out;
  out.vertices.assign(pv.begin(), pv.begin() + a);
  out.edges.assign(path.edges.begin(), path.edges.begin() + a);
  out.vertices.insert(out.vertices.end(), alt.path.vertices.begin(), alt.path.vertices.end());
  out.edges.insert(out.edges.end(), alt.path.edges.begin(), alt.path.edges.end());
  out.vertices.insert(out.vertices.end(), pv.begin() + b + 1, pv.end());
  out.edges.insert(out.edges.end(), path.edges.begin() + b, path.edges.end());
  return out;
}

}  // namespace

std::vector<bool> player_subgraph(const Network& net, Vertex s, Vertex t) {
  std::vector<bool> mask(net.num_edges(), false);
  if (s == t) return mask;
  Blocks blocks = biconnected(net);
  // Block-cut tree: blocks are nodes 0..B-1, vertex v is node B+v.
  const int nb = static_cast<int>(blocks.edges.size());
  std::vector<std::vector<int>> adj(nb + net.num_vertices());
  for (int b = 0; b < nb; ++b) {
    std::set<Vertex> vs;
    for (EdgeId e : blocks.edges[b]) {
      vs.insert(net.edge(e).u);
      vs.insert(net.edge(e).v);
    }
    for (Vertex v : vs) {
      adj[b].push_back(nb + v);
      adj[nb + v].push_back(b);
    }
  }
  std::vector<int> prev(adj.size(), -2);
  std::deque<int> queue{nb + s};
  prev[nb + s] = -1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int y : adj[x]) {
      if (prev[y] != -2) continue;
      prev[y] = x;
      queue.push_back(y);
    }
  }
  if (prev[nb + t] == -2) return mask;
  for (int x = nb + t; x >= 0; x = prev[x]) {
    if (x < nb) {
      for (EdgeId e : blocks.edges[x]) mask[e] = true;
    }
  }
  return mask;
}

IrredundantGraph irredundant(const Network& net, const Pairs& pairs) {
  if (net.directed()) throw Unsupported("irredundant pruning expects an undirected graph");
  const int n = net.num_vertices();
  Blocks blocks = biconnected(net);
  std::vector<bool> keep_edge(net.num_edges(), false);
  IrredundantGraph out;
  out.vertex_kept.assign(n, false);
  for (auto [s, t] : pairs) {
    out.vertex_kept[s] = out.vertex_kept[t] = true;
    if (s == t) continue;
    auto keep = reach_without(net, s, -1);
    if (!keep[t]) continue;
    for (Vertex c = 0; c < n; ++c) {
      if (!blocks.cut[c]) continue;
      auto from_s = reach_without(net, s, c);
      auto from_t = reach_without(net, t, c);
      for (Vertex v = 0; v < n; ++v) {
        if (v != c && !from_s[v] && !from_t[v]) keep[v] = false;
      }
    }
    for (Vertex v = 0; v < n; ++v) out.vertex_kept[v] = out.vertex_kept[v] || keep[v];
    for (EdgeId e = 0; e < net.num_edges(); ++e) {
      if (keep[net.edge(e).u] && keep[net.edge(e).v]) keep_edge[e] = true;
    }
  }
  out.network = Network(n, false);
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    if (!keep_edge[e]) continue;
    out.network.add_edge(net.edge(e).u, net.edge(e).v, net.edge(e).cost);
    out.original_edge.push_back(e);
  }
  return out;
}

bool is_n_series_parallel(const Network& net, const Pairs& pairs) {
  if (net.directed()) return false;
  for (auto [s, t] : pairs) {
    if (s == t) continue;
    auto mask = player_subgraph(net, s, t);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (EdgeId e = 0; e < net.num_edges(); ++e) {
      if (mask[e]) edges.push_back({net.edge(e).u, net.edge(e).v});
    }
    if (edges.empty() || !reduces_to_edge(std::move(edges), s, t)) return false;
  }
  return true;
}

std::vector<Alternative> alternatives(const Game& game, Player i, const Path& path) {
  require_undirected_fixed(game);
  const Network& net = *game.graph;
  const auto& ps = std::get<PathSpace>(game.spaces[i]);
  if (!is_n_series_parallel(net, {{ps.source, ps.terminal}})) {
    throw NotSeriesParallel("subgraph of player " + std::to_string(i) + " is not series-parallel");
  }
  std::vector<Alternative> out;
  if (path.edges.empty()) return out;
  const int nv = net.num_vertices();
  auto weight = tilde_weights(game, i);
  std::vector<bool> edge_on(net.num_edges(), false);
  auto gi = player_subgraph(net, ps.source, ps.terminal);
  for (EdgeId e = 0; e < net.num_edges(); ++e) edge_on[e] = gi[e];
  for (EdgeId e : path.edges) edge_on[e] = false;
  std::vector<int> index(nv, -1);
  for (int k = 0; k < static_cast<int>(path.vertices.size()); ++k) index[path.vertices[k]] = k;
  std::vector<bool> on_path(nv, false);
  for (Vertex v : path.vertices) on_path[v] = true;
  std::vector<bool> vertex_gone(nv, false);
  std::vector<bool> marked(nv, false);

  // Non-path vertices and edges reachable from u without passing the path.
  auto explore = [&](Vertex u, std::vector<Vertex>& verts, std::vector<EdgeId>& edges,
                     std::optional<Vertex>& found) {
    std::vector<bool> seen(nv, false);
    std::deque<Vertex> queue{u};
    seen[u] = true;
    std::set<EdgeId> touched;
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      for (const Arc& arc : net.out(x)) {
        if (!edge_on[arc.edge] || vertex_gone[arc.to]) continue;
        touched.insert(arc.edge);
        Vertex y = arc.to;
        if (on_path[y]) {
          if (y != u && !marked[y] && !found) found = y;
          continue;
        }
        if (seen[y]) continue;
        seen[y] = true;
        verts.push_back(y);
        queue.push_back(y);
      }
      if (found) return;
    }
    edges.assign(touched.begin(), touched.end());
  };

  for (Vertex u : path.vertices) {
    while (!vertex_gone[u]) {
      std::vector<Vertex> verts;
      std::vector<EdgeId> edges;
      std::optional<Vertex> found;
      explore(u, verts, edges, found);
      if (found) {
        Vertex v = *found;
        SearchOptions opt;
        opt.edge_enabled = &edge_on;
        opt.no_transit = &on_path;
        opt.vertex_blocked = &vertex_gone;
        auto sp = shortest_path(net, u, v, weight, opt);
        if (!sp) throw InternalInvariant("detour endpoint found but no path");
        Alternative alt;
        alt.owner = i;
        alt.weight = sp->cost;
        alt.path = *sp;
        int a = index[u];
        int b = index[v];
        if (a > b) throw InternalInvariant("detour leads backward along the path");
        alt.substituted.assign(path.edges.begin() + a, path.edges.begin() + b);
        for (EdgeId e : sp->edges) edge_on[e] = false;
        for (std::size_t k = 1; k + 1 < sp->vertices.size(); ++k) vertex_gone[sp->vertices[k]] = true;
        marked[v] = true;
        out.push_back(std::move(alt));
      } else {
        for (Vertex x : verts) vertex_gone[x] = true;
        for (EdgeId e : edges) edge_on[e] = false;
        vertex_gone[u] = true;
        std::fill(marked.begin(), marked.end(), false);
      }
    }
  }
  return out;
}

DeviationLp build_lp(const Game& game, const Profile& profile, LpMode mode, const EnumerationBudget& budget) {
  require_undirected_fixed(game);
  check_profile(game, profile);
  if (mode == LpMode::kFullPaths) return full_deviation_lp(game, profile, budget);
  if (!is_n_series_parallel(*game.graph, pairs_of(game))) {
    throw NotSeriesParallel("graph is not n-series-parallel");
  }
  auto users = occupancy(game, profile);
  DeviationLp out;
  std::map<std::pair<Player, Resource>, int> var;
  for (Player i = 0; i < game.num_players; ++i) {
    for (Resource e : profile.choice[i]) {
      var[{i, e}] = static_cast<int>(out.variables.size());
      out.variables.push_back({i, e});
    }
  }
  const int nv = static_cast<int>(out.variables.size());
  out.lp = LinearProgram(nv);
  for (int k = 0; k < nv; ++k) out.lp.objective[k] = Rational(1);
  out.target = Rational(0);
  for (Resource e = 0; e < game.num_resources; ++e) {
    if (users[e].empty()) continue;
    Rational c = game.cost_of(e, users[e]);
    out.target += c;
    std::vector<Rational> row(nv, Rational(0));
    for (Player i : users[e].members()) row[var[{i, e}]] = Rational(1);
    out.lp.add_row(std::move(row), c);
  }
  for (Player i = 0; i < game.num_players; ++i) {
    Path p = player_path(game, profile, i);
    for (const Alternative& alt : alternatives(game, i, p)) {
      std::vector<Rational> row(nv, Rational(0));
      Rational rhs = alt.weight;
      for (EdgeId e : alt.substituted) {
        row[var[{i, e}]] = Rational(1);
        rhs -= game.d(i, e);
      }
      out.lp.add_row(std::move(row), rhs);
    }
  }
  return out;
}

EnforceabilityReport is_enforceable(const Game& game, const Profile& profile, LpMode mode,
                                    const EnumerationBudget& budget) {
  auto dev = build_lp(game, profile, mode, budget);
  auto sol = solve(dev.lp);
  EnforceabilityReport r;
  r.status = sol.status;
  r.target = dev.target;
  if (sol.status != LpStatus::kOptimal) return r;
  r.lp_value = sol.objective;
  r.enforceable = sol.objective == dev.target;
  if (r.enforceable) {
    SharingTable table(profile);
    for (std::size_t k = 0; k < dev.variables.size(); ++k) {
      table.set(dev.variables[k].first, dev.variables[k].second, sol.values[k]);
    }
    table.finalize(game);
    r.shares = std::move(table);
  }
  return r;
}

Alternative smallest_tight_alternative(const Game& game, Player i, const Path& path,
                                       const std::map<EdgeId, Rational>& share, EdgeId f) {
  require_undirected_fixed(game);
  const Network& net = *game.graph;
  const auto& ps = std::get<PathSpace>(game.spaces[i]);
  auto pos = std::find(path.edges.begin(), path.edges.end(), f);
  if (pos == path.edges.end()) throw InputError("edge " + std::to_string(f) + " is not on the path");
  const int j = static_cast<int>(pos - path.edges.begin());
  const int k = static_cast<int>(path.edges.size());
  auto weight = tilde_weights(game, i);
  auto enabled = player_subgraph(net, ps.source, ps.terminal);
  for (EdgeId e : path.edges) enabled[e] = false;
  std::vector<bool> on_path(net.num_vertices(), false);
  for (Vertex v : path.vertices) on_path[v] = true;
  std::vector<Rational> paid(k + 1, Rational(0));  // prefix sums of share + delay
  for (int l = 0; l < k; ++l) {
    auto it = share.find(path.edges[l]);
    Rational s = it == share.end() ? Rational(0) : it->second;
    paid[l + 1] = paid[l] + s + game.d(i, path.edges[l]);
  }
  SearchOptions opt;
  opt.edge_enabled = &enabled;
  opt.no_transit = &on_path;
  std::optional<Alternative> best;
  for (int a = 0; a <= j; ++a) {
    ShortestPathTree spt(net, path.vertices[a], weight, opt);
    for (int b = j + 1; b <= k; ++b) {
      Vertex v = path.vertices[b];
      if (!spt.reached(v)) continue;
      Rational side = paid[b] - paid[a];
      const Rational& w = spt.distance(v);
      if (w < side) {
        throw InternalInvariant("player " + std::to_string(i) + " strictly prefers an alternative");
      }
      if (w != side) continue;
      Alternative alt;
      alt.owner = i;
      alt.path = *spt.path_to(v);
      alt.weight = w;
      alt.substituted.assign(path.edges.begin() + a, path.edges.begin() + b);
      if (!best || alt.substituted.size() < best->substituted.size() ||
          (alt.substituted.size() == best->substituted.size() && alt.path.edges < best->path.edges)) {
        best = std::move(alt);
      }
    }
  }
  if (!best) {
    throw NoTightAlternative("player " + std::to_string(i) + " has no tight alternative for edge " +
                             std::to_string(f));
  }
  return *best;
}

NsepaResult nsepa_transform(const Game& game, const Profile& input, Trace* trace) {
  require_undirected_fixed(game);
  check_profile(game, input);
  if (!is_n_series_parallel(*game.graph, pairs_of(game))) throw NotSeriesParallel("graph is not n-series-parallel");
  const int n = game.num_players;
  NsepaResult out;
  Profile profile = input;

  // LP(P) is infeasible iff some player prefers a path even at zero shares;
  // such a player first moves to that best response (strictly cheaper).
  for (;;) {
    auto dev = build_lp(game, profile, LpMode::kAlternatives);
    Player bad = -1;
    for (std::size_t r = 0; r < dev.lp.rows.size() && bad < 0; ++r) {
      if (dev.lp.rows[r].rhs.sign() < 0) {
        for (std::size_t k = 0; k < dev.variables.size(); ++k) {
          if (!dev.lp.rows[r].coef[k].is_zero()) {
            bad = dev.variables[k].first;
            break;
          }
        }
      }
    }
    if (bad < 0) break;
    const auto& ps = std::get<PathSpace>(game.spaces[bad]);
    auto w = tilde_weights(game, bad);
    for (Resource e : profile.choice[bad]) w[e] = game.d(bad, e);
    Rational before = total_cost(game, profile);
    auto sp = shortest_path(*game.graph, ps.source, ps.terminal, w);
    profile.choice[bad] = sorted_edges(*sp);
    if (!(total_cost(game, profile) < before)) throw InternalInvariant("repair move did not lower the cost");
    ++out.stats.repairs;
    if (trace != nullptr) trace->push_back({"repair", bad, -1, -1, total_cost(game, profile) - before, ""});
  }

  auto dev = build_lp(game, profile, LpMode::kAlternatives);
  auto sol = solve(dev.lp);
  if (sol.status != LpStatus::kOptimal) throw InternalInvariant("LP(P) is not solvable after repair");
  out.stats.lp_value = sol.objective;
  std::vector<std::map<EdgeId, Rational>> share(n);
  for (std::size_t k = 0; k < dev.variables.size(); ++k) {
    share[dev.variables[k].first][dev.variables[k].second] = sol.values[k];
  }
  std::vector<Path> path(n);
  for (Player i = 0; i < n; ++i) path[i] = player_path(game, profile, i);

  auto unpaid = [&]() {
    std::map<EdgeId, Rational> paid;
    for (Player i = 0; i < n; ++i) {
      for (EdgeId e : path[i].edges) paid[e] += share[i][e];
    }
    std::set<EdgeId> s;
    for (const auto& [e, v] : paid) {
      if (v < game.cost[e].fixed_value()) s.insert(e);
    }
    return s;
  };
  auto private_cost = [&](Player i) {
    Rational c(0);
    for (EdgeId e : path[i].edges) c += share[i][e] + game.d(i, e);
    return c;
  };

  std::set<EdgeId> all_used;
  for (const auto& s : profile.choice) all_used.insert(s.begin(), s.end());
  const int bound = static_cast<int>(all_used.size());
  std::vector<std::set<EdgeId>> dropped(n);
  std::set<EdgeId> open = unpaid();
  out.stats.input_enforceable = open.empty() && out.stats.repairs == 0;
  while (!open.empty()) {
    if (++out.stats.phases > bound) throw InternalInvariant("more phases than used edges");
    for (Player i = 0; i < n; ++i) {
      const Rational before = private_cost(i);
      // Edges adopted during this phase are paid in full by i.
      const std::set<EdgeId> held(path[i].edges.begin(), path[i].edges.end());
      for (;;) {
        auto it = std::find_if(path[i].edges.begin(), path[i].edges.end(),
                               [&](EdgeId e) { return open.count(e) != 0 && held.count(e) != 0; });
        if (it == path[i].edges.end()) break;
        EdgeId f = *it;
        Alternative alt = smallest_tight_alternative(game, i, path[i], share[i], f);
        for (EdgeId e : alt.path.edges) {
          if (dropped[i].count(e) != 0) {
            throw InternalInvariant("player " + std::to_string(i) + " re-adopts edge " + std::to_string(e));
          }
        }
        for (EdgeId e : alt.substituted) {
          dropped[i].insert(e);
          share[i].erase(e);
        }
        for (EdgeId e : alt.path.edges) {
          share[i][e] = game.cost[e].fixed_value();
        }
        path[i] = splice(path[i], alt);
        ++out.stats.substitutions;
        if (trace != nullptr) {
          trace->push_back({"substitute", i, f, static_cast<int>(alt.substituted.size()), Rational(0),
                            "alternative weight " + alt.weight.str()});
        }
      }
      if (private_cost(i) != before) throw InternalInvariant("substitution changed a private cost");
    }
    open = unpaid();
  }

  // Trim overpaid edges, highest player index first.
  std::map<EdgeId, Rational> paid;
  for (Player i = 0; i < n; ++i) {
    for (EdgeId e : path[i].edges) paid[e] += share[i][e];
  }
  for (auto& [e, v] : paid) {
    Rational excess = v - game.cost[e].fixed_value();
    for (Player i = n - 1; i >= 0 && excess.sign() > 0; --i) {
      if (std::find(path[i].edges.begin(), path[i].edges.end(), e) == path[i].edges.end()) continue;
      Rational cut = min(share[i][e], excess);
      share[i][e] -= cut;
      excess -= cut;
    }
  }

  for (Player i = 0; i < n; ++i) out.profile.choice.push_back(sorted_edges(path[i]));
  SharingTable table(out.profile);
  for (Player i = 0; i < n; ++i) {
    for (const auto& [e, v] : share[i]) {
      if (!v.is_zero()) table.set(i, e, v);
    }
  }
  table.finalize(game);
  out.protocol = SeparableProtocol(game, std::move(table));
  if (!verify_pne(game, out.protocol).ok) throw InternalInvariant("n-SePa output is not an equilibrium");
  Rational in_cost = total_cost(game, input);
  Rational out_cost = total_cost(game, out.profile);
  if (out_cost > in_cost || (!out.stats.input_enforceable && !(out_cost < in_cost))) {
    throw InternalInvariant("n-SePa did not lower the cost of a non-enforceable profile");
  }
  return out;
}

std::pair<Game, Profile> counterexample_fixture() {
  enum : Vertex { s1 = 0, t1 = 1, s2 = 2, t2 = 3, s3 = 4, t3 = 5, a = 6 };
  Network net(7, false);
  const std::vector<std::tuple<Vertex, Vertex, int>> edges = {
      {s1, s2, 84}, {s1, t1, 100}, {t3, s3, 69}, {t2, t3, 86}, {s1, s3, 60},
      {s1, t3, 57}, {a, s2, 71},   {a, t1, 38},  {a, t3, 38},  {t2, s3, 82}};
  for (auto [u, v, c] : edges) net.add_edge(u, v, Rational(c));
  Game g = make_path_game(std::move(net), {{s1, t1}, {s2, t2}, {s3, t3}});
  Profile opt;
  opt.choice = {{5, 7, 8}, {4, 5, 6, 8, 9}, {4, 5}};
  return {std::move(g), std::move(opt)};
}

}  // namespace sepcs
