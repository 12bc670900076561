#include "sepcs/connect_fixed.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "sepcs/errors.hpp"

namespace sepcs {

namespace {

std::vector<Rational> fixed_weights(const Game& game) {
  std::vector<Rational> w;
  w.reserve(game.num_resources);
  for (const auto& c : game.cost) w.push_back(c.fixed_value());
  return w;
}

// Paths of a shortest-path tree restricted to `enabled`, built from parent
// pointers so that all player paths agree on a single tree.
Profile tree_paths(const Game& game, Vertex source, const std::vector<bool>& enabled) {
  const Network& net = *game.graph;
  auto weight = fixed_weights(game);
  SearchOptions opt;
  opt.edge_enabled = &enabled;
  ShortestPathTree spt(net, source, weight, opt);
  std::vector<EdgeId> parent_edge(net.num_vertices(), -1);
  std::vector<Vertex> parent(net.num_vertices(), -1);
  for (Vertex v = 0; v < net.num_vertices(); ++v) {
    if (v == source || !spt.reached(v)) continue;
    auto p = spt.path_to(v);
    parent_edge[v] = p->edges.back();
    parent[v] = p->vertices[p->vertices.size() - 2];
  }
  Profile out;
  for (Player i = 0; i < game.num_players; ++i) {
    Vertex t = std::get<PathSpace>(game.spaces[i]).terminal;
    ResourceSet s;
    if (t != source && !spt.reached(t)) {
      throw Disconnected("terminal " + std::to_string(t) + " of player " + std::to_string(i) +
                         " is not reachable from the source");
    }
    int guard = 0;
    for (Vertex v = t; v != source; v = parent[v]) {
      if (++guard > net.num_vertices()) throw InternalInvariant("parent pointers form a cycle");
      s.push_back(parent_edge[v]);
    }
    std::sort(s.begin(), s.end());
    out.choice.push_back(std::move(s));
  }
  return out;
}

// Dense Dijkstra on the per-player auxiliary graph (a handful of vertices).
std::optional<Rational> dense_distance(const std::vector<std::vector<std::optional<Rational>>>& w, int from,
                                       int to) {
  const int n = static_cast<int>(w.size());
  std::vector<std::optional<Rational>> dist(n);
  std::vector<bool> done(n, false);
  dist[from] = Rational(0);
  for (;;) {
    int pick = -1;
    for (int x = 0; x < n; ++x) {
      if (!done[x] && dist[x] && (pick < 0 || *dist[x] < *dist[pick])) pick = x;
    }
    if (pick < 0) break;
    done[pick] = true;
    for (int y = 0; y < n; ++y) {
      if (!w[pick][y]) continue;
      Rational cand = *dist[pick] + *w[pick][y];
      if (!dist[y] || cand < *dist[y]) dist[y] = cand;
    }
  }
  return dist[to];
}

const Network& checked_network(const Game& game) {
  common_source(game);
  return *game.graph;
}

void relax(std::optional<Rational>& slot, const Rational& v) {
  if (!slot || v < *slot) slot = v;
}

}  // namespace

Vertex common_source(const Game& game) {
  if (!game.graph) throw Unsupported("connection game needs a network");
  if (!game.all_fixed()) throw Unsupported("connection game needs fixed costs");
  if (!game.zero_delays()) throw Unsupported("connection game with delays: use the nsepa module");
  Vertex source = 0;
  for (Player i = 0; i < game.num_players; ++i) {
    const auto* ps = std::get_if<PathSpace>(&game.spaces[i]);
    if (ps == nullptr) throw Unsupported("connection game needs path strategy spaces");
    if (i == 0) source = ps->source;
    if (ps->source != source) throw Unsupported("players do not share a common source");
  }
  return source;
}

Profile to_tree_profile(const Game& game, const Profile& profile) {
  Vertex source = common_source(game);
  check_profile(game, profile);
  std::vector<bool> enabled(game.num_resources, false);
  for (const auto& s : profile.choice) {
    for (Resource r : s) enabled[r] = true;
  }
  return tree_paths(game, source, enabled);
}

AuxiliaryGraph::AuxiliaryGraph(const Game& game, const Profile& tree_profile)
    : game_(game), net_(checked_network(game)) {
  source_ = common_source(game);
  check_profile(game, tree_profile);
  const int nv = net_.num_vertices();
  up_.assign(nv, std::nullopt);
  bfs_.assign(nv, -1);
  state_.assign(game.num_resources, kNone);
  weight_ = fixed_weights(game);
  for (Player i = 0; i < game.num_players; ++i) {
    terminal_.push_back(std::get<PathSpace>(game.spaces[i]).terminal);
    Path p = sepcs::player_path(game, tree_profile, i);
    for (std::size_t k = 0; k < p.edges.size(); ++k) {
      Vertex a = p.vertices[k];
      Vertex b = p.vertices[k + 1];
      Link link{false, p.edges[k], a};
      if (b == source_) throw InputError("tree profile passes through the source");
      if (up_[b] && (up_[b]->id != link.id || up_[b]->parent != a)) {
        throw InputError("profile is not a tree profile at vertex " + std::to_string(b));
      }
      up_[b] = link;
      state_[p.edges[k]] = kOpen;
    }
  }
  // BFS numbering from the source, children in vertex order.
  std::vector<std::vector<Vertex>> children(nv);
  for (Vertex v = 0; v < nv; ++v) {
    if (up_[v]) children[up_[v]->parent].push_back(v);
  }
  std::deque<Vertex> queue{source_};
  int next = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    bfs_[v] = next++;
    for (Vertex c : children[v]) queue.push_back(c);
  }
}

AuxiliaryGraph::PlayerPath AuxiliaryGraph::player_path(Player i) const {
  PlayerPath pp;
  Vertex v = terminal_[i];
  pp.vertices.push_back(v);
  int guard = 0;
  while (v != source_) {
    if (!up_[v]) throw InternalInvariant("player " + std::to_string(i) + " is cut off from the source");
    if (++guard > net_.num_vertices()) throw InternalInvariant("tree links form a cycle");
    pp.links.push_back(*up_[v]);
    v = up_[v]->parent;
    pp.vertices.push_back(v);
  }
  std::reverse(pp.vertices.begin(), pp.vertices.end());
  std::reverse(pp.links.begin(), pp.links.end());
  return pp;
}

Rational AuxiliaryGraph::share(EdgeId e, Player i) const {
  auto it = share_.find({e, i});
  return it == share_.end() ? Rational(0) : it->second;
}

Rational AuxiliaryGraph::link_cost(Player i, const Link& link, EdgeId restored) const {
  if (link.aux) return aux_[link.id].payer == i ? aux_[link.id].path.cost : Rational(0);
  if (link.id == restored) return weight_[link.id];
  if (state_[link.id] == kOpen) return Rational(0);
  return share(link.id, i);
}

const ShortestPathTree& AuxiliaryGraph::distances_from(Vertex u) const {
  auto it = dist_cache_.find(u);
  if (it == dist_cache_.end()) it = dist_cache_.emplace(u, ShortestPathTree(net_, u, weight_)).first;
  return it->second;
}

std::vector<EdgeId> AuxiliaryGraph::open_edges_bottom_up() const {
  std::vector<std::pair<int, EdgeId>> order;
  for (Vertex v = 0; v < net_.num_vertices(); ++v) {
    if (up_[v] && !up_[v]->aux && state_[up_[v]->id] == kOpen) order.push_back({bfs_[v], up_[v]->id});
  }
  std::sort(order.rbegin(), order.rend());
  std::vector<EdgeId> out;
  for (auto [n, e] : order) out.push_back(e);
  return out;
}

PlayerSet AuxiliaryGraph::users(EdgeId e) const {
  PlayerSet out;
  for (Player i = 0; i < game_.num_players; ++i) {
    for (Vertex v = terminal_[i]; v != source_ && up_[v]; v = up_[v]->parent) {
      if (!up_[v]->aux && up_[v]->id == e) {
        out = out.with(i);
        break;
      }
    }
  }
  return out;
}

Contribution AuxiliaryGraph::max_contribution(Player i, EdgeId e) const {
  PlayerPath pp = player_path(i);
  const auto& p = pp.vertices;
  const int k = static_cast<int>(pp.links.size());
  int j = -1;
  for (int l = 0; l < k; ++l) {
    if (!pp.links[l].aux && pp.links[l].id == e) j = l;
  }
  if (j < 0) throw InputError("player " + std::to_string(i) + " does not use edge " + std::to_string(e));

  std::vector<Rational> lc(k);
  for (int l = 0; l < k; ++l) lc[l] = link_cost(i, pp.links[l], e);
  std::vector<Rational> above(k + 1, Rational(0));  // cost of links before vertex a
  for (int l = 0; l < k; ++l) above[l + 1] = above[l] + lc[l];
  const Rational stay = above[k];
  const Rational stay0 = stay - weight_[e];

  // Canonical deviation: follow the path to p[a] above e, take a shortest
  // G-path to p[b] below e, follow the path down to the terminal.
  bool have = false;
  Rational best_total;
  int best_a = -1;
  int best_b = -1;
  std::vector<Vertex> best_seq;
  for (int a = 0; a <= j; ++a) {
    const auto& spt = distances_from(p[a]);
    for (int b = j + 1; b <= k; ++b) {
      if (!spt.reached(p[b])) continue;
      Rational total = above[a] + spt.distance(p[b]) + (stay - above[b]);
      std::vector<Vertex> seq(p.begin(), p.begin() + a + 1);
      seq.insert(seq.end(), p.begin() + b, p.end());
      if (!have || total < best_total || (total == best_total && seq < best_seq)) {
        have = true;
        best_total = total;
        best_a = a;
        best_b = b;
        best_seq = std::move(seq);
      }
    }
  }

  // Cross-check against every path of the auxiliary graph seen by player i:
  // own links (both ways when undirected) plus shortest G-paths between any
  // two of its path vertices.
  auto aux_distance = [&](bool restored) {
    std::vector<std::vector<std::optional<Rational>>> w(k + 1, std::vector<std::optional<Rational>>(k + 1));
    for (int l = 0; l < k; ++l) {
      Rational c = (l == j && !restored) ? Rational(0) : lc[l];
      relax(w[l][l + 1], c);
      if (!net_.directed()) relax(w[l + 1][l], c);
    }
    for (int x = 0; x <= k; ++x) {
      const auto& spt = distances_from(p[x]);
      for (int y = 0; y <= k; ++y) {
        if (x != y && spt.reached(p[y])) relax(w[x][y], spt.distance(p[y]));
      }
    }
    return dense_distance(w, 0, k);
  };
  auto free_best = aux_distance(false);
  if (!free_best || *free_best != stay0) {
    throw InternalInvariant("player " + std::to_string(i) + " is not at a best response in the auxiliary graph");
  }
  Rational canonical = (have && best_total < stay) ? best_total : stay;
  auto full_best = aux_distance(true);
  if (!full_best || *full_best < canonical) {
    throw InternalInvariant("best response of player " + std::to_string(i) + " avoiding edge " +
                            std::to_string(e) + " is not of canonical form");
  }

  Contribution out;
  if (!have || best_total >= stay) {
    out.delta = weight_[e];
    return out;
  }
  auto chord = distances_from(p[best_a]).path_to(p[best_b]);
  if (std::find(chord->edges.begin(), chord->edges.end(), e) != chord->edges.end()) {
    throw InternalInvariant("deviation of player " + std::to_string(i) + " uses the edge it avoids");
  }
  out.delta = best_total - stay0;
  if (out.delta.sign() < 0) throw InternalInvariant("negative maximum contribution");
  out.deviation_vertex = p[best_b];
  out.upper_vertex = p[best_a];
  return out;
}

// Drops links that lead to no terminal; rejoining above e can leave such
// branches between the rejoin vertex and e.
void AuxiliaryGraph::prune() {
  const int nv = net_.num_vertices();
  std::vector<bool> needed(nv, false);
  for (Player i = 0; i < game_.num_players; ++i) {
    for (Vertex v = terminal_[i]; !needed[v]; v = up_[v]->parent) {
      needed[v] = true;
      if (v == source_) break;
    }
  }
  for (Vertex v = 0; v < nv; ++v) {
    if (!up_[v] || needed[v]) continue;
    if (up_[v]->aux) {
      aux_alive_[up_[v]->id] = false;
    } else {
      state_[up_[v]->id] = kNone;
      for (Player i = 0; i < game_.num_players; ++i) share_.erase({up_[v]->id, i});
    }
    up_[v].reset();
  }
}

Rational AuxiliaryGraph::tree_cost() const {
  Rational total(0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(state_.size()); ++e) {
    if (state_[e] != kNone) total += weight_[e];
  }
  for (std::size_t a = 0; a < aux_.size(); ++a) {
    if (aux_alive_[a]) total += aux_[a].path.cost;
  }
  return total;
}

std::vector<AuxEdge> AuxiliaryGraph::aux_edges() const {
  std::vector<AuxEdge> out;
  for (std::size_t a = 0; a < aux_.size(); ++a) {
    if (aux_alive_[a]) out.push_back(aux_[a]);
  }
  return out;
}

bool AuxiliaryGraph::aux_single_payer() const {
  for (std::size_t a = 0; a < aux_.size(); ++a) {
    if (!aux_alive_[a]) continue;
    Player payer = aux_[a].payer;
    if (payer < 0 || payer >= game_.num_players) return false;
    bool uses = false;
    for (const Link& l : player_path(payer).links) uses = uses || (l.aux && l.id == static_cast<int>(a));
    if (!uses) return false;
  }
  return true;
}

bool AuxiliaryGraph::process(EdgeId e, Trace* trace) {
  if (e < 0 || e >= static_cast<EdgeId>(state_.size()) || state_[e] != kOpen) {
    throw InputError("edge " + std::to_string(e) + " is not an open tree edge");
  }
  PlayerSet ne = users(e);
  if (ne.empty()) throw InternalInvariant("open tree edge without users");
  std::vector<Contribution> contrib(game_.num_players);
  Rational sum(0);
  for (Player i : ne.members()) {
    contrib[i] = max_contribution(i, e);
    sum += contrib[i].delta;
  }

  if (sum >= weight_[e]) {
    Rational remaining = weight_[e];
    std::string note;
    for (Player i : ne.members()) {
      Rational give = min(contrib[i].delta, remaining);
      remaining -= give;
      if (!give.is_zero()) share_[{e, i}] = give;
      note += (note.empty() ? "" : " ") + std::to_string(i) + ":" + give.str();
    }
    state_[e] = kClosed;
    ++closes_;
    if (trace != nullptr) trace->push_back({"close", -1, e, -1, Rational(0), note});
    return true;
  }

  const Rational before = tree_cost();
  Vertex q = -1;
  for (Vertex v = 0; v < net_.num_vertices() && q < 0; ++v) {
    if (up_[v] && !up_[v]->aux && up_[v]->id == e) q = v;
  }
  std::set<Vertex> deviation;
  for (Player i : ne.members()) {
    if (!contrib[i].deviation_vertex) throw InternalInvariant("player stays although contributions fall short");
    deviation.insert(*contrib[i].deviation_vertex);
  }
  // Highest deviation vertex above every terminal below e.
  std::set<Vertex> chosen;
  for (Player i : ne.members()) {
    Vertex highest = -1;
    for (Vertex v = terminal_[i];; v = up_[v]->parent) {
      if (deviation.count(v) != 0) highest = v;
      if (v == q) break;
    }
    if (highest < 0) throw InternalInvariant("no deviation vertex above terminal");
    chosen.insert(highest);
  }
  struct Plan {
    Vertex lower;
    Vertex upper;
    Player payer;
  };
  std::vector<Plan> plans;
  for (Vertex v : chosen) {
    Player payer = -1;
    for (Player i : ne.members()) {
      if (*contrib[i].deviation_vertex == v) {
        payer = i;
        break;
      }
    }
    plans.push_back({v, *contrib[payer].upper_vertex, payer});
  }
  for (const Plan& plan : plans) {
    for (Vertex w = plan.lower; up_[w];) {
      Link l = *up_[w];
      up_[w].reset();
      if (l.aux) {
        aux_alive_[l.id] = false;
      } else {
        state_[l.id] = kNone;
        for (Player i = 0; i < game_.num_players; ++i) share_.erase({l.id, i});
      }
      if (w == q) break;
      w = l.parent;
    }
  }
  for (const Plan& plan : plans) {
    AuxEdge a;
    a.upper = plan.upper;
    a.lower = plan.lower;
    a.path = *distances_from(plan.upper).path_to(plan.lower);
    a.payer = plan.payer;
    up_[plan.lower] = Link{true, static_cast<int>(aux_.size()), plan.upper};
    aux_.push_back(std::move(a));
    aux_alive_.push_back(true);
  }
  for (Player i : ne.members()) player_path(i);  // every terminal still reaches the source
  prune();
  const Rational after = tree_cost();
  if (!(after < before)) throw InternalInvariant("tree replacement did not lower the tree cost");
  ++rehangs_;
  rehang_costs_.push_back({before, after});
  if (trace != nullptr) {
    for (const Plan& plan : plans) {
      trace->push_back({"replace", plan.payer, e, plan.lower, Rational(0), "upper " + std::to_string(plan.upper)});
    }
    trace->back().cost_delta = after - before;
  }
  return false;
}

std::pair<Profile, SharingTable> AuxiliaryGraph::expand_and_assign() const {
  const int n = game_.num_players;
  Profile profile;
  std::vector<PlayerPath> hat(n);
  for (Player i = 0; i < n; ++i) {
    hat[i] = player_path(i);
    Path walk;
    walk.vertices.push_back(source_);
    for (std::size_t l = 0; l < hat[i].links.size(); ++l) {
      const Link& link = hat[i].links[l];
      if (link.aux) {
        const Path& ap = aux_[link.id].path;
        walk.edges.insert(walk.edges.end(), ap.edges.begin(), ap.edges.end());
        walk.vertices.insert(walk.vertices.end(), ap.vertices.begin() + 1, ap.vertices.end());
      } else {
        walk.edges.push_back(link.id);
        walk.vertices.push_back(hat[i].vertices[l + 1]);
      }
    }
    Path simple = loop_erase(walk);
    ResourceSet s(simple.edges.begin(), simple.edges.end());
    std::sort(s.begin(), s.end());
    profile.choice.push_back(std::move(s));
  }
  SharingTable table(profile);
  std::vector<Rational> paid(game_.num_resources, Rational(0));
  for (Player i = 0; i < n; ++i) {
    for (const Link& link : hat[i].links) {
      if (link.aux || !contains(profile.choice[i], link.id)) continue;
      Rational v = share(link.id, i);
      if (v.is_zero()) continue;
      table.set(i, link.id, v);
      paid[link.id] += v;
    }
  }
  for (Player i = 0; i < n; ++i) {
    for (const Link& link : hat[i].links) {
      if (!link.aux || aux_[link.id].payer != i) continue;
      for (EdgeId x : aux_[link.id].path.edges) {
        if (!contains(profile.choice[i], x) || !paid[x].is_zero()) continue;
        table.set(i, x, weight_[x]);
        paid[x] = weight_[x];
      }
    }
  }
  return {profile, table};
}

SingleSourceResult transform_single_source(const Game& game, const Profile& profile, Trace* trace) {
  common_source(game);
  check_profile(game, profile);
  SingleSourceResult out;
  Profile current = to_tree_profile(game, profile);
  const int max_passes = 1 + game.num_resources * std::max(1, game.num_players) * 64;
  for (int pass = 1; pass <= max_passes; ++pass) {
    AuxiliaryGraph aux(game, current);
    const Rational start = aux.tree_cost();
    if (trace != nullptr) trace->push_back({"pass", -1, -1, pass, Rational(0), "tree cost " + start.str()});
    for (EdgeId e : aux.open_edges_bottom_up()) {
      if (aux.is_open(e)) aux.process(e, trace);
    }
    out.stats.passes = pass;
    out.stats.closes += aux.closes();
    out.stats.rehangs += aux.rehangs();
    for (const auto& rc : aux.rehang_costs()) out.stats.rehang_costs.push_back(rc);
    out.stats.aux_single_payer = out.stats.aux_single_payer && aux.aux_single_payer();
    out.stats.final_aux_edges = static_cast<int>(aux.aux_edges().size());

    auto [expanded, table] = aux.expand_and_assign();
    bool ok = false;
    try {
      table.finalize(game);
      SeparableProtocol protocol(game, table);
      ok = verify_budget_balance(game, protocol, expanded).ok && verify_pne(game, protocol).ok;
      if (ok) {
        out.profile = expanded;
        out.protocol = std::move(protocol);
      }
    } catch (const NotBudgetBalanced&) {
      ok = false;
    }
    if (ok) {
      if (total_cost(game, out.profile) > total_cost(game, profile)) {
        throw InternalInvariant("single-source transformation raised the cost");
      }
      return out;
    }
    if (aux.rehangs() == 0) throw InternalInvariant("pass without tree replacement is not an equilibrium");
    Profile next = to_tree_profile(game, expanded);
    if (!(total_cost(game, next) < start)) throw InternalInvariant("repeated pass does not start cheaper");
    if (trace != nullptr) {
      trace->push_back({"repeat", -1, -1, pass, total_cost(game, next) - start, "expanded profile not stable in G"});
    }
    current = std::move(next);
  }
  throw InternalInvariant("single-source transformation did not settle");
}

MultiSourceReduction reduce_multi_source(const Game& game) {
  if (!game.graph) throw Unsupported("multi-source reduction needs a network");
  if (!game.all_fixed()) throw Unsupported("multi-source reduction needs fixed costs");
  const Network& net = *game.graph;
  MultiSourceReduction r;
  Rational big_m(1);
  for (const auto& c : game.cost) big_m += c.fixed_value();
  for (const auto& row : game.delay) {
    for (const auto& d : row) big_m += d;
  }
  r.big_m = big_m;
  Network g(net.num_vertices() + 1, net.directed());
  for (const Edge& e : net.edges()) g.add_edge(e.u, e.v, e.cost);
  r.source = net.num_vertices();
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Player i = 0; i < game.num_players; ++i) {
    const auto* ps = std::get_if<PathSpace>(&game.spaces[i]);
    if (ps == nullptr) throw Unsupported("multi-source reduction needs path strategy spaces");
    r.link.push_back(g.add_edge(r.source, ps->source, Rational(0)));
    pairs.push_back({r.source, ps->terminal});
  }
  std::vector<std::vector<Rational>> delays(game.num_players);
  for (Player i = 0; i < game.num_players; ++i) {
    delays[i] = game.delay[i];
    for (Player j = 0; j < game.num_players; ++j) delays[i].push_back(i == j ? Rational(0) : big_m);
  }
  r.game = make_path_game(std::move(g), pairs, std::move(delays));
  for (Resource e = 0; e < game.num_resources; ++e) r.game.cost[e] = game.cost[e];
  return r;
}

Profile restrict_reduced_profile(const MultiSourceReduction& r, const Profile& profile) {
  Profile out;
  for (const auto& s : profile.choice) {
    ResourceSet kept;
    for (Resource e : s) {
      if (std::find(r.link.begin(), r.link.end(), e) == r.link.end()) kept.push_back(e);
    }
    out.choice.push_back(std::move(kept));
  }
  return out;
}

Game make_group_game(const Network& net, Vertex source, const std::vector<std::vector<Vertex>>& groups) {
  if (!net.directed()) throw Unsupported("group terminals need a directed network");
  const int n = static_cast<int>(groups.size());
  Network g(net.num_vertices() + n, true);
  for (const Edge& e : net.edges()) g.add_edge(e.u, e.v, e.cost);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (int i = 0; i < n; ++i) {
    Vertex t = net.num_vertices() + i;
    if (groups[i].empty()) throw InputError("empty terminal group for player " + std::to_string(i));
    for (Vertex v : groups[i]) {
      if (v < 0 || v >= net.num_vertices()) throw InputError("group vertex out of range");
      g.add_edge(v, t, Rational(0));
    }
    pairs.push_back({source, t});
  }
  return make_path_game(std::move(g), pairs);
}

Profile approx_steiner_tree(const Game& game) {
  Vertex source = common_source(game);
  const Network& net = *game.graph;
  auto weight = fixed_weights(game);
  std::vector<bool> enabled(game.num_resources, false);
  std::set<Vertex> terminals;
  for (Player i = 0; i < game.num_players; ++i) {
    Vertex t = std::get<PathSpace>(game.spaces[i]).terminal;
    if (t != source) terminals.insert(t);
  }
  auto mark = [&](const Path& p) {
    for (EdgeId e : p.edges) enabled[e] = true;
  };
  if (net.directed()) {
    ShortestPathTree spt(net, source, weight);
    for (Vertex t : terminals) {
      if (!spt.reached(t)) throw Disconnected("terminal " + std::to_string(t) + " is not reachable");
      mark(*spt.path_to(t));
    }
  } else {
    // Prim on the metric closure of {source} ∪ terminals.
    std::vector<Vertex> nodes{source};
    nodes.insert(nodes.end(), terminals.begin(), terminals.end());
    std::vector<ShortestPathTree> spt;
    for (Vertex v : nodes) spt.emplace_back(net, v, weight);
    std::vector<bool> in(nodes.size(), false);
    in[0] = true;
    for (std::size_t added = 1; added < nodes.size(); ++added) {
      int from = -1;
      int to = -1;
      for (std::size_t a = 0; a < nodes.size(); ++a) {
        if (!in[a]) continue;
        for (std::size_t b = 0; b < nodes.size(); ++b) {
          if (in[b] || !spt[a].reached(nodes[b])) continue;
          if (to < 0 || spt[a].distance(nodes[b]) < spt[from].distance(nodes[to])) {
            from = static_cast<int>(a);
            to = static_cast<int>(b);
          }
        }
      }
      if (to < 0) throw Disconnected("terminals are not connected to the source");
      in[to] = true;
      mark(*spt[from].path_to(nodes[to]));
    }
  }
  return tree_paths(game, source, enabled);
}

}  // namespace sepcs
