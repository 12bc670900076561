#include "sepcs/generators.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "sepcs/errors.hpp"
#include "sepcs/matroid_transform.hpp"

namespace sepcs {

int uniform_int(Rng& rng, int lo, int hi) {
  // Plain modulo keeps draws identical across standard libraries.
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

namespace {

std::vector<std::vector<Rational>> random_delays(Rng& rng, int players, int resources, int max_delay) {
  std::vector<std::vector<Rational>> d(players, std::vector<Rational>(resources, Rational(0)));
  if (max_delay <= 0) return d;
  for (auto& row : d) {
    for (auto& x : row) x = Rational(uniform_int(rng, 0, max_delay));
  }
  return d;
}

ResourceSet random_subset(Rng& rng, int m) {
  ResourceSet s;
  while (s.empty()) {
    for (Resource r = 0; r < m; ++r) {
      if (uniform_int(rng, 0, 1) == 1) s.push_back(r);
    }
  }
  return s;
}

std::shared_ptr<const Matroid> random_matroid(Rng& rng, int m, MatroidKind kind) {
  ResourceSet ground = random_subset(rng, m);
  const int g = static_cast<int>(ground.size());
  switch (kind) {
    case MatroidKind::kUniform:
      return std::make_shared<UniformMatroid>(ground, uniform_int(rng, 1, g));
    case MatroidKind::kPartition: {
      int k = std::min(g, uniform_int(rng, 1, 3));
      std::vector<ResourceSet> blocks(k);
      for (int j = 0; j < g; ++j) blocks[j < k ? j : uniform_int(rng, 0, k - 1)].push_back(ground[j]);
      std::vector<int> quotas;
      for (auto& b : blocks) {
        std::sort(b.begin(), b.end());
        quotas.push_back(uniform_int(rng, 1, static_cast<int>(b.size())));
      }
      return std::make_shared<PartitionMatroid>(blocks, quotas);
    }
    case MatroidKind::kGraphic: {
      int nodes = uniform_int(rng, 2, 4);
      std::vector<std::pair<int, int>> ends;
      for (int j = 0; j < g; ++j) {
        int a = uniform_int(rng, 0, nodes - 1);
        int b = uniform_int(rng, 0, nodes - 2);
        if (b >= a) ++b;
        ends.push_back({a, b});
      }
      return std::make_shared<GraphicMatroid>(ground, ends);
    }
  }
  throw InternalInvariant("unknown matroid kind");
}

}  // namespace

Game random_ufl(Rng& rng, int players, int facilities) {
  std::vector<Rational> cost;
  for (int f = 0; f < facilities; ++f) cost.push_back(Rational(uniform_int(rng, 1, 20)));
  std::vector<std::vector<Rational>> dist(players);
  for (auto& row : dist) {
    for (int f = 0; f < facilities; ++f) row.push_back(Rational(uniform_int(rng, 0, 10)));
  }
  return make_ufl_game(cost, dist);
}

Game random_matroid_game(Rng& rng, const MatroidGenOptions& o) {
  if (o.players < 0 || o.resources < 1 || o.players > kMaxPlayers) throw InputError("bad generator size");
  Game g;
  g.num_players = o.players;
  g.num_resources = o.resources;
  if (o.subadditive) {
    const int items = 5;
    for (Resource e = 0; e < o.resources; ++e) {
      std::vector<int> weight(items);
      for (int& w : weight) w = uniform_int(rng, 1, std::max(1, o.max_cost / 2));
      std::vector<std::uint32_t> cover(o.players);
      for (auto& c : cover) {
        int count = uniform_int(rng, 1, 3);
        for (int k = 0; k < count; ++k) c |= 1U << uniform_int(rng, 0, items - 1);
      }
      std::map<PlayerSet, Rational> table;
      for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << o.players); ++bits) {
        std::uint32_t u = 0;
        for (Player i = 0; i < o.players; ++i) {
          if ((bits >> i) & 1U) u |= cover[i];
        }
        int total = 0;
        for (int k = 0; k < items; ++k) {
          if ((u >> k) & 1U) total += weight[k];
        }
        table[PlayerSet(bits)] = Rational(total);
      }
      g.cost.push_back(CostFunction::table(std::move(table)));
    }
  } else {
    for (Resource e = 0; e < o.resources; ++e) g.cost.push_back(CostFunction::fixed(Rational(uniform_int(rng, 1, o.max_cost))));
  }
  g.delay = random_delays(rng, o.players, o.resources, o.max_delay);
  for (Player i = 0; i < o.players; ++i) g.spaces.push_back(MatroidSpace{random_matroid(rng, o.resources, o.kind)});
  g.validate();
  return g;
}

Profile random_bases(const Game& game, Rng& rng) {
  Profile p;
  for (Player i = 0; i < game.num_players; ++i) {
    const auto* ms = std::get_if<MatroidSpace>(&game.spaces[i]);
    if (ms == nullptr) throw UnsupportedSpace("player " + std::to_string(i) + " has no matroid");
    ResourceSet order = ms->matroid->ground();
    for (int k = static_cast<int>(order.size()) - 1; k > 0; --k) std::swap(order[k], order[uniform_int(rng, 0, k)]);
    ResourceSet basis;
    for (Resource r : order) {
      ResourceSet trial = basis;
      trial.insert(std::lower_bound(trial.begin(), trial.end(), r), r);
      if (ms->matroid->is_independent(trial)) basis = std::move(trial);
    }
    p.choice.push_back(std::move(basis));
  }
  return p;
}

Game random_single_source(Rng& rng, const TreeGenOptions& o) {
  if (o.vertices < 1 || o.players < 0) throw InputError("bad generator size");
  Network net(o.vertices, o.directed);
  for (Vertex v = 1; v < o.vertices; ++v) net.add_edge(uniform_int(rng, 0, v - 1), v, Rational(uniform_int(rng, 1, o.max_cost)));
  if (o.vertices > 1) {
    int extra = uniform_int(rng, 0, 2 * o.vertices);
    for (int k = 0; k < extra; ++k) {
      Vertex a = uniform_int(rng, 0, o.vertices - 1);
      Vertex b = uniform_int(rng, 0, o.vertices - 2);
      if (b >= a) ++b;
      net.add_edge(a, b, Rational(uniform_int(rng, 1, o.max_cost)));
    }
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (int i = 0; i < o.players; ++i) pairs.push_back({0, o.vertices > 1 ? uniform_int(rng, 1, o.vertices - 1) : 0});
  return make_path_game(std::move(net), pairs);
}

Game random_sp_game(Rng& rng, const SpGenOptions& o) {
  if (o.max_edges < 1 || o.players < 0) throw InputError("bad generator size");
  std::vector<std::pair<Vertex, Vertex>> edges{{0, 1}};
  int vertices = 2;
  const int target = o.max_edges == 1 ? 1 : uniform_int(rng, 2, o.max_edges);
  while (static_cast<int>(edges.size()) < target) {
    int k = uniform_int(rng, 0, static_cast<int>(edges.size()) - 1);
    if (uniform_int(rng, 0, 1) == 0) {
      Vertex w = vertices++;
      Vertex b = edges[k].second;
      edges[k].second = w;
      edges.push_back({w, b});
    } else {
      edges.push_back(edges[k]);
    }
  }
  Network net(vertices, false);
  for (auto [u, v] : edges) net.add_edge(u, v, Rational(uniform_int(rng, 1, o.max_cost)));
  std::vector<std::vector<Rational>> delays(o.players, std::vector<Rational>(edges.size(), Rational(0)));
  if (o.max_delay > 0) {
    for (auto& row : delays) {
      for (auto& d : row) {
        if (uniform_int(rng, 0, 1) == 1) d = Rational(uniform_int(rng, 1, o.max_delay));
      }
    }
  }
  std::vector<std::pair<Vertex, Vertex>> pairs(o.players, {0, 1});
  return make_path_game(std::move(net), pairs, std::move(delays));
}

Profile random_profile(const Game& game, Rng& rng) {
  if (game.is_matroid_game()) return random_bases(game, rng);
  Profile p;
  for (Player i = 0; i < game.num_players; ++i) {
    const auto* ps = std::get_if<PathSpace>(&game.spaces[i]);
    if (ps == nullptr) throw UnsupportedSpace("mixed strategy spaces are not supported");
    std::vector<Rational> w;
    for (EdgeId e = 0; e < game.graph->num_edges(); ++e) w.push_back(Rational(uniform_int(rng, 1, 50)));
    auto path = shortest_path(*game.graph, ps->source, ps->terminal, w);
    if (!path) throw Disconnected("player " + std::to_string(i) + " cannot reach its terminal");
    p.choice.push_back(make_resource_set(path->edges));
  }
  return p;
}

}  // namespace sepcs
