#include "sepcs/game.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#include "sepcs/errors.hpp"

namespace sepcs {

struct CostFunction::OracleState {
  Oracle oracle;
  std::optional<std::map<PlayerSet, Rational>> table;
  std::mutex mutex;
  std::map<PlayerSet, Rational> cache;

  // Checks a freshly computed value against everything seen so far.
  void validate(PlayerSet s, const Rational& v) const {
    auto fail = [&](const std::string& what) {
      throw InvalidCostOracle("cost oracle violates " + what + " at {" + s.key() + "}");
    };
    for (const auto& [t, w] : cache) {
      if (s.subset_of(t) && v > w) fail("monotonicity against {" + t.key() + "}");
      if (t.subset_of(s) && w > v) fail("monotonicity against {" + t.key() + "}");
    }
    // c(S) <= c(S - i) + c({i})
    for (Player i : s.members()) {
      PlayerSet rest = s.without(i);
      if (rest.empty()) continue;
      auto a = cache.find(rest);
      auto b = cache.find(PlayerSet::single(i));
      if (a != cache.end() && b != cache.end() && v > a->second + b->second) fail("subadditivity");
    }
    // S as the "S - i" side for cached supersets T = S + i.
    for (const auto& [t, w] : cache) {
      if (!s.subset_of(t) || t.size() != s.size() + 1) continue;
      auto b = cache.find(PlayerSet::single((t - s).min()));
      if (b != cache.end() && w > v + b->second) fail("subadditivity");
    }
    // S as the singleton side.
    if (s.size() == 1) {
      Player i = s.min();
      for (const auto& [t, w] : cache) {
        if (!t.contains(i) || t.size() < 2) continue;
        auto a = cache.find(t.without(i));
        if (a != cache.end() && w > a->second + v) fail("subadditivity");
      }
    }
  }
};

CostFunction CostFunction::fixed(Rational value) {
  CostFunction c;
  c.fixed_ = std::move(value);
  c.state_.reset();
  return c;
}

CostFunction CostFunction::subadditive(Oracle oracle) {
  CostFunction c;
  c.state_ = std::make_shared<OracleState>();
  c.state_->oracle = std::move(oracle);
  return c;
}

CostFunction CostFunction::table(std::map<PlayerSet, Rational> values) {
  auto shared = std::make_shared<const std::map<PlayerSet, Rational>>(values);
  CostFunction c = subadditive([shared](PlayerSet s) -> Rational {
    auto it = shared->find(s);
    if (it == shared->end()) {
      throw InvalidCostOracle("subadditive table has no entry for {" + s.key() + "}");
    }
    return it->second;
  });
  c.state_->table = std::move(values);
  return c;
}

const std::map<PlayerSet, Rational>* CostFunction::table_values() const {
  if (!state_ || !state_->table) return nullptr;
  return &*state_->table;
}

Rational CostFunction::operator()(PlayerSet users) const {
  if (users.empty()) return Rational(0);
  if (!state_) return fixed_;
  std::lock_guard<std::mutex> lock(state_->mutex);
  auto it = state_->cache.find(users);
  if (it != state_->cache.end()) return it->second;
  Rational v = state_->oracle(users);
  if (v.sign() < 0) throw InvalidCostOracle("negative cost at {" + users.key() + "}");
  state_->validate(users, v);
  state_->cache.emplace(users, v);
  return v;
}

bool Game::all_fixed() const {
  for (const auto& c : cost) {
    if (!c.is_fixed()) return false;
  }
  return true;
}

bool Game::zero_delays() const {
  for (const auto& row : delay) {
    for (const auto& d : row) {
      if (!d.is_zero()) return false;
    }
  }
  return true;
}

bool Game::is_path_game() const {
  for (const auto& s : spaces) {
    if (!std::holds_alternative<PathSpace>(s)) return false;
  }
  return true;
}

bool Game::is_matroid_game() const {
  for (const auto& s : spaces) {
    if (!std::holds_alternative<MatroidSpace>(s)) return false;
  }
  return true;
}

void Game::validate() const {
  if (num_players < 0 || num_resources < 0) throw InputError("negative game dimensions");
  if (num_players > kMaxPlayers) {
    throw InputError("at most " + std::to_string(kMaxPlayers) + " players supported");
  }
  if (static_cast<int>(cost.size()) != num_resources) throw InputError("one cost per resource required");
  if (static_cast<int>(delay.size()) != num_players) throw InputError("one delay row per player required");
  if (static_cast<int>(spaces.size()) != num_players) throw InputError("one strategy space per player required");
  for (const auto& row : delay) {
    if (static_cast<int>(row.size()) != num_resources) throw InputError("delay row has wrong length");
    for (const auto& d : row) {
      if (d.sign() < 0) throw InputError("delays must be nonnegative");
    }
  }
  for (const auto& c : cost) {
    if (c.is_fixed() && c.fixed_value().sign() < 0) throw InputError("costs must be nonnegative");
  }
  if (graph && graph->num_edges() != num_resources) {
    throw InputError("graph games need exactly one resource per edge");
  }
  for (int i = 0; i < num_players; ++i) {
    if (const auto* ms = std::get_if<MatroidSpace>(&spaces[i])) {
      if (!ms->matroid) throw InputError("player " + std::to_string(i) + " has no matroid");
      for (Resource r : ms->matroid->ground()) {
        if (r < 0 || r >= num_resources) throw InputError("matroid ground references unknown resource");
      }
    } else {
      const auto& ps = std::get<PathSpace>(spaces[i]);
      if (!graph) throw InputError("path strategies need a graph");
      if (ps.source < 0 || ps.source >= graph->num_vertices() || ps.terminal < 0 ||
          ps.terminal >= graph->num_vertices()) {
        throw InputError("path endpoints out of range for player " + std::to_string(i));
      }
    }
  }
}

Game make_path_game(Network net, const std::vector<std::pair<Vertex, Vertex>>& pairs,
                    std::vector<std::vector<Rational>> delays) {
  Game g;
  g.num_players = static_cast<int>(pairs.size());
  g.num_resources = net.num_edges();
  for (const Edge& e : net.edges()) g.cost.push_back(CostFunction::fixed(e.cost));
  if (delays.empty()) {
    delays.assign(g.num_players, std::vector<Rational>(g.num_resources, Rational(0)));
  }
  g.delay = std::move(delays);
  for (auto [s, t] : pairs) g.spaces.push_back(PathSpace{s, t});
  g.graph = std::move(net);
  g.validate();
  return g;
}

std::vector<PlayerSet> occupancy(const Game& game, const Profile& profile) {
  std::vector<PlayerSet> users(game.num_resources);
  for (int i = 0; i < static_cast<int>(profile.choice.size()); ++i) {
    for (Resource r : profile.choice[i]) {
      if (r < 0 || r >= game.num_resources) throw InfeasibleProfile("unknown resource in profile");
      users[r] = users[r].with(i);
    }
  }
  return users;
}

bool is_feasible_strategy(const Game& game, Player i, const ResourceSet& strategy) {
  if (const auto* ms = std::get_if<MatroidSpace>(&game.spaces[i])) {
    return ms->matroid->is_basis(strategy);
  }
  const auto& ps = std::get<PathSpace>(game.spaces[i]);
  return order_path(*game.graph, ps.source, ps.terminal, strategy).has_value();
}

void check_profile(const Game& game, const Profile& profile) {
  if (static_cast<int>(profile.choice.size()) != game.num_players) {
    throw InfeasibleProfile("profile has wrong number of players");
  }
  for (int i = 0; i < game.num_players; ++i) {
    const auto& s = profile.choice[i];
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw InfeasibleProfile("strategy of player " + std::to_string(i) + " is not a sorted set");
    }
    if (!is_feasible_strategy(game, i, s)) {
      throw InfeasibleProfile("strategy of player " + std::to_string(i) + " is not feasible");
    }
  }
}

Rational total_cost(const Game& game, const Profile& profile) {
  check_profile(game, profile);
  auto users = occupancy(game, profile);
  Rational total(0);
  for (Resource e = 0; e < game.num_resources; ++e) {
    if (!users[e].empty()) total += game.cost_of(e, users[e]);
  }
  for (int i = 0; i < game.num_players; ++i) {
    for (Resource e : profile.choice[i]) total += game.d(i, e);
  }
  return total;
}

Path player_path(const Game& game, const Profile& profile, Player i) {
  const auto* ps = std::get_if<PathSpace>(&game.spaces[i]);
  if (ps == nullptr) throw UnsupportedSpace("player " + std::to_string(i) + " has no path space");
  auto p = order_path(*game.graph, ps->source, ps->terminal, profile.choice[i]);
  if (!p) throw InfeasibleProfile("player " + std::to_string(i) + " does not hold a simple path");
  return *p;
}

}  // namespace sepcs
