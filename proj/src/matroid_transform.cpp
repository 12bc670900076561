#include "sepcs/matroid_transform.hpp"

#include <algorithm>
#include <string>

#include "sepcs/errors.hpp"

namespace sepcs {

namespace {

const Matroid& matroid_of(const Game& game, Player i) {
  const auto* ms = std::get_if<MatroidSpace>(&game.spaces[i]);
  if (ms == nullptr) throw UnsupportedSpace("player " + std::to_string(i) + " has no matroid strategy space");
  return *ms->matroid;
}

Rational true_alternative(const Game& game, const std::vector<PlayerSet>& users, Player i, Resource e,
                          Resource f) {
  if (f == e) return game.cost_of(e, users[e]) + game.d(i, e);
  return game.cost_of(f, users[f].with(i)) + game.d(i, f);
}

Rational deviation_cost_at(const Game& game, const Profile& profile, const std::vector<PlayerSet>& users,
                           Player i, Resource e, bool virtual_cost) {
  auto candidates = exchange_candidates(matroid_of(game, i), profile.choice[i], e);
  Rational best;
  bool have = false;
  for (Resource f : candidates) {
    Rational v = virtual_cost ? game.standalone_cost(i, f) : true_alternative(game, users, i, e, f);
    if (!have || v < best) {
      best = std::move(v);
      have = true;
    }
  }
  return best;
}

struct Slack {
  bool delay_violated = false;
  Player delay_player = -1;
  bool cost_violated = false;
};

// Evaluates the virtual conditions on resource e from scratch.
Slack evaluate(const Game& game, const Profile& b, const std::vector<PlayerSet>& users, Resource e) {
  Slack s;
  Rational budget(0);
  for (Player i : users[e].members()) {
    Rational bar = deviation_cost_at(game, b, users, i, e, true);
    if (game.d(i, e) > bar && !s.delay_violated) {
      s.delay_violated = true;
      s.delay_player = i;
    }
    budget += bar - game.d(i, e);
  }
  s.cost_violated = !users[e].empty() && game.cost_of(e, users[e]) > budget;
  return s;
}

// argmin π_i^f over exchange partners f != e, smallest id on ties.
Resource cheapest_swap(const Game& game, const Profile& b, Player i, Resource e) {
  auto candidates = exchange_candidates(matroid_of(game, i), b.choice[i], e);
  Resource best = -1;
  Rational best_pi;
  for (Resource f : candidates) {
    if (f == e) continue;
    Rational pi = game.standalone_cost(i, f);
    if (best < 0 || pi < best_pi) {
      best = f;
      best_pi = std::move(pi);
    }
  }
  return best;
}

}  // namespace

std::vector<std::vector<Rational>> virtual_costs(const Game& game) {
  std::vector<std::vector<Rational>> pi(game.num_players, std::vector<Rational>(game.num_resources));
  for (Player i = 0; i < game.num_players; ++i) {
    for (Resource e = 0; e < game.num_resources; ++e) pi[i][e] = game.standalone_cost(i, e);
  }
  return pi;
}

Rational deviation_cost(const Game& game, const Profile& profile, Player i, Resource e, bool virtual_cost) {
  check_profile(game, profile);
  return deviation_cost_at(game, profile, occupancy(game, profile), i, e, virtual_cost);
}

MatroidCheck check_enforceable_matroid(const Game& game, const Profile& profile, bool virtual_cost) {
  check_profile(game, profile);
  auto users = occupancy(game, profile);
  MatroidCheck report;
  for (Resource e = 0; e < game.num_resources; ++e) {
    if (users[e].empty()) continue;
    Rational budget(0);
    for (Player i : users[e].members()) {
      Rational delta = deviation_cost_at(game, profile, users, i, e, virtual_cost);
      if (game.d(i, e) > delta) report.violated.push_back({Condition::kD1, e, i});
      budget += delta - game.d(i, e);
    }
    if (game.cost_of(e, users[e]) > budget) report.violated.push_back({Condition::kD2, e, -1});
  }
  report.ok = report.violated.empty();
  return report;
}

MatroidTransformResult transform_matroid(const Game& game, const Profile& profile, Trace* trace) {
  if (!game.is_matroid_game()) throw UnsupportedSpace("transform_matroid needs matroid strategy spaces");
  check_profile(game, profile);
  MatroidTransformResult out;
  Profile& b = out.profile;
  b = profile;
  int max_rank = 0;
  for (Player i = 0; i < game.num_players; ++i) max_rank = std::max(max_rank, matroid_of(game, i).rank());
  out.stats.bound = static_cast<std::int64_t>(game.num_players) * game.num_resources * max_rank;

  auto users = occupancy(game, b);
  Rational cost = total_cost(game, b);

  auto move = [&](Player i, Resource e, const char* kind) {
    Resource f = cheapest_swap(game, b, i, e);
    if (f < 0) throw InternalInvariant("no exchange partner for a violating packet");
    if (!(game.standalone_cost(i, f) < game.standalone_cost(i, e))) {
      throw InternalInvariant("packet move does not lower its virtual cost");
    }
    auto& s = b.choice[i];
    s.erase(std::lower_bound(s.begin(), s.end(), e));
    s.insert(std::lower_bound(s.begin(), s.end(), f), f);
    users[e] = users[e].without(i);
    users[f] = users[f].with(i);
    Rational next = total_cost(game, b);
    if (trace != nullptr) trace->push_back({kind, i, e, f, next - cost, ""});
    Rational delta = next - cost;
    cost = std::move(next);
    if (++out.stats.packet_moves > out.stats.bound) {
      throw InternalInvariant("packet moves exceed n*m*rk");
    }
    return delta;
  };

  for (;;) {
    Resource e = -1;
    Slack slack;
    for (Resource r = 0; r < game.num_resources && e < 0; ++r) {
      if (users[r].empty()) continue;
      slack = evaluate(game, b, users, r);
      if (slack.delay_violated || slack.cost_violated) e = r;
    }
    if (e < 0) break;
    ++out.stats.outer_iterations;

    if (slack.delay_violated) {
      Rational delta = move(slack.delay_player, e, "delay_move");
      if (delta.sign() >= 0) throw InternalInvariant("delay move did not lower the total cost");
      continue;
    }
    Rational before = cost;
    while (slack.cost_violated) {
      Player pick = -1;
      for (Player i : users[e].members()) {
        if (game.standalone_cost(i, e) > deviation_cost_at(game, b, users, i, e, true)) {
          pick = i;
          break;
        }
      }
      if (pick < 0) throw InvalidCostOracle("no player can leave a cost-violating resource; costs not subadditive");
      move(pick, e, "cost_move");
      slack = evaluate(game, b, users, e);
    }
    if (cost > before) throw InternalInvariant("cost-violation loop raised the total cost");
  }
  return out;
}

SeparableProtocol build_matroid_protocol(const Game& game, const Profile& profile) {
  auto check = check_enforceable_matroid(game, profile, false);
  if (!check.ok) {
    const auto& v = check.violated.front();
    throw NotEnforceable(std::string(v.condition == Condition::kD1 ? "D1" : "D2") + " fails on resource " +
                         std::to_string(v.resource));
  }
  auto users = occupancy(game, profile);
  SharingTable table(profile);
  for (Resource e = 0; e < game.num_resources; ++e) {
    if (users[e].empty()) continue;
    Rational remaining = game.cost_of(e, users[e]);
    for (Player i : users[e].members()) {
      if (remaining.is_zero()) break;
      Rational cap = deviation_cost_at(game, profile, users, i, e, false) - game.d(i, e);
      Rational give = min(cap, remaining);
      table.set(i, e, give);
      remaining -= give;
    }
  }
  table.finalize(game);
  return SeparableProtocol(game, std::move(table));
}

Game make_ufl_game(const std::vector<Rational>& facility_cost, const std::vector<std::vector<Rational>>& distance) {
  Game g;
  g.num_players = static_cast<int>(distance.size());
  g.num_resources = static_cast<int>(facility_cost.size());
  for (const auto& c : facility_cost) g.cost.push_back(CostFunction::fixed(c));
  g.delay = distance;
  ResourceSet all;
  for (Resource f = 0; f < g.num_resources; ++f) all.push_back(f);
  auto m = std::make_shared<const UniformMatroid>(all, g.num_resources > 0 ? 1 : 0);
  for (Player i = 0; i < g.num_players; ++i) g.spaces.push_back(MatroidSpace{m});
  g.validate();
  return g;
}

Profile first_bases(const Game& game) {
  Profile p;
  for (Player i = 0; i < game.num_players; ++i) {
    const Matroid& m = matroid_of(game, i);
    ResourceSet basis;
    for (Resource r : m.ground()) {
      basis.push_back(r);
      if (!m.is_independent(basis)) basis.pop_back();
    }
    p.choice.push_back(std::move(basis));
  }
  return p;
}

}  // namespace sepcs
