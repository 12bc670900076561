#include "sepcs/protocol.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "sepcs/errors.hpp"
#include "sepcs/oracle.hpp"

namespace sepcs {

void SharingTable::set(Player i, Resource e, Rational value) {
  if (value.sign() < 0) throw InputError("shares must be nonnegative");
  if (i < 0 || i >= static_cast<int>(base_.choice.size()) || !contains(base_.choice[i], e)) {
    throw InputError("share for player " + std::to_string(i) + " on resource " + std::to_string(e) +
                     " outside the base profile");
  }
  finalized_ = false;
  if (value.is_zero()) {
    shares_.erase({i, e});
  } else {
    shares_[{i, e}] = std::move(value);
  }
}

Rational SharingTable::share(Player i, Resource e) const {
  auto it = shares_.find({i, e});
  return it == shares_.end() ? Rational(0) : it->second;
}

void SharingTable::finalize(const Game& game) {
  check_profile(game, base_);
  auto users = occupancy(game, base_);
  for (Resource e = 0; e < game.num_resources; ++e) {
    if (users[e].empty()) continue;
    Rational paid(0);
    for (Player i : users[e].members()) paid += share(i, e);
    Rational required = game.cost_of(e, users[e]);
    if (paid != required) {
      throw NotBudgetBalanced("resource " + std::to_string(e) + " receives " + paid.str() + " but costs " +
                              required.str());
    }
  }
  finalized_ = true;
}

SeparableProtocol::SeparableProtocol(const Game& game, SharingTable table) : table_(std::move(table)) {
  check_profile(game, table_.base());
  base_users_ = occupancy(game, table_.base());
}

Rational SeparableProtocol::cost_share(const Game& game, PlayerSet users, Player i, Resource e) const {
  if (!users.contains(i)) return Rational(0);
  PlayerSet base = base_users_[e];
  if (users == base) return table_.share(i, e);
  PlayerSet newcomers = users - base;
  Player payer = newcomers.empty() ? users.min() : newcomers.min();
  return payer == i ? game.cost_of(e, users) : Rational(0);
}

Rational SeparableProtocol::cost_share(const Game& game, const Profile& profile, Player i,
                                       Resource e) const {
  auto users = occupancy(game, profile);
  return cost_share(game, users[e], i, e);
}

Rational private_cost(const Game& game, const SeparableProtocol& protocol, const Profile& profile,
                      Player i) {
  check_profile(game, profile);
  auto users = occupancy(game, profile);
  Rational total(0);
  for (Resource e : profile.choice[i]) {
    total += protocol.cost_share(game, users[e], i, e);
    total += game.d(i, e);
  }
  return total;
}

BudgetReport verify_budget_balance(const Game& game, const SeparableProtocol& protocol,
                                   const Profile& profile) {
  check_profile(game, profile);
  auto users = occupancy(game, profile);
  BudgetReport report;
  for (Resource e = 0; e < game.num_resources; ++e) {
    if (users[e].empty()) continue;
    Rational paid(0);
    for (Player i : users[e].members()) paid += protocol.cost_share(game, users[e], i, e);
    Rational required = game.cost_of(e, users[e]);
    if (paid != required) {
      report.ok = false;
      report.violations.push_back({e, paid, required});
    }
  }
  return report;
}

namespace {

// Weight of a resource for player i if the others stay on the base profile.
std::vector<Rational> deviation_weights(const Game& game, const SeparableProtocol& protocol, Player i) {
  const auto& base = protocol.table().base();
  const auto& users = protocol.base_users();
  std::vector<Rational> w(game.num_resources);
  for (Resource e = 0; e < game.num_resources; ++e) {
    if (contains(base.choice[i], e)) {
      w[e] = protocol.table().share(i, e) + game.d(i, e);
    } else {
      w[e] = game.cost_of(e, users[e].with(i)) + game.d(i, e);
    }
  }
  return w;
}

ResourceSet min_weight_basis(const Matroid& m, const std::vector<Rational>& w) {
  std::vector<Resource> order(m.ground().begin(), m.ground().end());
  std::stable_sort(order.begin(), order.end(), [&](Resource a, Resource b) { return w[a] < w[b]; });
  ResourceSet basis;
  for (Resource r : order) {
    ResourceSet trial = basis;
    trial.insert(std::lower_bound(trial.begin(), trial.end(), r), r);
    if (m.is_independent(trial)) basis = std::move(trial);
  }
  return basis;
}

}  // namespace

PneReport verify_pne(const Game& game, const SeparableProtocol& protocol) {
  const Profile& base = protocol.table().base();
  PneReport report;
  for (Player i = 0; i < game.num_players; ++i) {
    auto w = deviation_weights(game, protocol, i);
    Rational current(0);
    for (Resource e : base.choice[i]) current += w[e];

    ResourceSet best;
    Rational best_cost(0);
    if (const auto* ms = std::get_if<MatroidSpace>(&game.spaces[i])) {
      best = min_weight_basis(*ms->matroid, w);
    } else if (const auto* ps = std::get_if<PathSpace>(&game.spaces[i])) {
      auto path = shortest_path(*game.graph, ps->source, ps->terminal, w);
      if (!path) throw InfeasibleProfile("player " + std::to_string(i) + " has no path");
      best = make_resource_set(path->edges);
    } else {
      throw UnsupportedSpace("unsupported strategy space");
    }
    for (Resource e : best) best_cost += w[e];
    if (best_cost >= current) continue;

    Profile moved = base;
    moved.choice[i] = best;
    Rational realized = private_cost(game, protocol, moved, i);
    if (realized != best_cost) {
      throw InternalInvariant("best-response weight " + best_cost.str() + " disagrees with private cost " +
                              realized.str());
    }
    report.ok = false;
    report.improving = Deviation{i, best, current, best_cost};
    return report;
  }
  return report;
}

bool verify_separability_bruteforce(const Game& game, const ShareFunction& share,
                                    std::int64_t max_profiles) {
  EnumerationBudget budget;
  budget.max_profiles = max_profiles;
  std::map<std::tuple<Resource, std::uint64_t, Player>, Rational> seen;
  bool ok = true;
  for_each_profile(game, budget, [&](const Profile& profile) {
    if (!ok) return;
    auto users = occupancy(game, profile);
    for (Resource e = 0; e < game.num_resources && ok; ++e) {
      for (Player i : users[e].members()) {
        Rational v = share(profile, i, e);
        auto [it, fresh] = seen.try_emplace({e, users[e].bits(), i}, v);
        if (!fresh && it->second != v) {
          ok = false;
          break;
        }
      }
    }
  });
  return ok;
}

bool verify_separability_bruteforce(const Game& game, const SeparableProtocol& protocol,
                                    std::int64_t max_profiles) {
  return verify_separability_bruteforce(
      game,
      [&](const Profile& p, Player i, Resource e) { return protocol.cost_share(game, p, i, e); },
      max_profiles);
}

ShareFunction fair_share(const Game& game) {
  return [&game](const Profile& p, Player i, Resource e) {
    auto users = occupancy(game, p);
    if (!users[e].contains(i)) return Rational(0);
    return game.cost_of(e, users[e]) / Rational(users[e].size());
  };
}

}  // namespace sepcs
