#include "sepcs/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "sepcs/errors.hpp"
#include "sepcs/matroid_transform.hpp"

namespace sepcs {

namespace {

std::int64_t binomial_capped(int n, int k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // Multiplicative formula; values stay exact because C(n, j) is integral.
  __int128 c = 1;
  for (int j = 1; j <= k; ++j) {
    c = c * (n - k + j) / j;
    if (c > cap) return cap + 1;
  }
  return static_cast<std::int64_t>(c);
}

std::vector<ResourceSet> enumerate_bases(const Matroid& m, const EnumerationBudget& budget) {
  const auto& g = m.ground();
  const int n = static_cast<int>(g.size());
  const int k = m.rank();
  if (binomial_capped(n, k, budget.max_profiles) > budget.max_profiles) {
    throw TooLarge("too many candidate bases to enumerate");
  }
  std::vector<ResourceSet> out;
  std::vector<int> idx(k);
  for (int j = 0; j < k; ++j) idx[j] = j;
  ResourceSet trial(k);
  for (;;) {
    for (int j = 0; j < k; ++j) trial[j] = g[idx[j]];
    if (m.is_independent(trial)) {
      out.push_back(trial);
      if (static_cast<std::int64_t>(out.size()) > budget.max_paths_per_player) {
        throw TooLarge("too many bases for one player");
      }
    }
    int j = k - 1;
    while (j >= 0 && idx[j] == n - k + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
  }
  return out;
}

class PathEnumerator {
 public:
  PathEnumerator(const Network& net, Vertex target, std::int64_t cap, bool reverse)
      : net_(net), target_(target), cap_(cap), reverse_(reverse), on_path_(net.num_vertices(), false) {}

  std::vector<ResourceSet> run(Vertex source) {
    if (source == target_) return {ResourceSet{}};
    visit(source);
    return std::move(out_);
  }

 private:
  void visit(Vertex v) {
    on_path_[v] = true;
    const auto& arcs = net_.out(v);
    const int k = static_cast<int>(arcs.size());
    for (int a = 0; a < k; ++a) {
      const Arc& arc = arcs[reverse_ ? k - 1 - a : a];
      if (on_path_[arc.to]) continue;
      stack_.push_back(arc.edge);
      if (arc.to == target_) {
        out_.push_back(make_resource_set(stack_));
        if (static_cast<std::int64_t>(out_.size()) > cap_) throw TooManyPaths("too many simple paths");
      } else {
        visit(arc.to);
      }
      stack_.pop_back();
    }
    on_path_[v] = false;
  }

  const Network& net_;
  Vertex target_;
  std::int64_t cap_;
  bool reverse_;
  std::vector<bool> on_path_;
  std::vector<EdgeId> stack_;
  std::vector<ResourceSet> out_;
};

std::vector<std::vector<ResourceSet>> all_strategies(const Game& game, const EnumerationBudget& budget) {
  std::vector<std::vector<ResourceSet>> all;
  for (Player i = 0; i < game.num_players; ++i) {
    all.push_back(enumerate_strategies(game, i, budget));
    if (all.back().empty()) throw InfeasibleProfile("player " + std::to_string(i) + " has no strategy");
  }
  if (profile_count(all) > budget.max_profiles) throw TooLarge("profile space exceeds the enumeration budget");
  return all;
}

}  // namespace

std::vector<ResourceSet> enumerate_strategies(const Game& game, Player i, const EnumerationBudget& budget,
                                              bool reverse_adjacency) {
  if (const auto* ms = std::get_if<MatroidSpace>(&game.spaces[i])) return enumerate_bases(*ms->matroid, budget);
  const auto& ps = std::get<PathSpace>(game.spaces[i]);
  PathEnumerator walker(*game.graph, ps.terminal, budget.max_paths_per_player, reverse_adjacency);
  return walker.run(ps.source);
}

std::int64_t profile_count(const std::vector<std::vector<ResourceSet>>& strategies) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t total = 1;
  for (const auto& s : strategies) {
    auto k = static_cast<std::int64_t>(s.size());
    if (k == 0) return 0;
    if (total > kMax / k) return kMax;
    total *= k;
  }
  return total;
}

void for_each_profile(const Game& game, const EnumerationBudget& budget,
                      const std::function<void(const Profile&)>& fn) {
  auto all = all_strategies(game, budget);
  const int n = game.num_players;
  std::vector<std::size_t> digit(n, 0);
  Profile p;
  p.choice.resize(n);
  for (int i = 0; i < n; ++i) p.choice[i] = all[i][0];
  for (;;) {
    fn(p);
    int i = n - 1;
    while (i >= 0 && digit[i] + 1 == all[i].size()) {
      digit[i] = 0;
      p.choice[i] = all[i][0];
      --i;
    }
    if (i < 0) return;
    p.choice[i] = all[i][++digit[i]];
  }
}

OptimumResult brute_force_optimum(const Game& game, const EnumerationBudget& budget) {
  auto all = all_strategies(game, budget);
  const int n = game.num_players;
  std::vector<std::vector<Rational>> delay_sum(n);
  for (Player i = 0; i < n; ++i) {
    for (const auto& s : all[i]) {
      Rational d(0);
      for (Resource e : s) d += game.d(i, e);
      delay_sum[i].push_back(d);
    }
  }
  std::vector<bool> fixed(game.num_resources);
  std::vector<Resource> variable;
  for (Resource e = 0; e < game.num_resources; ++e) {
    fixed[e] = game.cost[e].is_fixed();
    if (!fixed[e]) variable.push_back(e);
  }

  OptimumResult best;
  bool have = false;
  std::vector<int> count(game.num_resources, 0);
  std::vector<PlayerSet> users(game.num_resources);
  std::vector<std::size_t> pick(n, 0);
  Rational running(0);

  auto leaf = [&]() {
    ++best.profiles;
    Rational total = running;
    for (Resource e : variable) {
      if (!users[e].empty()) total += game.cost_of(e, users[e]);
    }
    if (!have || total < best.cost) {
      have = true;
      best.cost = total;
      best.unique = true;
      best.profile.choice.assign(n, {});
      for (Player i = 0; i < n; ++i) best.profile.choice[i] = all[i][pick[i]];
    } else if (total == best.cost) {
      best.unique = false;
    }
  };

  std::function<void(int)> descend = [&](int i) {
    if (i == n) {
      leaf();
      return;
    }
    for (std::size_t k = 0; k < all[i].size(); ++k) {
      pick[i] = k;
      for (Resource e : all[i][k]) {
        if (fixed[e] && count[e] == 0) running += game.cost[e].fixed_value();
        ++count[e];
        users[e] = users[e].with(i);
      }
      running += delay_sum[i][k];
      descend(i + 1);
      running -= delay_sum[i][k];
      for (Resource e : all[i][k]) {
        --count[e];
        users[e] = users[e].without(i);
        if (fixed[e] && count[e] == 0) running -= game.cost[e].fixed_value();
      }
    }
  };
  descend(0);
  return best;
}

DeviationLp full_deviation_lp(const Game& game, const Profile& profile, const EnumerationBudget& budget) {
  check_profile(game, profile);
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
    const auto& own = profile.choice[i];
    for (const auto& alt : enumerate_strategies(game, i, budget)) {
      if (alt == own) continue;
      std::vector<Rational> row(nv, Rational(0));
      Rational rhs(0);
      for (Resource e : own) {
        if (contains(alt, e)) continue;
        row[var[{i, e}]] = Rational(1);
        rhs -= game.d(i, e);
      }
      for (Resource f : alt) {
        if (contains(own, f)) continue;
        rhs += game.cost_of(f, users[f].with(i)) + game.d(i, f);
      }
      out.lp.add_row(std::move(row), rhs);
    }
  }
  return out;
}

bool lp_enforceable(const Game& game, const Profile& profile, const EnumerationBudget& budget) {
  auto dev = full_deviation_lp(game, profile, budget);
  auto sol = solve(dev.lp);
  return sol.status == LpStatus::kOptimal && sol.objective == dev.target;
}

bool brute_force_enforceable(const Game& game, const Profile& profile, const EnumerationBudget& budget) {
  if (game.is_matroid_game() && game.num_players > 0) {
    return check_enforceable_matroid(game, profile, false).ok;
  }
  return lp_enforceable(game, profile, budget);
}

}  // namespace sepcs
