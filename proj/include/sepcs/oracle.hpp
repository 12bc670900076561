#ifndef SEPCS_ORACLE_HPP
#define SEPCS_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sepcs/game.hpp"
#include "sepcs/lp.hpp"

namespace sepcs {

struct EnumerationBudget {
  std::int64_t max_profiles = 1000000;
  std::int64_t max_paths_per_player = 10000;
};

/// All strategies of player i in a fixed order: bases in lexicographic order
/// of their sorted element lists, paths in DFS order over sorted adjacency.
/// `reverse_adjacency` walks arcs in reverse order (independent cross-check).
/// Throws TooManyPaths / TooLarge when over budget.
std::vector<ResourceSet> enumerate_strategies(const Game& game, Player i,
                                              const EnumerationBudget& budget = {},
                                              bool reverse_adjacency = false);

/// Number of profiles in the product space, saturating at INT64_MAX.
std::int64_t profile_count(const std::vector<std::vector<ResourceSet>>& strategies);

/// Calls fn(profile) for every profile; player 0 varies slowest. Throws
/// TooLarge when the product exceeds the budget.
void for_each_profile(const Game& game, const EnumerationBudget& budget,
                      const std::function<void(const Profile&)>& fn);

struct OptimumResult {
  Profile profile;
  Rational cost;
  bool unique = true;
  std::int64_t profiles = 0;
};

/// Exact minimum of total_cost; the first minimizer in enumeration order wins.
OptimumResult brute_force_optimum(const Game& game, const EnumerationBudget& budget = {});

/// LP(P) with one Nash row per alternative strategy of every player. Variable
/// k stands for the k-th pair of `variables`.
struct DeviationLp {
  LinearProgram lp{0};
  std::vector<std::pair<Player, Resource>> variables;
  Rational target;  // Σ over used resources of c_e(N_e(P))
};

DeviationLp full_deviation_lp(const Game& game, const Profile& profile,
                              const EnumerationBudget& budget = {});

/// Path games: full-deviation LP. Matroid games: D1/D2 with true Δ.
bool brute_force_enforceable(const Game& game, const Profile& profile,
                             const EnumerationBudget& budget = {});

/// Full-deviation LP test for any strategy space.
bool lp_enforceable(const Game& game, const Profile& profile, const EnumerationBudget& budget = {});

}  // namespace sepcs

#endif  // SEPCS_ORACLE_HPP
