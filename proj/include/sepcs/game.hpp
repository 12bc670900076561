#ifndef SEPCS_GAME_HPP
#define SEPCS_GAME_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "sepcs/matroid.hpp"
#include "sepcs/network.hpp"
#include "sepcs/player_set.hpp"
#include "sepcs/rational.hpp"

namespace sepcs {

/// Shareable cost c_e(S) of one resource as a function of its user set.
/// Empty user sets always cost 0.
///
/// Fixed costs charge the same value for every nonempty S. Subadditive costs
/// wrap an arbitrary oracle; every answer is cached and checked against all
/// previously cached answers for monotonicity and subadditivity, raising
/// InvalidCostOracle on the first inconsistency observed.
class CostFunction {
 public:
  using Oracle = std::function<Rational(PlayerSet)>;

  CostFunction() = default;

  static CostFunction fixed(Rational value);
  static CostFunction subadditive(Oracle oracle);
  /// Subadditive cost given by an explicit table over nonempty player sets.
  static CostFunction table(std::map<PlayerSet, Rational> values);

  bool is_fixed() const { return !state_; }
  const Rational& fixed_value() const { return fixed_; }
  /// Non-null for table-backed costs (used for serialization).
  const std::map<PlayerSet, Rational>* table_values() const;

  Rational operator()(PlayerSet users) const;

 private:
  struct OracleState;
  Rational fixed_;
  std::shared_ptr<OracleState> state_;
};

struct MatroidSpace {
  std::shared_ptr<const Matroid> matroid;
};

/// (source, terminal) path strategies in the game's network. In directed
/// networks paths run from source to terminal.
struct PathSpace {
  Vertex source = 0;
  Vertex terminal = 0;
};

using StrategySpace = std::variant<MatroidSpace, PathSpace>;

/// Cost-sharing game with delays. Players are 0..n-1 and resources 0..m-1;
/// the numeric order is the global tie-breaking order everywhere. When a
/// network is attached, resource e is network edge e.
struct Game {
  int num_players = 0;
  int num_resources = 0;
  std::vector<CostFunction> cost;
  std::vector<std::vector<Rational>> delay;  // delay[i][e]
  std::vector<StrategySpace> spaces;
  std::optional<Network> graph;

  Rational cost_of(Resource e, PlayerSet users) const { return cost[e](users); }
  const Rational& d(Player i, Resource e) const { return delay[i][e]; }
  /// c_e({i}) + d_{i,e}
  Rational standalone_cost(Player i, Resource e) const {
    return cost_of(e, PlayerSet::single(i)) + d(i, e);
  }
  bool all_fixed() const;
  bool zero_delays() const;
  bool is_path_game() const;
  bool is_matroid_game() const;

  /// Throws InputError on shape or sign problems.
  void validate() const;
};

/// Builds a connection game over `net` with fixed edge costs. `delays` may be
/// empty (all zero).
Game make_path_game(Network net, const std::vector<std::pair<Vertex, Vertex>>& pairs,
                    std::vector<std::vector<Rational>> delays = {});

/// One strategy (resource set) per player.
struct Profile {
  std::vector<ResourceSet> choice;

  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

/// N_e(S) for every resource.
std::vector<PlayerSet> occupancy(const Game& game, const Profile& profile);

bool is_feasible_strategy(const Game& game, Player i, const ResourceSet& strategy);
/// Throws InfeasibleProfile naming the first offending player.
void check_profile(const Game& game, const Profile& profile);

/// C(S): shareable cost of every used resource at its occupancy plus all delays.
Rational total_cost(const Game& game, const Profile& profile);

/// Ordered path of a path-space player. Throws InfeasibleProfile.
Path player_path(const Game& game, const Profile& profile, Player i);

}  // namespace sepcs

#endif  // SEPCS_GAME_HPP
