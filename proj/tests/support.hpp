// Shared helpers for the test binaries.
#ifndef SEPCS_TESTS_SUPPORT_HPP
#define SEPCS_TESTS_SUPPORT_HPP

#include <vector>

#include "sepcs/game.hpp"
#include "sepcs/oracle.hpp"
#include "sepcs/protocol.hpp"

namespace sepcs::testing {

inline Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

/// Exhaustive unilateral-deviation check: evaluates the private cost of every
/// alternative strategy through the protocol's case rule. Independent of the
/// best-response shortcut inside verify_pne.
inline bool exhaustive_pne(const Game& game, const SeparableProtocol& protocol,
                           const EnumerationBudget& budget = {}) {
  const Profile& base = protocol.table().base();
  for (Player i = 0; i < game.num_players; ++i) {
    Rational current = private_cost(game, protocol, base, i);
    for (const auto& s : enumerate_strategies(game, i, budget)) {
      Profile moved = base;
      moved.choice[i] = s;
      if (private_cost(game, protocol, moved, i) < current) return false;
    }
  }
  return true;
}

/// Σ of shares over players on the base, resource by resource.
inline bool shares_balance(const Game& game, const SeparableProtocol& protocol) {
  const Profile& base = protocol.table().base();
  auto users = occupancy(game, base);
  for (Resource e = 0; e < game.num_resources; ++e) {
    Rational paid(0);
    for (Player i = 0; i < game.num_players; ++i) paid += protocol.table().share(i, e);
    if (paid != (users[e].empty() ? Rational(0) : game.cost_of(e, users[e]))) return false;
  }
  return true;
}

}  // namespace sepcs::testing

#endif  // SEPCS_TESTS_SUPPORT_HPP
