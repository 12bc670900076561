#ifndef SEPCS_MATROID_TRANSFORM_HPP
#define SEPCS_MATROID_TRANSFORM_HPP

#include <cstdint>
#include <vector>

#include "sepcs/game.hpp"
#include "sepcs/protocol.hpp"
#include "sepcs/trace.hpp"

namespace sepcs {

/// π[i][e] = c_e({i}) + d_{i,e}.
std::vector<std::vector<Rational>> virtual_costs(const Game& game);

/// Cheapest single-exchange alternative of player i for e ∈ B_i.
/// virtual_cost=false: min_f c_f(B_i+f-e, B_-i) + d_{i,f} (f = e included).
/// virtual_cost=true:  min_f π_i^f.
/// Throws NotInBasis if e ∉ B_i.
Rational deviation_cost(const Game& game, const Profile& profile, Player i, Resource e, bool virtual_cost);

enum class Condition { kD1, kD2 };

struct MatroidViolation {
  Condition condition;
  Resource resource;
  Player player;  // -1 for D2
};

struct MatroidCheck {
  bool ok = true;
  std::vector<MatroidViolation> violated;
};

/// D1: d_{i,e} <= Δ_i^e for every i and e ∈ B_i.
/// D2: c_e(B) <= Σ_{i∈N_e(B)} (Δ_i^e - d_{i,e}) for every used e.
MatroidCheck check_enforceable_matroid(const Game& game, const Profile& profile, bool virtual_cost);

struct MatroidTransformStats {
  std::int64_t packet_moves = 0;
  std::int64_t outer_iterations = 0;
  std::int64_t bound = 0;  // n * m * max rank
};

struct MatroidTransformResult {
  Profile profile;
  MatroidTransformStats stats;
};

/// Moves packets away from resources violating the virtual D1/D2 conditions
/// until none is left. Each move strictly lowers the packet's π value, the
/// move count never exceeds n*m*rk, and total cost never rises across a
/// delay move or a full run of the cost-violation loop (all asserted).
MatroidTransformResult transform_matroid(const Game& game, const Profile& profile, Trace* trace = nullptr);

/// Water-fills c_e(B) over N_e(B) in player order with caps Δ_i^e - d_{i,e}.
/// Throws NotEnforceable if D1/D2 fail with true deviation costs.
SeparableProtocol build_matroid_protocol(const Game& game, const Profile& profile);

/// Uncapacitated facility location: client i picks one facility and pays
/// distance[i][f] as delay.
Game make_ufl_game(const std::vector<Rational>& facility_cost,
                   const std::vector<std::vector<Rational>>& distance);

/// Minimum-index basis of every player's matroid (greedy over resource ids).
Profile first_bases(const Game& game);

}  // namespace sepcs

#endif  // SEPCS_MATROID_TRANSFORM_HPP
