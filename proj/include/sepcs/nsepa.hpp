#ifndef SEPCS_NSEPA_HPP
#define SEPCS_NSEPA_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sepcs/game.hpp"
#include "sepcs/lp.hpp"
#include "sepcs/oracle.hpp"
#include "sepcs/protocol.hpp"
#include "sepcs/trace.hpp"

namespace sepcs {

// Multi-terminal connection games with delays on undirected graphs.

using Pairs = std::vector<std::pair<Vertex, Vertex>>;

/// Edges lying on some s-t path: the union of the blocks on the s-t path of
/// the block-cut tree. Empty when s == t or t is unreachable.
std::vector<bool> player_subgraph(const Network& net, Vertex s, Vertex t);

struct IrredundantGraph {
  Network network;                   // same vertex ids, surviving edges only
  std::vector<EdgeId> original_edge;  // new edge id -> edge id in the input
  std::vector<bool> vertex_kept;
};

/// Cut-vertex pruning per player, then the union over players.
IrredundantGraph irredundant(const Network& net, const Pairs& pairs);

/// Two-terminal series-parallel test of every player's subgraph.
bool is_n_series_parallel(const Network& net, const Pairs& pairs);

struct Alternative {
  Player owner = -1;
  Path path;                       // from the earlier to the later path vertex
  std::vector<EdgeId> substituted;  // subpath of the owner's path it replaces
  Rational weight;                 // Σ (c_e + d_{i,e}) over path
};

/// Cheapest alternatives found by the detour search over G_i with weights
/// c_e + d_{i,e}. `path` runs from s_i to t_i. Throws NotSeriesParallel.
std::vector<Alternative> alternatives(const Game& game, Player i, const Path& path);

enum class LpMode { kAlternatives, kFullPaths };

/// LP(P): one variable per (i, e ∈ P_i), capacity rows, one NE row per
/// alternative (or per other simple path in full mode).
DeviationLp build_lp(const Game& game, const Profile& profile, LpMode mode,
                     const EnumerationBudget& budget = {});

struct EnforceabilityReport {
  bool enforceable = false;
  LpStatus status = LpStatus::kInfeasible;
  Rational lp_value;
  Rational target;  // Σ of the used edges' costs
  std::optional<SharingTable> shares;  // finalized, only when enforceable
};

EnforceabilityReport is_enforceable(const Game& game, const Profile& profile, LpMode mode,
                                    const EnumerationBudget& budget = {});

/// Among paths that leave `path` on one arc containing f and are tight for
/// the given shares, the one substituting the fewest edges (ties: smallest
/// edge sequence). Throws NoTightAlternative.
Alternative smallest_tight_alternative(const Game& game, Player i, const Path& path,
                                       const std::map<EdgeId, Rational>& share, EdgeId f);

struct NsepaStats {
  bool input_enforceable = false;
  int repairs = 0;  // best-response moves needed before LP(P) is feasible
  int phases = 0;
  int substitutions = 0;
  Rational lp_value;
};

struct NsepaResult {
  Profile profile;
  SeparableProtocol protocol;
  NsepaStats stats;
};

/// LP(P), then phases of substituting unpaid edges by smallest tight
/// alternatives, then trimming overpaid edges. Throws NotSeriesParallel,
/// Unsupported (directed network or non-fixed costs).
NsepaResult nsepa_transform(const Game& game, const Profile& profile, Trace* trace = nullptr);

/// Three-player instance on {s1,t1,s2,t2,s3,t3,a} whose unique optimal
/// Steiner forest (cost 346) is not enforceable.
std::pair<Game, Profile> counterexample_fixture();

}  // namespace sepcs

#endif  // SEPCS_NSEPA_HPP
