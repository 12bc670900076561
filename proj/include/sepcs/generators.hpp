#ifndef SEPCS_GENERATORS_HPP
#define SEPCS_GENERATORS_HPP

#include <cstdint>
#include <random>

#include "sepcs/game.hpp"

namespace sepcs {

// Seeded instance generators. All draws are integers from std::mt19937_64,
// so an instance is reproducible from its seed alone.

using Rng = std::mt19937_64;

/// Integer in [lo, hi].
int uniform_int(Rng& rng, int lo, int hi);

/// Facility costs uniform in [1, 20], client distances uniform in [0, 10].
Game random_ufl(Rng& rng, int players, int facilities);

enum class MatroidKind { kUniform, kPartition, kGraphic };

struct MatroidGenOptions {
  int players = 3;            // n
  int resources = 6;          // m
  MatroidKind kind = MatroidKind::kUniform;
  bool subadditive = false;   // coverage-function tables instead of fixed costs
  int max_cost = 20;          // fixed costs in [1, max_cost]
  int max_delay = 5;          // delays in [0, max_delay]
};

/// Every player gets its own matroid over a random nonempty ground subset:
///   uniform    rank in [1, |ground|];
///   partition  ground split into 1..3 blocks, quota in [1, |block|];
///   graphic    resources are edges of a random multigraph on 2..4 nodes.
/// Subadditive costs are coverage functions: every player covers 1..3 of
/// five weighted items (weights in [1, max_cost/2]), c(S) is the weight of
/// the union. Such tables are monotone and subadditive.
Game random_matroid_game(Rng& rng, const MatroidGenOptions& options);

/// A uniformly random basis per player (random-order greedy).
Profile random_bases(const Game& game, Rng& rng);

struct TreeGenOptions {
  int vertices = 8;
  int players = 3;
  bool directed = false;
  int max_cost = 30;
};

/// Random spanning tree from vertex 0 (each new vertex attaches to an
/// earlier one, directed away from 0) plus up to 2|V| extra edges; edge
/// costs in [1, max_cost]. Players have source 0 and terminals in [1, |V|-1]
/// (or 0 when |V| = 1). Delays are zero.
Game random_single_source(Rng& rng, const TreeGenOptions& options);

struct SpGenOptions {
  int max_edges = 10;
  int players = 2;
  int max_cost = 20;
  int max_delay = 4;  // 0 disables delays
};

/// Two-terminal series-parallel graph grown from one s-t edge (s = 0,
/// t = 1) by subdividing (probability 1/2) or doubling a uniformly chosen
/// edge until it has between 2 and max_edges edges. All players connect
/// s to t. Costs in [1, max_cost]; each delay is 0 with probability 1/2,
/// otherwise uniform in [1, max_delay].
Game random_sp_game(Rng& rng, const SpGenOptions& options);

/// Path games: shortest paths under independent random weights in [1, 50]
/// per player. Matroid games: random_bases. Throws Disconnected.
Profile random_profile(const Game& game, Rng& rng);

}  // namespace sepcs

#endif  // SEPCS_GENERATORS_HPP
