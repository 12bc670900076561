#ifndef SEPCS_CONNECT_FIXED_HPP
#define SEPCS_CONNECT_FIXED_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sepcs/game.hpp"
#include "sepcs/protocol.hpp"
#include "sepcs/trace.hpp"

namespace sepcs {

// Single-source connection games with fixed costs and no delays. Every
// player i holds a PathSpace{s, t_i} with the same source s; in directed
// networks paths run from s to t_i.

/// Throws Unsupported unless the game is a single-source path game with fixed
/// costs and zero delays. Returns the common source (0 for empty games).
Vertex common_source(const Game& game);

/// Shortest-path tree (by edge cost) inside the union of the input paths,
/// rooted at the source; every player gets its tree path.
Profile to_tree_profile(const Game& game, const Profile& profile);

/// Auxiliary edge of the tree: a shortest G-path from `upper` (toward the
/// source) to `lower`, bought completely by `payer`.
struct AuxEdge {
  Vertex upper = -1;
  Vertex lower = -1;
  Path path;
  Player payer = -1;
};

struct Contribution {
  Rational delta;
  std::optional<Vertex> deviation_vertex;  // set iff the best response avoids e
  std::optional<Vertex> upper_vertex;      // where that response rejoins the path
};

/// Working state of one bottom-up pass: the tree over G's vertices whose
/// links are tree edges of G or auxiliary edges, open/closed labels and the
/// per-player costs ĉ.
class AuxiliaryGraph {
 public:
  /// `tree_profile` must be a tree profile (see to_tree_profile).
  AuxiliaryGraph(const Game& game, const Profile& tree_profile);

  Vertex source() const { return source_; }
  /// Open tree edges in processing order (deepest child first).
  std::vector<EdgeId> open_edges_bottom_up() const;
  bool is_open(EdgeId e) const { return state_[e] == kOpen; }
  bool is_closed(EdgeId e) const { return state_[e] == kClosed; }
  PlayerSet users(EdgeId e) const;
  Rational share(EdgeId e, Player i) const;

  /// Maximum contribution of player i to the open edge e: the increase of
  /// i's cheapest path cost when e goes from 0 to c_e. Staying wins ties.
  Contribution max_contribution(Player i, EdgeId e) const;

  /// Processes one open edge; returns true if it closed, false if the tree
  /// was rebuilt around it.
  bool process(EdgeId e, Trace* trace = nullptr);

  /// Cost of all tree edges plus all auxiliary edges in the tree.
  Rational tree_cost() const;
  std::vector<AuxEdge> aux_edges() const;
  int rehangs() const { return rehangs_; }
  int closes() const { return closes_; }
  const std::vector<std::pair<Rational, Rational>>& rehang_costs() const { return rehang_costs_; }

  /// Every auxiliary edge is paid in full by one player who uses it; the
  /// others riding on it pay nothing.
  bool aux_single_payer() const;

  /// Replaces auxiliary edges by their G-paths (loop-erased) and assigns
  /// shares: tree edges keep ĉ, then in player order every edge of an
  /// auxiliary path a player pays for is charged fully to that player unless
  /// someone already pays for it. The table is not finalized.
  std::pair<Profile, SharingTable> expand_and_assign() const;

 private:
  enum : char { kNone = 0, kOpen = 1, kClosed = 2 };
  struct Link {
    bool aux = false;
    int id = -1;  // edge id or aux index
    Vertex parent = -1;
  };
  struct PlayerPath {
    std::vector<Vertex> vertices;  // source first
    std::vector<Link> links;       // links[k] joins vertices[k] and vertices[k+1]
  };

  PlayerPath player_path(Player i) const;
  void prune();
  Rational link_cost(Player i, const Link& link, EdgeId restored) const;
  const ShortestPathTree& distances_from(Vertex u) const;

  const Game& game_;
  const Network& net_;
  Vertex source_ = 0;
  std::vector<Vertex> terminal_;
  std::vector<std::optional<Link>> up_;
  std::vector<int> bfs_;
  std::vector<char> state_;
  std::map<std::pair<EdgeId, Player>, Rational> share_;
  std::vector<AuxEdge> aux_;
  std::vector<bool> aux_alive_;
  std::vector<Rational> weight_;
  mutable std::map<Vertex, ShortestPathTree> dist_cache_;
  int rehangs_ = 0;
  int closes_ = 0;
  std::vector<std::pair<Rational, Rational>> rehang_costs_;
};

struct SingleSourceStats {
  int passes = 0;
  int closes = 0;
  int rehangs = 0;
  /// Tree cost before and after every tree replacement.
  std::vector<std::pair<Rational, Rational>> rehang_costs;
  /// Every auxiliary edge of every pass's final tree had a single payer.
  bool aux_single_payer = true;
  int final_aux_edges = 0;
};

struct SingleSourceResult {
  Profile profile;
  SeparableProtocol protocol;
  SingleSourceStats stats;
};

/// Bottom-up sharing with tree replacement on the auxiliary graph, followed
/// by expansion into G. When the expanded profile of a pass is not an
/// equilibrium in G (a co-rider may use part of an auxiliary path for free),
/// the pass is repeated on that cheaper profile; a pass without replacements
/// always yields an equilibrium. Costs never increase.
SingleSourceResult transform_single_source(const Game& game, const Profile& profile, Trace* trace = nullptr);

/// Result of adding a common source to a multi-source game with delays.
struct MultiSourceReduction {
  Game game;
  Vertex source = -1;
  std::vector<EdgeId> link;  // link[i]: edge from the new source to s_i
  Rational big_m;
};

/// New vertex s plus edges s-s_i of cost 0; d_{i,link_i} = 0 and d_{j,link_i}
/// = M with M = 1 + Σ c + Σ d. Costs must be fixed.
MultiSourceReduction reduce_multi_source(const Game& game);
/// Maps a profile of the reduced game back by dropping the link edges.
Profile restrict_reduced_profile(const MultiSourceReduction& r, const Profile& profile);

/// Group connection in a directed network: player i must reach any vertex of
/// groups[i] from s. Adds one super-terminal per player with zero-cost edges
/// from every group vertex. Throws Unsupported for undirected networks.
Game make_group_game(const Network& net, Vertex source, const std::vector<std::vector<Vertex>>& groups);

/// Initial tree: MST of the metric closure over the source and terminals,
/// expanded and pruned (a 2-approximation); directed networks use the union
/// of shortest source paths instead. Throws Disconnected.
Profile approx_steiner_tree(const Game& game);

}  // namespace sepcs

#endif  // SEPCS_CONNECT_FIXED_HPP
