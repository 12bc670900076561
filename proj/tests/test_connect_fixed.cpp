#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <numeric>
#include <set>

#include "sepcs/connect_fixed.hpp"
#include "sepcs/errors.hpp"
#include "sepcs/generators.hpp"
#include "sepcs/oracle.hpp"
#include "support.hpp"

using namespace sepcs;
using sepcs::testing::R;

namespace {

ResourceSet sorted(std::vector<EdgeId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::set<EdgeId> used_edges(const Profile& p) {
  std::set<EdgeId> out;
  for (const auto& s : p.choice) out.insert(s.begin(), s.end());
  return out;
}

// Cheapest edge subset connecting every terminal to the source.
Rational steiner_by_subsets(const Game& g) {
  const Network& net = *g.graph;
  const int m = net.num_edges();
  std::optional<Rational> best;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    Rational c(0);
    std::vector<int> comp(net.num_vertices());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (int e = 0; e < m; ++e) {
      if ((mask >> e & 1u) == 0) continue;
      c += net.edge(e).cost;
      comp[find(net.edge(e).u)] = find(net.edge(e).v);
    }
    if (best && c >= *best) continue;
    bool ok = true;
    for (Player i = 0; i < g.num_players; ++i) {
      const auto& ps = std::get<PathSpace>(g.spaces[i]);
      ok = ok && find(ps.source) == find(ps.terminal);
    }
    if (ok) best = c;
  }
  return *best;
}

}  // namespace

TEST_CASE("tree profile: cycle collapses to a tree") {
  Network net(3, false);
  net.add_edge(0, 1, R(2));  // s-a
  net.add_edge(1, 2, R(4));  // a-b
  net.add_edge(0, 2, R(4));  // s-b
  Game g = make_path_game(net, {{0, 1}, {0, 2}});
  Profile p{{{1, 2}, {0, 1}}};
  CHECK(total_cost(g, p) == R(10));
  Profile t = to_tree_profile(g, p);
  CHECK(t.choice[0] == ResourceSet{0});
  CHECK(t.choice[1] == ResourceSet{2});
  CHECK(total_cost(g, t) == R(6));
}

TEST_CASE("tree profile: trees and single paths are unchanged") {
  Network net(4, false);
  net.add_edge(0, 1, R(1));
  net.add_edge(1, 2, R(1));
  net.add_edge(1, 3, R(1));
  net.add_edge(0, 3, R(5));
  Game g = make_path_game(net, {{0, 2}, {0, 3}});
  Profile p{{{0, 1}, {0, 2}}};
  CHECK(to_tree_profile(g, p) == p);
  Game one = make_path_game(net, {{0, 2}});
  CHECK(to_tree_profile(one, Profile{{{0, 1}}}) == Profile{{{0, 1}}});
}

TEST_CASE("preconditions") {
  Network net(3, false);
  net.add_edge(0, 1, R(1));
  net.add_edge(1, 2, R(1));
  CHECK_THROWS_AS(common_source(make_path_game(net, {{0, 1}, {2, 1}})), Unsupported);
  CHECK_THROWS_AS(common_source(make_path_game(net, {{0, 1}}, {{R(1), R(0)}})), Unsupported);
  CHECK(common_source(make_path_game(net, {{2, 0}, {2, 1}})) == 2);

  Network split(3, false);
  split.add_edge(0, 1, R(1));
  CHECK_THROWS_AS(approx_steiner_tree(make_path_game(split, {{0, 2}})), Disconnected);
}

TEST_CASE("max contribution") {
  Network net(2, false);
  net.add_edge(0, 1, R(10));
  Game lone = make_path_game(net, {{0, 1}});
  AuxiliaryGraph a(lone, Profile{{{0}}});
  auto c = a.max_contribution(0, 0);
  CHECK(c.delta == R(10));
  CHECK_FALSE(c.deviation_vertex);

  net.add_edge(0, 1, R(4));
  Game bypass = make_path_game(net, {{0, 1}});
  AuxiliaryGraph b(bypass, Profile{{{0}}});
  auto d = b.max_contribution(0, 0);
  CHECK(d.delta == R(4));
  REQUIRE(d.deviation_vertex);
  CHECK(*d.deviation_vertex == 1);
  CHECK(*d.upper_vertex == 0);

  Network tie(2, false);
  tie.add_edge(0, 1, R(10));
  tie.add_edge(0, 1, R(10));
  Game tied = make_path_game(tie, {{0, 1}});
  AuxiliaryGraph t(tied, Profile{{{0}}});
  auto s = t.max_contribution(0, 0);
  CHECK(s.delta == R(10));
  CHECK_FALSE(s.deviation_vertex);
}

TEST_CASE("star: everyone pays their own leaf") {
  Network net(4, false);
  net.add_edge(0, 1, R(3));
  net.add_edge(0, 2, R(5));
  net.add_edge(0, 3, R(7));
  Game g = make_path_game(net, {{0, 1}, {0, 2}, {0, 3}});
  Profile p{{{0}, {1}, {2}}};
  auto r = transform_single_source(g, p);
  CHECK(r.profile == p);
  CHECK(r.protocol.table().share(0, 0) == R(3));
  CHECK(r.protocol.table().share(1, 1) == R(5));
  CHECK(r.protocol.table().share(2, 2) == R(7));
  CHECK(r.stats.rehangs == 0);
}

TEST_CASE("shared trunk is dropped for private bypasses") {
  Network net(4, true);
  net.add_edge(0, 1, R(10));  // trunk s->h
  net.add_edge(1, 2, R(0));
  net.add_edge(1, 3, R(0));
  net.add_edge(0, 2, R(4));  // bypasses
  net.add_edge(0, 3, R(4));
  Game g = make_path_game(net, {{0, 2}, {0, 3}});
  Profile p{{{0, 1}, {0, 2}}};
  Trace trace;
  auto r = transform_single_source(g, p, &trace);
  CHECK(r.profile == Profile{{{3}, {4}}});
  CHECK(total_cost(g, r.profile) == R(8));
  CHECK(total_cost(g, r.profile) < total_cost(g, p));
  CHECK(brute_force_optimum(g).cost == R(8));
  CHECK(r.protocol.table().share(0, 3) == R(4));
  CHECK(r.protocol.table().share(1, 4) == R(4));
  CHECK(r.stats.rehangs >= 1);
  for (const auto& [before, after] : r.stats.rehang_costs) CHECK(after < before);
  CHECK(verify_pne(g, r.protocol).ok);
  CHECK(sepcs::testing::exhaustive_pne(g, r.protocol));
  bool replaced = false;
  for (const auto& s : trace) replaced = replaced || s.type == "replace";
  CHECK(replaced);
}

TEST_CASE("undirected trunk: result is stable and no dearer") {
  Network net(4, false);
  net.add_edge(0, 1, R(10));
  net.add_edge(1, 2, R(1));
  net.add_edge(1, 3, R(1));
  net.add_edge(0, 2, R(5));
  net.add_edge(0, 3, R(5));
  Game g = make_path_game(net, {{0, 2}, {0, 3}});
  Profile p{{{0, 1}, {0, 2}}};
  auto r = transform_single_source(g, p);
  CHECK(total_cost(g, r.profile) <= R(12));
  CHECK(total_cost(g, r.profile) >= brute_force_optimum(g).cost);
  CHECK(verify_budget_balance(g, r.protocol, r.profile).ok);
  CHECK(sepcs::testing::exhaustive_pne(g, r.protocol));
  CHECK(brute_force_enforceable(g, r.profile));
}

TEST_CASE("expanded auxiliary paths are paid once") {
  // Both players leave the trunk through the same bypass edge 0-4.
  Network net(5, false);
  net.add_edge(0, 1, R(20));  // trunk
  net.add_edge(1, 2, R(1));
  net.add_edge(1, 3, R(1));
  net.add_edge(0, 4, R(3));
  net.add_edge(4, 2, R(2));
  net.add_edge(4, 3, R(2));
  Game g = make_path_game(net, {{0, 2}, {0, 3}});
  Profile p{{{0, 1}, {0, 2}}};
  auto r = transform_single_source(g, p);
  CHECK(total_cost(g, r.profile) < total_cost(g, p));
  CHECK(verify_budget_balance(g, r.protocol, r.profile).ok);
  CHECK(sepcs::testing::exhaustive_pne(g, r.protocol));
  auto users = occupancy(g, r.profile);
  for (Resource e = 0; e < g.num_resources; ++e) {
    int payers = 0;
    for (Player i = 0; i < 2; ++i) payers += r.protocol.table().share(i, e).is_zero() ? 0 : 1;
    if (users[e].size() > 0 && g.cost_of(e, users[e]) > R(0)) CHECK(payers >= 1);
  }
}

TEST_CASE("multi-source reduction") {
  Network net(3, false);
  net.add_edge(0, 1, R(2));
  net.add_edge(1, 2, R(3));
  Game one = make_path_game(net, {{0, 2}}, {{R(1), R(0)}});
  auto red = reduce_multi_source(one);
  CHECK(red.game.graph->num_edges() == 3);
  CHECK(red.game.delay[0][red.link[0]] == R(0));
  CHECK(brute_force_optimum(red.game).cost == brute_force_optimum(one).cost);

  Network five(5, false);
  five.add_edge(0, 2, R(4));
  five.add_edge(1, 2, R(3));
  five.add_edge(2, 3, R(5));
  five.add_edge(3, 4, R(2));
  five.add_edge(0, 4, R(9));
  five.add_edge(1, 3, R(6));
  Game two = make_path_game(five, {{0, 3}, {1, 4}}, {{R(0), R(0), R(1), R(0), R(2), R(0)},
                                                      {R(0), R(1), R(0), R(0), R(0), R(3)}});
  auto r2 = reduce_multi_source(two);
  CHECK(r2.big_m == R(1) + R(29) + R(7));
  CHECK(brute_force_optimum(r2.game).cost == brute_force_optimum(two).cost);
  int finite = 0;
  for_each_profile(r2.game, {}, [&](const Profile& q) {
    Rational c = total_cost(r2.game, q);
    if (c >= r2.big_m) return;
    ++finite;
    Profile back = restrict_reduced_profile(r2, q);
    CHECK(total_cost(two, back) == c);
    CHECK(lp_enforceable(two, back) == lp_enforceable(r2.game, q));
  });
  int original = 0;
  for_each_profile(two, {}, [&](const Profile&) { ++original; });
  CHECK(finite == original);
}

TEST_CASE("group game") {
  Network net(4, true);
  net.add_edge(0, 1, R(5));
  net.add_edge(0, 2, R(2));
  net.add_edge(2, 3, R(1));
  Game g = make_group_game(net, 0, {{1, 3}, {1}});
  CHECK(g.num_players == 2);
  CHECK(g.graph->num_vertices() == 6);
  auto opt = brute_force_optimum(g);
  CHECK(opt.cost == R(5));
  Game alone = make_group_game(net, 0, {{1, 3}});
  CHECK(brute_force_optimum(alone).cost == R(3));
  CHECK_THROWS_AS(make_group_game(Network(2, false), 0, {{1}}), Unsupported);
}

TEST_CASE("approximate Steiner trees") {
  Network net(4, false);
  net.add_edge(0, 1, R(2));
  net.add_edge(0, 2, R(2));
  net.add_edge(0, 3, R(2));
  net.add_edge(1, 2, R(3));
  net.add_edge(2, 3, R(3));
  Game star = make_path_game(net, {{0, 1}, {0, 2}, {0, 3}});
  Profile p = approx_steiner_tree(star);
  CHECK(total_cost(star, p) == R(6));

  Game trivial = make_path_game(net, {{0, 0}});
  CHECK(approx_steiner_tree(trivial).choice[0].empty());

  Rng rng(23);
  for (int it = 0; it < 40; ++it) {
    TreeGenOptions o;
    o.vertices = uniform_int(rng, 2, 10);
    o.players = uniform_int(rng, 1, 4);
    Game g = random_single_source(rng, o);
    if (g.graph->num_edges() > 14) continue;
    Profile a = approx_steiner_tree(g);
    check_profile(g, a);
    Rational opt = steiner_by_subsets(g);
    CHECK(total_cost(g, a) <= R(2) * opt);
    CHECK(total_cost(g, a) >= opt);
  }
}

TEST_CASE("random single-source instances end to end") {
  Rng rng(99);
  for (int it = 0; it < 60; ++it) {
    TreeGenOptions o;
    o.vertices = uniform_int(rng, 2, 8);
    o.players = uniform_int(rng, 1, 3);
    o.directed = it % 3 == 0;
    Game g = random_single_source(rng, o);
    Profile p = it % 2 == 0 ? random_profile(g, rng) : approx_steiner_tree(g);
    auto r = transform_single_source(g, p);
    CHECK(total_cost(g, r.profile) <= total_cost(g, p));
    CHECK(verify_budget_balance(g, r.protocol, r.profile).ok);
    CHECK(verify_pne(g, r.protocol).ok);
    CHECK(r.stats.aux_single_payer);
    for (const auto& [before, after] : r.stats.rehang_costs) CHECK(after < before);
    EnumerationBudget budget;
    budget.max_paths_per_player = 2000;
    try {
      CHECK(sepcs::testing::exhaustive_pne(g, r.protocol, budget));
    } catch (const BudgetExceeded&) {
    }
  }
}
