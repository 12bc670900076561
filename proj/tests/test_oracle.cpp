#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sepcs/errors.hpp"
#include "sepcs/matroid_transform.hpp"
#include "sepcs/nsepa.hpp"
#include "sepcs/oracle.hpp"
#include "support.hpp"

using namespace sepcs;
using sepcs::testing::R;

TEST_CASE("strategies of a rank-1 uniform matroid") {
  Game g = make_ufl_game({R(1), R(2)}, {{R(0), R(0)}});
  CHECK(enumerate_strategies(g, 0) == std::vector<ResourceSet>{{0}, {1}});
}

TEST_CASE("strategies of a triangle") {
  Network net(3, false);
  net.add_edge(0, 1, R(1));
  net.add_edge(1, 2, R(1));
  net.add_edge(0, 2, R(1));
  Game g = make_path_game(net, {{0, 2}});
  auto s = enumerate_strategies(g, 0);
  CHECK(s.size() == 2);
  CHECK(std::find(s.begin(), s.end(), ResourceSet{2}) != s.end());
  CHECK(std::find(s.begin(), s.end(), ResourceSet{0, 1}) != s.end());
}

TEST_CASE("fixture strategies agree under reversed adjacency") {
  auto [game, opt] = counterexample_fixture();
  for (Player i = 0; i < 3; ++i) {
    auto fwd = enumerate_strategies(game, i);
    auto rev = enumerate_strategies(game, i, {}, true);
    CHECK(fwd.size() == rev.size());
    std::sort(fwd.begin(), fwd.end());
    std::sort(rev.begin(), rev.end());
    CHECK(fwd == rev);
    CHECK(std::find(fwd.begin(), fwd.end(), opt.choice[i]) != fwd.end());
  }
}

TEST_CASE("budgets are enforced") {
  auto [game, opt] = counterexample_fixture();
  EnumerationBudget tiny;
  tiny.max_paths_per_player = 2;
  CHECK_THROWS_AS(enumerate_strategies(game, 1, tiny), TooManyPaths);
  EnumerationBudget few;
  few.max_profiles = 10;
  CHECK_THROWS_AS(brute_force_optimum(game, few), TooLarge);
}

TEST_CASE("fixture optimum is the solid forest") {
  auto [game, opt] = counterexample_fixture();
  auto r = brute_force_optimum(game);
  CHECK(r.cost == R(346));
  CHECK(r.unique);
  CHECK(occupancy(game, r.profile) == occupancy(game, opt));
}

TEST_CASE("UFL optimum") {
  Game g = make_ufl_game({R(10), R(3)}, {{R(0), R(0)}, {R(0), R(0)}});
  auto r = brute_force_optimum(g);
  CHECK(r.profile == Profile{{{1}, {1}}});
  CHECK(r.cost == R(3));
  CHECK(r.profiles == 4);
  CHECK(r.unique);
}

TEST_CASE("single player optimum is a shortest path under c + d") {
  Network net(3, false);
  net.add_edge(0, 1, R(2));
  net.add_edge(1, 2, R(2));
  net.add_edge(0, 2, R(3));
  Game g = make_path_game(net, {{0, 2}}, {{R(0), R(0), R(2)}});
  auto r = brute_force_optimum(g);
  CHECK(r.profile == Profile{{{0, 1}}});
  CHECK(r.cost == R(4));
  CHECK(brute_force_enforceable(g, r.profile));
  CHECK_FALSE(brute_force_enforceable(g, Profile{{{2}}}));
}

TEST_CASE("ties are reported") {
  Game g = make_ufl_game({R(4), R(4)}, {{R(0), R(0)}});
  auto r = brute_force_optimum(g);
  CHECK_FALSE(r.unique);
  CHECK(r.profile == Profile{{{0}}});
}

TEST_CASE("fixture optimum is not enforceable") {
  auto [game, opt] = counterexample_fixture();
  CHECK_FALSE(brute_force_enforceable(game, opt));
  auto dev = full_deviation_lp(game, opt);
  CHECK(dev.target == R(346));
}

TEST_CASE("matroid games use the true-cost conditions") {
  Game g = make_ufl_game({R(10), R(3)}, {{R(0), R(0)}, {R(0), R(0)}});
  CHECK(brute_force_enforceable(g, Profile{{{1}, {1}}}));
  CHECK_FALSE(brute_force_enforceable(g, Profile{{{0}, {0}}}));
  CHECK(lp_enforceable(g, Profile{{{1}, {1}}}));
  CHECK_FALSE(lp_enforceable(g, Profile{{{0}, {0}}}));
}

TEST_CASE("profile enumeration order") {
  Game g = make_ufl_game({R(1), R(1)}, {{R(0), R(0)}, {R(0), R(0)}});
  std::vector<Profile> seen;
  for_each_profile(g, {}, [&](const Profile& p) { seen.push_back(p); });
  REQUIRE(seen.size() == 4);
  CHECK(seen[0] == Profile{{{0}, {0}}});
  CHECK(seen[1] == Profile{{{0}, {1}}});
  CHECK(seen[3] == Profile{{{1}, {1}}});
}
