#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sepcs/errors.hpp"
#include "sepcs/lp.hpp"
#include "sepcs/matroid_transform.hpp"
#include "sepcs/nsepa.hpp"
#include "sepcs/oracle.hpp"
#include "sepcs/protocol.hpp"
#include "support.hpp"

using namespace sepcs;
using sepcs::testing::R;

namespace {

// Two players, two facilities A=0 (cost 10) and B=1 (cost 3), no distances.
Game ufl_10_3() { return make_ufl_game({R(10), R(3)}, {{R(0), R(0)}, {R(0), R(0)}}); }

// One resource of cost 10; players 0 and 1 may use it or a private resource.
Game two_player_edge() {
  Game g;
  g.num_players = 2;
  g.num_resources = 3;
  g.cost = {CostFunction::fixed(R(10)), CostFunction::fixed(R(20)), CostFunction::fixed(R(20))};
  g.delay.assign(2, std::vector<Rational>(3, R(0)));
  g.spaces = {MatroidSpace{std::make_shared<const UniformMatroid>(ResourceSet{0, 1}, 1)},
              MatroidSpace{std::make_shared<const UniformMatroid>(ResourceSet{0, 2}, 1)}};
  g.validate();
  return g;
}

}  // namespace

TEST_CASE("case rule: equal occupancy uses the table") {
  Game g = two_player_edge();
  SharingTable t(Profile{{{0}, {0}}});
  t.set(0, 0, R(3));
  t.set(1, 0, R(7));
  t.finalize(g);
  SeparableProtocol p(g, t);
  CHECK(p.cost_share(g, PlayerSet(3), 0, 0) == R(3));
  CHECK(p.cost_share(g, PlayerSet(3), 1, 0) == R(7));
}

TEST_CASE("case rule: newcomer pays in full") {
  Game g = two_player_edge();
  SharingTable t(Profile{{{0}, {2}}});
  t.set(0, 0, R(10));
  t.set(1, 2, R(20));
  t.finalize(g);
  SeparableProtocol p(g, t);
  CHECK(p.cost_share(g, PlayerSet(3), 1, 0) == R(10));
  CHECK(p.cost_share(g, PlayerSet(3), 0, 0) == R(0));
  CHECK(p.cost_share(g, Profile{{{0}, {0}}}, 0, 0) == R(0));
}

TEST_CASE("case rule: strict subset charges its smallest member") {
  Game g = two_player_edge();
  SharingTable t(Profile{{{0}, {0}}});
  t.set(0, 0, R(3));
  t.set(1, 0, R(7));
  t.finalize(g);
  SeparableProtocol p(g, t);
  CHECK(p.cost_share(g, PlayerSet::single(1), 1, 0) == R(10));
  CHECK(p.cost_share(g, PlayerSet::single(0), 0, 0) == R(10));
  CHECK(p.cost_share(g, PlayerSet::single(0), 1, 0) == R(0));
}

TEST_CASE("budget balance") {
  Game g = two_player_edge();
  SharingTable t(Profile{{{0}, {0}}});
  t.set(0, 0, R(3));
  t.set(1, 0, R(7));
  t.finalize(g);
  SeparableProtocol ok(g, t);
  CHECK(verify_budget_balance(g, ok, t.base()).ok);

  t.set(1, 0, R(6));
  CHECK_THROWS_AS(t.finalize(g), NotBudgetBalanced);
  SeparableProtocol short_one(g, t);
  auto report = verify_budget_balance(g, short_one, t.base());
  CHECK_FALSE(report.ok);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].resource == 0);
  CHECK(report.violations[0].paid == R(9));
  CHECK(report.violations[0].required == R(10));
}

TEST_CASE("shares outside the base are refused") {
  Game g = two_player_edge();
  SharingTable t(Profile{{{0}, {2}}});
  CHECK_THROWS_AS(t.set(0, 1, R(1)), InputError);
  CHECK_THROWS_AS(t.set(0, 0, R(-1)), InputError);
}

TEST_CASE("fixture: LP(OPT) shares leave an edge underpaid") {
  auto [game, opt] = counterexample_fixture();
  auto dev = full_deviation_lp(game, opt);
  auto sol = solve(dev.lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  SharingTable t(opt);
  for (std::size_t k = 0; k < dev.variables.size(); ++k) {
    t.set(dev.variables[k].first, dev.variables[k].second, sol.values[k]);
  }
  CHECK_THROWS_AS(t.finalize(game), NotBudgetBalanced);
  SeparableProtocol p(game, t);
  CHECK_FALSE(verify_budget_balance(game, p, opt).ok);
  // The shares are still stable: no player gains by deviating.
  CHECK(verify_pne(game, p).ok);
  Rational total(0);
  for (Player i = 0; i < 3; ++i) total += private_cost(game, p, opt, i);
  CHECK(total <= R(339));
}

TEST_CASE("verify_pne finds a constructed improvement") {
  Network net(2, false);
  net.add_edge(0, 1, R(5));
  net.add_edge(0, 1, R(3));
  Game g = make_path_game(net, {{0, 1}});
  SharingTable t(Profile{{{0}}});
  t.set(0, 0, R(5));
  t.finalize(g);
  auto report = verify_pne(g, SeparableProtocol(g, t));
  CHECK_FALSE(report.ok);
  REQUIRE(report.improving);
  CHECK(report.improving->player == 0);
  CHECK(report.improving->strategy == ResourceSet{1});
  CHECK(report.improving->old_cost == R(5));
  CHECK(report.improving->new_cost == R(3));
  CHECK_FALSE(sepcs::testing::exhaustive_pne(g, SeparableProtocol(g, t)));
}

TEST_CASE("verify_pne accepts a lone player on a shortest path") {
  Network net(3, false);
  net.add_edge(0, 1, R(2));
  net.add_edge(1, 2, R(2));
  net.add_edge(0, 2, R(5));
  Game g = make_path_game(net, {{0, 2}}, {{R(0), R(1), R(0)}});
  SharingTable t(Profile{{{0, 1}}});
  t.set(0, 0, R(2));
  t.set(0, 1, R(2));
  t.finalize(g);
  SeparableProtocol p(g, t);
  CHECK(verify_pne(g, p).ok);
  CHECK(sepcs::testing::exhaustive_pne(g, p));
  CHECK(private_cost(g, p, t.base(), 0) == R(5));
}

TEST_CASE("separability") {
  Game g = ufl_10_3();
  SharingTable t(Profile{{{1}, {1}}});
  t.set(0, 1, R(3));
  t.finalize(g);
  SeparableProtocol p(g, t);
  CHECK(verify_separability_bruteforce(g, p));
  CHECK(verify_separability_bruteforce(g, fair_share(g)));

  // Charging by the whole profile breaks separability: with three facilities
  // player 0 alone on A is seen with player 1 on B or on C.
  Game three = make_ufl_game({R(10), R(3), R(4)}, {{R(0), R(0), R(0)}, {R(0), R(0), R(0)}});
  ShareFunction by_profile = [&](const Profile& s, Player i, Resource e) {
    std::int64_t h = 0;
    for (const auto& c : s.choice) h = h * 3 + c[0];
    return i == 0 && e == 0 ? Rational(h) : Rational(0);
  };
  CHECK_FALSE(verify_separability_bruteforce(three, by_profile));
  CHECK(verify_separability_bruteforce(three, fair_share(three)));
  CHECK_THROWS_AS(verify_separability_bruteforce(g, p, 3), TooLarge);
}

TEST_CASE("UFL 2x2 case-rule shares depend on occupancy only") {
  Game g = ufl_10_3();
  SharingTable t(Profile{{{1}, {1}}});
  t.set(0, 1, R(1));
  t.set(1, 1, R(2));
  t.finalize(g);
  SeparableProtocol p(g, t);
  std::vector<Profile> all;
  for (Resource a : {0, 1}) {
    for (Resource b : {0, 1}) all.push_back(Profile{{{a}, {b}}});
  }
  for (const auto& x : all) {
    for (const auto& y : all) {
      auto ux = occupancy(g, x);
      auto uy = occupancy(g, y);
      for (Resource e = 0; e < 2; ++e) {
        if (ux[e] != uy[e]) continue;
        for (Player i = 0; i < 2; ++i) CHECK(p.cost_share(g, x, i, e) == p.cost_share(g, y, i, e));
      }
    }
  }
  // On the base itself the table applies; off the base one player pays all.
  CHECK(p.cost_share(g, Profile{{{1}, {1}}}, 1, 1) == R(2));
  CHECK(p.cost_share(g, Profile{{{0}, {1}}}, 1, 1) == R(3));
  CHECK(p.cost_share(g, Profile{{{0}, {0}}}, 0, 0) == R(10));
}

TEST_CASE("budget-balanced shares add up to the total cost") {
  Game g = two_player_edge();
  g.delay = {{R(1), R(0), R(0)}, {R(2), R(0), R(0)}};
  SharingTable t(Profile{{{0}, {0}}});
  t.set(0, 0, R(4));
  t.set(1, 0, R(6));
  t.finalize(g);
  SeparableProtocol p(g, t);
  CHECK(private_cost(g, p, t.base(), 0) + private_cost(g, p, t.base(), 1) == total_cost(g, t.base()));
  CHECK(sepcs::testing::shares_balance(g, p));
}
