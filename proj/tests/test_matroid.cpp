#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sepcs/errors.hpp"
#include "sepcs/generators.hpp"
#include "sepcs/matroid_transform.hpp"
#include "sepcs/oracle.hpp"
#include "support.hpp"

using namespace sepcs;
using sepcs::testing::R;

namespace {

Game ufl_10_3() { return make_ufl_game({R(10), R(3)}, {{R(0), R(0)}, {R(0), R(0)}}); }

ResourceSet enumerate_exchanges(const Matroid& m, const ResourceSet& basis, Resource e) {
  ResourceSet out;
  for (Resource f : m.ground()) {
    ResourceSet s;
    for (Resource r : basis) {
      if (r != e) s.push_back(r);
    }
    if (contains(s, f)) continue;
    s.push_back(f);
    std::sort(s.begin(), s.end());
    if (m.is_basis(s)) out.push_back(f);
  }
  return out;
}

}  // namespace

TEST_CASE("exchange candidates") {
  UniformMatroid rank1({0, 1}, 1);
  CHECK(exchange_candidates(rank1, {0}, 0) == ResourceSet{0, 1});

  GraphicMatroid triangle({0, 1, 2}, {{0, 1}, {1, 2}, {0, 2}});
  for (const ResourceSet& b : {ResourceSet{0, 1}, ResourceSet{0, 2}, ResourceSet{1, 2}}) {
    for (Resource e : b) CHECK(exchange_candidates(triangle, b, e) == enumerate_exchanges(triangle, b, e));
  }
  // Two parallel edges and a third edge: the parallel one is not a partner.
  GraphicMatroid multi({0, 1, 2}, {{0, 1}, {0, 1}, {1, 2}});
  CHECK(exchange_candidates(multi, {0, 2}, 2) == ResourceSet{2});
  CHECK(exchange_candidates(multi, {0, 2}, 0) == ResourceSet{0, 1});

  PartitionMatroid slots({{0, 1}, {2, 3}}, {1, 1});
  CHECK(exchange_candidates(slots, {0, 2}, 2) == ResourceSet{2, 3});
  CHECK_THROWS_AS(exchange_candidates(slots, {0, 1}, 0), NotABasis);
  CHECK_THROWS_AS(exchange_candidates(slots, {0, 2}, 1), NotInBasis);
}

TEST_CASE("deviation costs") {
  Game alone = make_ufl_game({R(4), R(6)}, {{R(3), R(0)}});
  Profile on_a{{{0}}};
  CHECK(deviation_cost(alone, on_a, 0, 0, true) == R(6));
  CHECK(deviation_cost(alone, on_a, 0, 0, false) == R(6));

  Game g = ufl_10_3();
  Profile both_a{{{0}, {0}}};
  CHECK(deviation_cost(g, both_a, 0, 0, true) == R(3));
  CHECK(deviation_cost(g, both_a, 0, 0, false) == R(3));

  Game single = make_ufl_game({R(5)}, {{R(2)}});
  CHECK(deviation_cost(single, Profile{{{0}}}, 0, 0, true) == R(7));
  CHECK_THROWS_AS(deviation_cost(g, both_a, 0, 1, true), NotInBasis);
}

TEST_CASE("true deviation cost sees occupancy") {
  // Player 1 sits on B: joining costs c_B({0,1}) = 4, while pi_0^B = 3.
  Game g;
  g.num_players = 2;
  g.num_resources = 2;
  g.cost = {CostFunction::fixed(R(10)),
            CostFunction::table({{PlayerSet::single(0), R(3)}, {PlayerSet::single(1), R(3)}, {PlayerSet(3), R(4)}})};
  g.delay.assign(2, std::vector<Rational>(2, R(0)));
  auto m = std::make_shared<const UniformMatroid>(ResourceSet{0, 1}, 1);
  g.spaces = {MatroidSpace{m}, MatroidSpace{m}};
  g.validate();
  Profile p{{{0}, {1}}};
  CHECK(deviation_cost(g, p, 0, 0, true) == R(3));
  CHECK(deviation_cost(g, p, 0, 0, false) == R(4));
}

TEST_CASE("D1/D2 checks") {
  Game g = ufl_10_3();
  auto a = check_enforceable_matroid(g, Profile{{{0}, {0}}}, true);
  CHECK_FALSE(a.ok);
  REQUIRE(a.violated.size() == 1);
  CHECK(a.violated[0].condition == Condition::kD2);
  CHECK(a.violated[0].resource == 0);
  CHECK(check_enforceable_matroid(g, Profile{{{1}, {1}}}, true).ok);
  CHECK(check_enforceable_matroid(g, Profile{{{1}, {1}}}, false).ok);

  Game single = make_ufl_game({R(5)}, {{R(0)}});
  CHECK(check_enforceable_matroid(single, Profile{{{0}}}, false).ok);

  Game delayed = make_ufl_game({R(1), R(1)}, {{R(5), R(0)}});
  auto d = check_enforceable_matroid(delayed, Profile{{{0}}}, true);
  CHECK_FALSE(d.ok);
  CHECK(d.violated[0].condition == Condition::kD1);
  CHECK(d.violated[0].player == 0);
}

TEST_CASE("transform: UFL both on the expensive facility") {
  Game g = ufl_10_3();
  auto r = transform_matroid(g, Profile{{{0}, {0}}});
  CHECK(r.profile == Profile{{{1}, {1}}});
  CHECK(total_cost(g, r.profile) == R(3));
  auto opt = brute_force_optimum(g);
  CHECK(opt.cost == R(3));
  CHECK(opt.profile == r.profile);
  CHECK(lp_enforceable(g, r.profile));
}

TEST_CASE("transform: enforceable input is returned unchanged") {
  Game g = ufl_10_3();
  Profile p{{{1}, {1}}};
  auto r = transform_matroid(g, p);
  CHECK(r.profile == p);
  CHECK(r.stats.outer_iterations == 0);
  CHECK(r.stats.packet_moves == 0);
}

TEST_CASE("transform: delay violation moves the packet") {
  Game g = make_ufl_game({R(1), R(1)}, {{R(5), R(0)}});
  Trace trace;
  auto r = transform_matroid(g, Profile{{{0}}}, &trace);
  CHECK(r.profile == Profile{{{1}}});
  REQUIRE(trace.size() == 1);
  CHECK(trace[0].type == "delay_move");
  CHECK(trace[0].cost_delta == R(-5));
}

TEST_CASE("protocol construction") {
  Game single = make_ufl_game({R(5)}, {{R(0)}});
  auto p = build_matroid_protocol(single, Profile{{{0}}});
  CHECK(p.table().share(0, 0) == R(5));

  Game g = ufl_10_3();
  auto q = build_matroid_protocol(g, Profile{{{1}, {1}}});
  CHECK(q.table().share(0, 1) == R(3));
  CHECK(q.table().share(1, 1) == R(0));
  CHECK(sepcs::testing::exhaustive_pne(g, q));
  CHECK_THROWS_AS(build_matroid_protocol(g, Profile{{{0}, {0}}}), NotEnforceable);

  // Shared resource of cost 4, private fallbacks of cost 2: caps (2, 2).
  Game sym;
  sym.num_players = 2;
  sym.num_resources = 3;
  sym.cost = {CostFunction::fixed(R(4)), CostFunction::fixed(R(2)), CostFunction::fixed(R(2))};
  sym.delay.assign(2, std::vector<Rational>(3, R(0)));
  sym.spaces = {MatroidSpace{std::make_shared<const UniformMatroid>(ResourceSet{0, 1}, 1)},
                MatroidSpace{std::make_shared<const UniformMatroid>(ResourceSet{0, 2}, 1)}};
  sym.validate();
  auto s = build_matroid_protocol(sym, Profile{{{0}, {0}}});
  CHECK(s.table().share(0, 0) == R(2));
  CHECK(s.table().share(1, 0) == R(2));
}

TEST_CASE("D1/D2 with true costs agree with the deviation LP on rank-1 games") {
  Rng rng(41);
  int enforceable_count = 0;
  for (int it = 0; it < 300; ++it) {
    int n = uniform_int(rng, 1, 3);
    int m = uniform_int(rng, 2, 4);
    MatroidGenOptions o;
    o.players = n;
    o.resources = m;
    o.subadditive = uniform_int(rng, 0, 1) == 1;
    Game g = random_matroid_game(rng, o);
    // Force rank 1 over the full ground set.
    auto rank1 = std::make_shared<const UniformMatroid>(make_resource_set([&] {
      std::vector<Resource> all;
      for (Resource e = 0; e < m; ++e) all.push_back(e);
      return all;
    }()), 1);
    for (auto& s : g.spaces) s = MatroidSpace{rank1};
    Profile p = random_bases(g, rng);
    bool lemma = check_enforceable_matroid(g, p, false).ok;
    CHECK(lemma == lp_enforceable(g, p));
    enforceable_count += lemma ? 1 : 0;
  }
  CHECK(enforceable_count > 0);
  CHECK(enforceable_count < 300);
}

TEST_CASE("transform on random matroid games") {
  Rng rng(5);
  for (int it = 0; it < 150; ++it) {
    MatroidGenOptions o;
    o.players = uniform_int(rng, 1, 4);
    o.resources = uniform_int(rng, 2, 7);
    o.kind = static_cast<MatroidKind>(uniform_int(rng, 0, 2));
    o.subadditive = uniform_int(rng, 0, 1) == 1;
    Game g = random_matroid_game(rng, o);
    Profile p = random_bases(g, rng);
    auto r = transform_matroid(g, p);
    CHECK(r.stats.packet_moves <= r.stats.bound);
    CHECK(total_cost(g, r.profile) <= total_cost(g, p));
    CHECK(check_enforceable_matroid(g, r.profile, true).ok);
    CHECK(check_enforceable_matroid(g, r.profile, false).ok);
    auto protocol = build_matroid_protocol(g, r.profile);
    CHECK(verify_pne(g, protocol).ok);
    CHECK(sepcs::testing::exhaustive_pne(g, protocol));
  }
}
