#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sepcs/errors.hpp"
#include "sepcs/lp.hpp"
#include "lp_oracle.hpp"

using namespace sepcs;

namespace {

LinearProgram make(std::vector<Rational> c, std::vector<std::pair<std::vector<Rational>, Rational>> rows) {
  LinearProgram lp(static_cast<int>(c.size()));
  lp.objective = std::move(c);
  for (auto& [a, b] : rows) lp.add_row(a, b);
  return lp;
}

}  // namespace

TEST_CASE("single variable") {
  auto sol = solve(make({Rational(1)}, {{{Rational(1)}, Rational(1)}}));
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.values[0] == Rational(1));
  CHECK(sol.objective == Rational(1));

  CHECK(solve(make({Rational(1)}, {{{Rational(1)}, Rational(-1)}})).status == LpStatus::kInfeasible);
  CHECK(solve(make({Rational(1)}, {{{Rational(-1)}, Rational(1)}})).status == LpStatus::kUnbounded);
}

TEST_CASE("two-dimensional optimum at a vertex") {
  auto lp = make({Rational(3), Rational(2)},
                 {{{Rational(1), Rational(1)}, Rational(4)}, {{Rational(1), Rational(0)}, Rational(2)}});
  auto sol = solve(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.values[0] == Rational(2));
  CHECK(sol.values[1] == Rational(2));
  CHECK(sol.objective == Rational(10));
  CHECK(testing::vertex_optimum(lp) == Rational(10));
}

TEST_CASE("fractional optimum") {
  auto lp = make({Rational(1), Rational(1)},
                 {{{Rational(2), Rational(1)}, Rational(2)}, {{Rational(1), Rational(3)}, Rational(2)}});
  auto sol = solve(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == Rational(6, 5));
  CHECK(sol.values[0] == Rational(4, 5));
  CHECK(sol.values[1] == Rational(2, 5));
}

TEST_CASE("degenerate rows do not cycle") {
  // A classic cycling example under the largest-coefficient rule.
  auto lp = make({Rational(10), Rational(-57), Rational(-9), Rational(-24)},
                 {{{Rational(1, 2), Rational(-11, 2), Rational(-5, 2), Rational(9)}, Rational(0)},
                  {{Rational(1, 2), Rational(-3, 2), Rational(-1, 2), Rational(1)}, Rational(0)},
                  {{Rational(1), Rational(0), Rational(0), Rational(0)}, Rational(1)}});
  auto sol = solve(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == Rational(1));
}

TEST_CASE("empty programs") {
  LinearProgram none(0);
  auto sol = solve(none);
  CHECK(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == Rational(0));
  LinearProgram free_var(1);
  CHECK(solve(free_var).status == LpStatus::kOptimal);
}

TEST_CASE("dump and parse round trip") {
  auto lp = make({Rational(3), Rational(-2, 3)},
                 {{{Rational(1), Rational(1)}, Rational(4)}, {{Rational(-1, 2), Rational(0)}, Rational(-7, 5)}});
  std::string text = dump(lp);
  auto back = parse_dump(text);
  CHECK(dump(back) == text);
  CHECK(back.rows.size() == 2);
  CHECK(back.rows[1].rhs == Rational(-7, 5));
  CHECK_THROWS_AS(parse_dump("2 1\n1/1"), InputError);
  CHECK_THROWS_AS(parse_dump("x"), InputError);
  CHECK_THROWS_AS(parse_dump("1 1\n1/1 1/0 2/1"), InputError);
}

TEST_CASE("random programs agree with the oracles") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 300; ++k) {
    auto lp = testing::random_small_lp(rng);
    auto sol = solve(lp);
    CHECK(sol.status == testing::fm_status(lp));
    if (sol.status == LpStatus::kOptimal) {
      CHECK(testing::vertex_optimum(lp) == sol.objective);
      auto again = solve(lp);
      CHECK(again.values == sol.values);
    }
  }
}
