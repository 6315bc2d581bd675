#include <doctest.h>

#include "oracles.hpp"
#include "pliml/catalog.hpp"
#include "pliml/dynamics.hpp"
#include "pliml/error.hpp"
#include "pliml/factorize.hpp"

using namespace pliml;

namespace {

Rational r(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

PLMap tent() { return *builtin_map("tent"); }

// Least N with f^N(J) = [0,1] for every J of the quarter-shifted cover,
// recomputed with the raw-list image oracle.
unsigned recipe_N(const PLMap& f, const Rational& eps) {
  unsigned worst = 1;
  for (std::int64_t i = 0;; ++i) {
    const Rational lo = eps * Rational(i, 4);
    const Rational hi = min(lo + eps / Rational(2), Rational(1));
    pliml::Interval j{lo, hi};
    unsigned n = 0;
    do {
      j = oracle::image(f, j.lo, j.hi);
      ++n;
    } while (!j.is_unit());
    worst = std::max(worst, n);
    if (hi == Rational(1)) break;
  }
  return worst;
}

}  // namespace

TEST_CASE("branch through the fixed point and at critical points") {
  const PLMap fm = minc_map();
  const auto b = branch(fm, r(1, 2));
  CHECK(b.domain == Interval{r(4, 9), r(5, 9)});
  CHECK(b.branch == Interval{r(1, 3), r(2, 3)});
  CHECK_FALSE(b.at_critical);

  const auto c = branch(fm, r(4, 9));
  CHECK(c.at_critical);
  CHECK_FALSE(c.tie_rule_applied);
  CHECK(c.domain == Interval{r(4, 9), r(5, 9)});
  CHECK(c.branch == Interval{r(1, 3), r(2, 3)});

  const auto id = branch(PLMap::identity(), r(1, 3));
  CHECK(id.domain == Interval{r(0), r(1)});
  CHECK(id.branch == Interval{r(0), r(1)});

  const auto peak = branch(tent(), r(1, 2));
  CHECK(peak.tie_rule_applied);
  CHECK(peak.domain == Interval{r(0), r(1, 2)});
  CHECK_THROWS_AS(branch(fm, r(-1)), Error);
}

TEST_CASE("branch agrees with the lap-scan oracle") {
  const PLMap f3 = iterate(minc_map(), 3);
  for (int k = 0; k <= 200; ++k) CHECK(branch(f3, r(k, 200)).branch == oracle::branch_image(f3, r(k, 200)));
}

TEST_CASE("post-critical orbits") {
  const auto table = post_critical_orbits(minc_map());
  REQUIRE(table.orbits.size() == 6);
  CHECK(table.all_closed());
  struct Expect {
    Rational point;
    std::size_t k;
    std::size_t j;
    std::vector<Rational> orbit;
  };
  const std::vector<Expect> expected{{r(0), 0, 1, {r(0)}},
                                     {r(1, 3), 1, 1, {r(1, 3), r(1)}},
                                     {r(4, 9), 2, 1, {r(4, 9), r(1, 3), r(1)}},
                                     {r(5, 9), 2, 1, {r(5, 9), r(2, 3), r(0)}},
                                     {r(2, 3), 1, 1, {r(2, 3), r(0)}},
                                     {r(1), 0, 1, {r(1)}}};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(table.orbits[i].point == expected[i].point);
    CHECK(table.orbits[i].preperiod == expected[i].k);
    CHECK(table.orbits[i].period == expected[i].j);
    CHECK(table.orbits[i].orbit == expected[i].orbit);
  }

  const auto t = post_critical_orbits(tent());
  REQUIRE(t.orbits.size() == 3);
  CHECK(t.orbits[1].orbit == std::vector<Rational>{r(1, 2), r(1), r(0)});
  CHECK(t.orbits[1].preperiod == 2);
  CHECK(t.orbits[1].period == 1);

  for (const auto& o : post_critical_orbits(PLMap::identity()).orbits) {
    CHECK(o.preperiod == 0);
    CHECK(o.period == 1);
  }
}

TEST_CASE("post-critical finiteness") {
  CHECK(is_post_critically_finite(minc_map()) == Decision::yes);
  CHECK(is_post_critically_finite(PLMap::identity()) == Decision::yes);
  // Endpoint orbits of the contraction creep towards 1/2 without repeating.
  const PLMap contraction = make_plmap({{r(0), r(1, 7)}, {r(1), r(6, 7)}});
  CHECK(is_post_critically_finite(contraction, OrbitBudget{50}) == Decision::indeterminate);
  CHECK_FALSE(markov_partition(contraction, OrbitBudget{50}).has_value());
}

TEST_CASE("Markov partitions and primitivity") {
  const auto mp = markov_partition(minc_map());
  REQUIRE(mp.has_value());
  CHECK(mp->points == std::vector<Rational>{r(0), r(1, 3), r(4, 9), r(5, 9), r(2, 3), r(1)});
  const std::vector<std::vector<bool>> expected{{true, true, true, true, true},
                                                {false, true, true, true, true},
                                                {false, true, true, true, false},
                                                {true, true, true, true, false},
                                                {true, true, true, true, true}};
  CHECK(mp->transitions == expected);
  CHECK(is_primitive(mp->transitions));

  CHECK(markov_partition(PLMap::identity())->points == std::vector<Rational>{r(0), r(1)});
  CHECK(markov_partition(tent())->points == std::vector<Rational>{r(0), r(1, 2), r(1)});

  CHECK(is_primitive({{true}}));
  CHECK_FALSE(is_primitive({{false, true}, {true, false}}));
  CHECK(is_primitive({{true, true}, {true, false}}));
  CHECK_FALSE(is_primitive({{true, false}, {false, true}}));
  // Wielandt's extremal matrix needs the full exponent n^2 - 2n + 2.
  CHECK(is_primitive({{false, true, false}, {false, false, true}, {true, true, false}}));
}

TEST_CASE("leo decisions") {
  CHECK(is_leo(minc_map()) == Decision::yes);
  CHECK(is_leo(tent()) == Decision::yes);
  CHECK(is_leo(PLMap::identity()) == Decision::no);
  CHECK(is_leo(make_plmap({{r(0), r(1, 4)}, {r(1), r(3, 4)}})) == Decision::no);
  // Onto, but [0,1/2] and [1/2,1] are both invariant.
  const PLMap split = make_plmap({{r(0), r(1, 2)}, {r(1, 4), r(0)}, {r(3, 4), r(1)}, {r(1), r(1, 2)}});
  CHECK(is_leo(split) == Decision::no);
}

TEST_CASE("uniform leo depth follows the cover recipe") {
  CHECK(leo_uniform_N(tent(), r(1, 2)) == recipe_N(tent(), r(1, 2)));
  CHECK(leo_uniform_N(tent(), r(1, 2)) == 3);
  CHECK(leo_uniform_N(tent(), r(2)) == 1);
  CHECK(leo_uniform_N(minc_map(), r(2)) == 1);
  CHECK(leo_uniform_N(minc_map(), r(1, 6)) == recipe_N(minc_map(), r(1, 6)));
  CHECK(leo_uniform_N(minc_map(), r(1, 12)) == recipe_N(minc_map(), r(1, 12)));
  CHECK_THROWS_AS(leo_uniform_N(tent(), r(0)), Error);
  CHECK_THROWS_AS(leo_uniform_N(PLMap::identity(), r(1, 2), LeoBudget{20}), Error);
}

TEST_CASE("iterated images") {
  const PLMap fm = minc_map();
  CHECK(iterated_image(fm, {r(4, 9), r(5, 9)}, 1) == Interval{r(1, 3), r(2, 3)});
  CHECK(iterated_image(fm, {r(4, 9), r(5, 9)}, 2).is_unit());
  CHECK(iterated_image(fm, {r(1, 2), r(1, 2)}, 5) == Interval{r(1, 2), r(1, 2)});
}

TEST_CASE("branch stabilization for the Minc fixed point") {
  const PLMap fm = minc_map();
  const auto orbit = BackwardOrbit::constant(r(1, 2));
  const auto data = branch_stabilization(fm, orbit);
  CHECK(data.a == r(1, 3));
  CHECK(data.b == r(2, 3));
  CHECK(data.side == GapSide::left);
  CHECK(data.epsilon == r(1, 12));
  CHECK(data.epsilon <= r(1, 6));
  CHECK(data.first_index == 0);
  CHECK(data.leo_depth == recipe_N(fm, data.epsilon / r(2)));
  CHECK(data.step > data.leo_depth);
  CHECK(data.n(3) == 3 * data.step);
  CHECK(stabilization_holds(fm, orbit, data, 4));

  for (unsigned j = 1; j <= 4; ++j) CHECK(branch(iterate(fm, j), r(1, 2)).branch == Interval{r(1, 3), r(2, 3)});

  StabilizationData broken = data;
  broken.epsilon = r(1, 5);  // 1/3 + 1/5 > 1/2
  CHECK_FALSE(stabilization_holds(fm, orbit, broken, 4));
}

TEST_CASE("branch stabilization preconditions") {
  try {
    branch_stabilization(PLMap::identity(), BackwardOrbit::constant(r(1, 2)));
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition);
  }
  try {
    branch_stabilization(minc_map(), BackwardOrbit::constant(r(1, 3)));
    FAIL("expected an invalid orbit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_orbit);
  }
}

TEST_CASE("branches along random backward orbits are nested") {
  const PLMap fm = minc_map();
  std::vector<PLMap> powers{fm};
  for (int j = 2; j <= 5; ++j) powers.push_back(compose(fm, powers.back()));
  oracle::Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> xs{oracle::random_rational(rng, 60)};
    while (xs.size() < 6) {
      const auto pre = level_crossings(fm, xs.back());
      xs.push_back(pre[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(pre.size()) - 1))]);
    }
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 1; i + j + 1 < xs.size(); ++j)
        CHECK(branch(powers[j - 1], xs[i + j]).branch.contains(branch(powers[j], xs[i + j + 1]).branch));
  }
}

TEST_CASE("backward orbits") {
  const auto o = BackwardOrbit::parse("prefix: 1/2 1/2 ; period: 1/2 1/2");
  CHECK(o == BackwardOrbit::constant(r(1, 2)));
  CHECK(o.preperiod() == 0);
  CHECK(o.period() == 1);
  CHECK(BackwardOrbit::parse("const: 3/7") == BackwardOrbit::constant(r(3, 7)));
  CHECK(BackwardOrbit::constant(r(3, 7)).is_valid_for(minc_map()));
  CHECK(BackwardOrbit::constant(r(4, 7)).is_valid_for(minc_map()));
  CHECK_FALSE(BackwardOrbit::constant(r(1, 3)).is_valid_for(minc_map()));

  const BackwardOrbit mixed({r(1, 4), r(3, 4)}, {r(1, 2)});
  CHECK(mixed.at(0) == r(1, 4));
  CHECK(mixed.at(1) == r(3, 4));
  CHECK(mixed.at(7) == r(1, 2));
  CHECK(mixed.position(9) == 2);
  CHECK(BackwardOrbit::parse(mixed.str()) == mixed);

  const BackwardOrbit rotated({r(1, 5)}, {r(2, 5), r(1, 5)});
  CHECK(rotated.preperiod() == 0);
  CHECK(rotated.period_block() == std::vector<Rational>{r(1, 5), r(2, 5)});

  CHECK_THROWS_AS(BackwardOrbit::parse("period: 1"), Error);
  CHECK_THROWS_AS(BackwardOrbit({}, {}), Error);
  CHECK_THROWS_AS(BackwardOrbit::constant(r(2)), Error);
}
