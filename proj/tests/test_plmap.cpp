#include <doctest.h>

#include <cmath>

#include "curves.hpp"
#include "oracles.hpp"
#include "pliml/catalog.hpp"
#include "pliml/error.hpp"
#include "pliml/factorize.hpp"

using namespace pliml;

namespace {

Rational r(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::internal;
}

}  // namespace

TEST_CASE("make normalizes and keeps genuine breakpoints") {
  const PLMap fm = make_plmap({{r(0), r(0)}, {r(1, 3), r(1)}, {r(4, 9), r(1, 3)}, {r(5, 9), r(2, 3)}, {r(2, 3), r(0)}, {r(1), r(1)}});
  CHECK(fm == minc_map());
  CHECK(fm.size() == 6);

  const PLMap id = make_plmap({{r(0), r(0)}, {r(1, 2), r(1, 2)}, {r(1), r(1)}});
  CHECK(id.size() == 2);
  CHECK(id == PLMap::identity());

  const std::vector<Point> kept{{r(0), r(0)}, {r(1, 4), r(1, 2)}, {r(1, 2), r(1)}, {r(1), r(0)}};
  CHECK(make_plmap(kept).breakpoints().size() == 3);  // (1/4,1/2) lies on the slope-2 segment
  const std::vector<Point> bent{{r(0), r(0)}, {r(1, 4), r(1, 3)}, {r(1, 2), r(1)}, {r(1), r(0)}};
  CHECK(make_plmap(bent).breakpoints() == bent);
}

TEST_CASE("make rejects invalid breakpoint lists") {
  CHECK(code_of([] { make_plmap({{r(0), r(0)}}); }) == ErrorCode::domain);
  CHECK(code_of([] { make_plmap({{r(1, 4), r(0)}, {r(1), r(1)}}); }) == ErrorCode::domain);
  CHECK(code_of([] { make_plmap({{r(0), r(0)}, {r(1, 2), r(1)}, {r(1, 2), r(0)}, {r(1), r(1)}}); }) ==
        ErrorCode::domain);
  CHECK(code_of([] { make_plmap({{r(0), r(0)}, {r(1), r(3, 2)}}); }) == ErrorCode::domain);
  CHECK(code_of([] { make_plmap({{r(0), r(1, 2)}, {r(1, 2), r(1, 2)}, {r(1), r(1)}}); }) == ErrorCode::domain);
}

TEST_CASE("eval at breakpoints, the fixed point and out of range") {
  const PLMap fm = minc_map();
  CHECK(fm.eval(r(1, 3)) == r(1));
  CHECK(fm.eval(r(1, 2)) == r(1, 2));
  CHECK(fm.eval(r(5, 9)) == r(2, 3));
  CHECK(fm(r(1, 6)) == r(1, 2));
  for (int k = 0; k <= 20; ++k) CHECK(PLMap::identity().eval(r(k, 20)) == r(k, 20));
  CHECK(code_of([&] { fm.eval(r(-1, 2)); }) == ErrorCode::domain);
  CHECK(code_of([&] { fm.eval(r(3, 2)); }) == ErrorCode::domain);
}

TEST_CASE("compose agrees with pointwise evaluation") {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const PLMap f = oracle::random_map(rng, 8, 64, 64);
    const PLMap g = oracle::random_map(rng, 8, 64, 64);
    const PLMap gf = compose(g, f);
    for (int k = 0; k < 250; ++k) {
      const Rational x = oracle::random_rational(rng, 1000);
      REQUIRE(gf.eval(x) == oracle::eval(g, oracle::eval(f, x)));
    }
    for (const auto& p : gf.breakpoints()) CHECK(p.y == oracle::eval(g, oracle::eval(f, p.x)));
  }
  const PLMap fm = minc_map();
  CHECK(compose(PLMap::identity(), fm) == fm);
  CHECK(compose(fm, PLMap::identity()) == fm);
}

TEST_CASE("compose respects the breakpoint budget") {
  const PLMap fm = minc_map();
  CHECK(code_of([&] { iterate(fm, 6, Limits{1000}); }) == ErrorCode::budget_exceeded);
  CHECK(iterate(fm, 4, Limits{1000}).size() == 342);
}

TEST_CASE("iterate and the second iterate of the Minc map") {
  const PLMap fm = minc_map();
  const PLMap f2 = iterate(fm, 2);
  CHECK(iterate(fm, 1) == fm);
  CHECK(f2 == compose(fm, fm));
  CHECK(f2.eval(r(7, 18)) == r(0));
  CHECK(f2.eval(r(11, 18)) == r(1));
  CHECK(f2.size() == 22);
  CHECK(iterate(fm, 3).size() == 86);
  CHECK(code_of([&] { iterate(fm, 0); }) == ErrorCode::invalid_argument);

  REQUIRE(f2.size() == curves::kMincSquareCurve.size());
  for (std::size_t i = 0; i < f2.size(); ++i) {
    CHECK(std::abs(f2.breakpoints()[i].x.to_double() - curves::kMincSquareCurve[i].x) <= 1e-9);
    CHECK(std::abs(f2.breakpoints()[i].y.to_double() - curves::kMincSquareCurve[i].y) <= 1e-9);
  }
  REQUIRE(fm.size() == curves::kMincCurve.size());
  for (std::size_t i = 0; i < fm.size(); ++i)
    CHECK(std::abs(fm.breakpoints()[i].y.to_double() - curves::kMincCurve[i].y) <= 1e-9);
}

TEST_CASE("critical set and laps") {
  const PLMap fm = minc_map();
  CHECK(critical_set(fm) == std::vector<Rational>{r(1, 3), r(4, 9), r(5, 9), r(2, 3)});
  CHECK(critical_set(fm, true) == std::vector<Rational>{r(0), r(1, 3), r(4, 9), r(5, 9), r(2, 3), r(1)});
  CHECK(critical_set(PLMap::identity()).empty());
  CHECK(critical_set(iterate(fm, 2)).size() == 20);
  CHECK(critical_set(iterate(fm, 2)) == oracle::turning_points(iterate(fm, 2)));

  const auto ls = laps(fm);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == Lap{r(0), r(1, 3), Direction::increasing});
  CHECK(ls[1] == Lap{r(1, 3), r(4, 9), Direction::decreasing});
  CHECK(ls[2] == Lap{r(4, 9), r(5, 9), Direction::increasing});
  CHECK(ls[3] == Lap{r(5, 9), r(2, 3), Direction::decreasing});
  CHECK(ls[4] == Lap{r(2, 3), r(1), Direction::increasing});
  CHECK(laps(PLMap::identity()) == std::vector<Lap>{{r(0), r(1), Direction::increasing}});
  CHECK(laps(iterate(fm, 2)).size() == 21);

  // Same slope sign across a kink is not a turning point.
  const PLMap kinked = make_plmap({{r(0), r(0)}, {r(1, 2), r(1, 4)}, {r(1), r(1)}});
  CHECK(critical_set(kinked).empty());
  CHECK(laps(kinked).size() == 1);
}

TEST_CASE("level crossings") {
  const PLMap fm = minc_map();
  CHECK(level_crossings(fm, r(0)) == std::vector<Rational>{r(0), r(2, 3)});
  CHECK(level_crossings(fm, r(1)) == std::vector<Rational>{r(1, 3), r(1)});
  const auto half = level_crossings(fm, r(1, 2));
  CHECK(half == std::vector<Rational>{r(1, 6), r(5, 12), r(1, 2), r(7, 12), r(5, 6)});
  for (const auto& x : half) CHECK(fm.eval(x) == r(1, 2));
  CHECK(std::is_sorted(half.begin(), half.end()));
  CHECK(level_crossings(fm, r(1, 3)) == std::vector<Rational>{r(1, 9), r(4, 9), r(11, 18), r(7, 9)});
}

TEST_CASE("onto, images and injectivity") {
  const PLMap fm = minc_map();
  CHECK(is_onto(fm));
  CHECK_FALSE(is_onto(make_plmap({{r(0), r(1, 4)}, {r(1), r(3, 4)}})));
  const FactorPair st = split_case1(iterate(fm, 2), r(7, 18));
  const auto s_range = oracle::image(*st.s, r(0), r(1));
  CHECK(is_onto(*st.s) == (s_range.is_unit()));
  CHECK(is_onto(*st.s));

  CHECK(image(fm, {r(0), r(1, 3)}).is_unit());
  CHECK(image(fm, {r(4, 9), r(5, 9)}) == Interval{r(1, 3), r(2, 3)});
  CHECK(image(fm, {r(2, 5), r(3, 5)}) == oracle::image(fm, r(2, 5), r(3, 5)));
  CHECK(is_injective_on(fm, r(1, 3), r(4, 9)));
  CHECK_FALSE(is_injective_on(fm, r(1, 3), r(1, 2)));
}

TEST_CASE("text format round trip and errors") {
  const PLMap fm = minc_map();
  CHECK(parse_map(to_text(fm)) == fm);
  CHECK(parse_map("# comment\n0 0\n\n1/2 1   # peak\n1 0\n") == *builtin_map("tent"));
  try {
    parse_map("0 0\n1/2 x\n1 1\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK(code_of([] { parse_map("0 0 0\n1 1\n"); }) == ErrorCode::parse);
}

TEST_CASE("builtin catalog") {
  CHECK(builtin_names().size() == 5);
  for (const auto& name : builtin_names()) CHECK(builtin_map(name).has_value());
  CHECK_FALSE(builtin_map("nope").has_value());
  CHECK(*builtin_map("minc") == minc_map());
  CHECK(builtin_map("fig3-right")->eval(r(1, 5)) == r(17, 20));
}
