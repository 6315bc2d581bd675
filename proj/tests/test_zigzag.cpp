#include <doctest.h>

#include "oracles.hpp"
#include "pliml/catalog.hpp"
#include "pliml/error.hpp"
#include "pliml/factorize.hpp"

using namespace pliml;

namespace {

Rational r(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

const ZigzagOptions kNonStrict{Attainment::non_strict};

PLMap minc_g() {
  const FactorPair st = split_case1(iterate(minc_map(), 2), r(7, 18));
  return compose(*st.s, *st.t);
}

// True when f takes the value c somewhere in the open interval (a,b).
bool takes_value_inside(const PLMap& f, const Rational& c, const Rational& a, const Rational& b) {
  const auto& p = f.breakpoints();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const Rational lo = max(p[i].x, a);
    const Rational hi = min(p[i + 1].x, b);
    if (!(lo < hi)) continue;
    const Rational flo = oracle::eval(f, lo);
    const Rational fhi = oracle::eval(f, hi);
    const Rational vmin = min(flo, fhi);
    const Rational vmax = max(flo, fhi);
    if (vmin < c && c < vmax) return true;
    if ((flo == c && lo > a) || (fhi == c && hi < b)) return true;
  }
  return false;
}

bool injective_between(const PLMap& f, const Rational& lo, const Rational& hi) {
  for (const auto& c : oracle::turning_points(f))
    if (lo < c && c < hi) return false;
  return true;
}

// The three conditions of the not-in-zigzag criterion, checked independently.
bool criterion_holds(const PLMap& f, const Rational& y, const NotInZigzagWitness& w) {
  if (!(w.a < w.b) || y < w.a || y > w.b) return false;
  const Rational fa = oracle::eval(f, w.a);
  const Rational fb = oracle::eval(f, w.b);
  if (takes_value_inside(f, fa, w.a, w.b) || takes_value_inside(f, fb, w.a, w.b)) return false;
  auto extreme = [](const Rational& v) { return v == Rational(0) || v == Rational(1); };
  if (w.which == WitnessCase::left_extreme) return extreme(fa) && injective_between(f, y, w.b);
  return extreme(fb) && injective_between(f, w.a, y);
}

}  // namespace

TEST_CASE("Minc map: 1/2 is in a zigzag of every iterate checked") {
  const PLMap fm = minc_map();
  for (unsigned n = 1; n <= 3; ++n) CHECK(is_in_zigzag(iterate(fm, n), r(1, 2)).in_zigzag);
  const auto v = is_in_zigzag(fm, r(1, 2));
  REQUIRE(v.applicable_laps.size() == 1);
  REQUIRE(v.applicable_laps[0].witness.has_value());
  CHECK(*v.applicable_laps[0].witness == ZigzagWitness{r(1, 3), r(2, 3)});
  CHECK(witness_holds(fm, v.applicable_laps[0].lap, *v.applicable_laps[0].witness));
}

TEST_CASE("the bonding map g = s o t keeps 1/2 out of zigzags") {
  const PLMap g = minc_g();
  const auto v = is_in_zigzag(g, r(1, 2));
  CHECK_FALSE(v.in_zigzag);
  REQUIRE(v.failing_lap.has_value());
  CHECK(v.failing_lap->left == r(13, 27));
  CHECK(v.failing_lap->right == r(14, 27));
  // The only candidate witness ties with another global minimum.
  CHECK(is_in_zigzag(g, r(1, 2), kNonStrict).in_zigzag);
}

TEST_CASE("identity and monotone maps have no zigzags") {
  for (int k = 0; k <= 16; ++k) CHECK_FALSE(is_in_zigzag(PLMap::identity(), r(k, 16)).in_zigzag);
  CHECK(zigzag_set(PLMap::identity()).empty());
  const PLMap mono = make_plmap({{r(0), r(0)}, {r(1, 3), r(1, 2)}, {r(1), r(1)}});
  CHECK(zigzag_set(mono).empty());
}

TEST_CASE("fig3-left: zigzag exactly on (c3, c4)") {
  const PLMap f = *builtin_map("fig3-left");
  const auto set = zigzag_set(f);
  REQUIRE(set.size() == 1);
  CHECK(set[0] == OpenInterval{r(3, 5), r(4, 5)});
  for (int k = 0; k <= 100; ++k) {
    const Rational y = r(k, 100);
    CHECK(is_in_zigzag(f, y).in_zigzag == (r(3, 5) < y && y < r(4, 5)));
  }
  // f(0) = 0 and f(1) = f(1/5) = 1: with ties allowed [0,1] witnesses (c1, c2).
  CHECK(zigzag_set(f, kNonStrict) == std::vector<OpenInterval>{{r(1, 5), r(2, 5)}, {r(3, 5), r(4, 5)}});
}

TEST_CASE("fig3-right: zigzag on (c1, c2) and (c3, c4)") {
  const PLMap g = *builtin_map("fig3-right");
  const auto set = zigzag_set(g);
  REQUIRE(set.size() == 2);
  CHECK(set[0] == OpenInterval{r(1, 5), r(2, 5)});
  CHECK(set[1] == OpenInterval{r(3, 5), r(4, 5)});
  for (int k = 0; k <= 100; ++k) {
    const Rational y = r(k, 100);
    const bool expected = (r(1, 5) < y && y < r(2, 5)) || (r(3, 5) < y && y < r(4, 5));
    CHECK(is_in_zigzag(g, y).in_zigzag == expected);
  }
  // g(1/5) = g(3/5) = 17/20: ties let the middle lap in when they are allowed.
  const auto loose = zigzag_set(g, kNonStrict);
  REQUIRE(loose.size() == 1);
  CHECK(loose[0] == OpenInterval{r(1, 5), r(4, 5)});
}

TEST_CASE("zigzag set of the Minc map and its square") {
  const PLMap fm = minc_map();
  CHECK(zigzag_set(fm) == std::vector<OpenInterval>{{r(4, 9), r(5, 9)}});
  bool half_inside = false;
  for (const auto& iv : zigzag_set(iterate(fm, 2))) half_inside = half_inside || iv.contains(r(1, 2));
  CHECK(half_inside);
}

TEST_CASE("outer laps and critical endpoints") {
  const PLMap fm = minc_map();
  const auto at_c1 = is_in_zigzag(fm, r(1, 3));
  CHECK_FALSE(at_c1.in_zigzag);
  REQUIRE(at_c1.applicable_laps.size() == 2);
  CHECK(at_c1.applicable_laps[0].outer);
  CHECK_FALSE(is_in_zigzag(fm, r(0)).in_zigzag);
  CHECK_FALSE(is_in_zigzag(fm, r(1)).in_zigzag);
  CHECK_FALSE(is_in_zigzag(fm, r(4, 9)).in_zigzag);  // the lap [1/3,4/9] has no witness
  CHECK_THROWS_AS(is_in_zigzag(fm, r(2)), Error);
}

TEST_CASE("remark: a lap ending at level 0 or 1 has no zigzag") {
  const PLMap fm = minc_map();
  CHECK(remark_no_zigzag(fm, 1));
  CHECK_FALSE(remark_no_zigzag(fm, 2));
  CHECK(remark_no_zigzag(fm, 3));
  const PLMap inner = make_plmap({{r(0), r(0)}, {r(1, 4), r(3, 4)}, {r(1, 2), r(1, 4)}, {r(3, 4), r(3, 4)}, {r(1), r(1)}});
  for (std::size_t k = 1; k + 1 < laps(inner).size(); ++k) CHECK_FALSE(remark_no_zigzag(inner, k));
  CHECK_THROWS_AS(remark_no_zigzag(fm, 0), Error);
  CHECK_THROWS_AS(remark_no_zigzag(fm, 4), Error);
}

TEST_CASE("not-in-zigzag criterion witnesses") {
  const PLMap id = PLMap::identity();
  for (int k = 1; k < 10; ++k) {
    const auto w = lemma_witness(id, r(k, 10));
    REQUIRE(w.has_value());
    CHECK(criterion_holds(id, r(k, 10), *w));
  }

  const PLMap fm = minc_map();
  const auto w = lemma_witness(fm, r(9, 10));
  REQUIRE(w.has_value());
  CHECK(w->a == r(2, 3));
  CHECK(w->which == WitnessCase::left_extreme);
  CHECK(criterion_holds(fm, r(9, 10), *w));
  CHECK(not_in_zigzag_witness_holds(fm, r(9, 10), *w));

  const PLMap g = minc_g();
  const auto wg = lemma_witness(g, r(1, 2));
  REQUIRE(wg.has_value());
  CHECK(criterion_holds(g, r(1, 2), *wg));
  CHECK(not_in_zigzag_witness_holds(g, r(1, 2), *wg));

  CHECK_FALSE(lemma_witness(fm, r(1, 2)).has_value());
  CHECK_FALSE(not_in_zigzag_witness_holds(fm, r(1, 2), {r(1, 3), r(2, 3), WitnessCase::left_extreme}));
}

TEST_CASE("composition property on the Minc factors") {
  const FactorPair st = split_case1(iterate(minc_map(), 2), r(7, 18));
  const PLMap g = compose(*st.s, *st.t);
  const auto samples = lap_midpoints(g);
  CHECK(samples.size() == laps(g).size());
  CHECK(composition_property_check(*st.t, *st.s, samples).empty());
  const std::vector<Rational> id_samples{r(1, 2)};
  CHECK(composition_property_check(PLMap::identity(), PLMap::identity(), id_samples).empty());
}

TEST_CASE("breakpoint witness search matches the grid search on small maps") {
  oracle::Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const PLMap f = oracle::random_map(rng, 6, 64, 64);
    const auto ls = laps(f);
    for (bool strict : {true, false}) {
      const ZigzagOptions options{strict ? Attainment::strict : Attainment::non_strict};
      const oracle::GridZigzag grid(f, 1024, strict);
      for (std::size_t k = 1; k + 1 < ls.size(); ++k) {
        const auto w = find_lap_witness(f, ls, k, options);
        CHECK(w.has_value() == grid.lap_has_witness(ls[k].left, ls[k].right));
        if (w) CHECK(witness_holds(f, ls[k], *w, options));
      }
    }
  }
}
