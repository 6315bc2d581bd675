#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pliml/plmap.hpp"

namespace pliml {

/// How "assumes its global minimum at a" is read. Strict: a is the only
/// minimizer on [a,b]. Non-strict: the minimum may also be attained elsewhere.
enum class Attainment { strict, non_strict };

struct ZigzagOptions {
  Attainment attainment = Attainment::strict;
};

/// Endpoints of a witness interval [a,b] around a lap [c_k, c_{k+1}].
struct ZigzagWitness {
  Rational a;
  Rational b;

  friend bool operator==(const ZigzagWitness&, const ZigzagWitness&) = default;
};

/// One lap containing the query point. The first and last laps of a map are
/// `outer` and can never carry a witness since no a < 0 or b > 1 exists.
struct LapCheck {
  Lap lap;
  bool outer = false;
  std::optional<ZigzagWitness> witness;

  friend bool operator==(const LapCheck&, const LapCheck&) = default;
};

struct ZigzagVerdict {
  bool in_zigzag = false;
  /// Every lap that contains y (one, or two when y is a critical point).
  std::vector<LapCheck> applicable_laps;
  std::optional<Lap> failing_lap;

  friend bool operator==(const ZigzagVerdict&, const ZigzagVerdict&) = default;
};

/// Searches a witness [a,b] for the lap with index `lap_index` among `ls`.
/// Candidates for a and b are breakpoints of f; a witness whose end lies
/// inside a segment can always be slid to that segment's far end.
std::optional<ZigzagWitness> find_lap_witness(const PLMap& f, const std::vector<Lap>& ls, std::size_t lap_index,
                                              const ZigzagOptions& options = {});

/// Re-checks a witness by exact evaluation over all breakpoints in [a,b].
bool witness_holds(const PLMap& f, const Lap& lap, const ZigzagWitness& w, const ZigzagOptions& options = {});

ZigzagVerdict is_in_zigzag(const PLMap& f, const Rational& y, const ZigzagOptions& options = {});

/// Open interval (lo, hi).
struct OpenInterval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& v) const { return lo < v && v < hi; }
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// {y : y in a zigzag of f} as a sorted union of disjoint open intervals.
std::vector<OpenInterval> zigzag_set(const PLMap& f, const ZigzagOptions& options = {});

/// True when f(c_k) or f(c_{k+1}) is 0 or 1 for the interior lap `lap_index`
/// (1 <= lap_index <= laps-2); no point of such a lap is in a zigzag.
bool remark_no_zigzag(const PLMap& f, std::size_t lap_index);

enum class WitnessCase { left_extreme = 1, right_extreme = 2 };

/// Certificate that y is not in a zigzag: f takes neither f(a) nor f(b) on
/// (a,b), and either f(a) is 0 or 1 and f is injective on [y,b]
/// (left_extreme), or f(b) is 0 or 1 and f is injective on [a,y].
struct NotInZigzagWitness {
  Rational a;
  Rational b;
  WitnessCase which;
};

bool not_in_zigzag_witness_holds(const PLMap& f, const Rational& y, const NotInZigzagWitness& w);

/// A witness when one is found among breakpoints and level-0/1 crossings;
/// absence is inconclusive.
std::optional<NotInZigzagWitness> lemma_witness(const PLMap& f, const Rational& y);

/// Samples y where g∘f has y in a zigzag while neither y is in a zigzag of f
/// nor f(y) is in a zigzag of g. A correct implementation always returns an
/// empty list.
std::vector<Rational> composition_property_check(const PLMap& f, const PLMap& g, std::span<const Rational> samples,
                                                 const ZigzagOptions& options = {});

/// Midpoint of every lap of f.
std::vector<Rational> lap_midpoints(const PLMap& f);

}  // namespace pliml
