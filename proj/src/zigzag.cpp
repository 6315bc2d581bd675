#include "pliml/zigzag.hpp"

#include <algorithm>

#include "pliml/error.hpp"

namespace pliml {

namespace {

const Rational kZero(0);
const Rational kOne(1);

std::size_t index_of_breakpoint(const PLMap& f, const Rational& x) {
  const auto& p = f.breakpoints();
  auto it = std::lower_bound(p.begin(), p.end(), x, [](const Point& q, const Rational& v) { return q.x < v; });
  return static_cast<std::size_t>(it - p.begin());
}

bool is_extreme_value(const Rational& v) { return v == kZero || v == kOne; }

// Indices of the laps containing y, in increasing order.
std::vector<std::size_t> laps_containing(const std::vector<Lap>& ls, const Rational& y) {
  std::vector<std::size_t> out;
  auto it = std::upper_bound(ls.begin(), ls.end(), y, [](const Rational& v, const Lap& l) { return v < l.left; });
  std::size_t idx = it == ls.begin() ? 0 : static_cast<std::size_t>(it - ls.begin()) - 1;
  if (idx > 0 && ls[idx].left == y) out.push_back(idx - 1);
  out.push_back(idx);
  return out;
}

}  // namespace

std::optional<ZigzagWitness> find_lap_witness(const PLMap& f, const std::vector<Lap>& ls, std::size_t lap_index,
                                              const ZigzagOptions& options) {
  if (lap_index == 0 || lap_index + 1 >= ls.size()) return std::nullopt;
  const Lap& lap = ls[lap_index];
  const auto& p = f.breakpoints();
  const std::size_t ka = index_of_breakpoint(f, lap.left);
  const std::size_t kb = index_of_breakpoint(f, lap.right);
  const bool strict = options.attainment == Attainment::strict;

  // On a decreasing lap a must carry the minimum and b the maximum; on an
  // increasing lap the roles flip, which is the same search on -f.
  const bool flip = lap.direction == Direction::increasing;
  auto v = [&](std::size_t i) { return flip ? -p[i].y : p[i].y; };
  auto below = [&](const Rational& lhs, const Rational& rhs) { return strict ? lhs < rhs : lhs <= rhs; };

  struct Candidate {
    std::size_t index;
    Rational value;
    Rational bound;  // max over [a, c_{k+1}] for a, min over [c_k, b] for b
  };

  Rational lap_min = v(ka);
  Rational lap_max = v(ka);
  for (std::size_t i = ka + 1; i <= kb; ++i) {
    Rational vi = v(i);
    if (vi < lap_min) lap_min = vi;
    if (lap_max < vi) lap_max = vi;
  }

  std::vector<Candidate> as;
  {
    Rational mn = lap_min;
    Rational mx = lap_max;
    for (std::size_t i = ka; i-- > 0;) {
      Rational vi = v(i);
      if (below(vi, mn)) as.push_back({i, vi, max(mx, vi)});
      if (vi < mn) mn = vi;
      if (mx < vi) mx = vi;
    }
  }
  std::vector<Candidate> bs;
  {
    Rational mn = lap_min;
    Rational mx = lap_max;
    for (std::size_t j = kb + 1; j < p.size(); ++j) {
      Rational vj = v(j);
      if (below(mx, vj)) bs.push_back({j, vj, min(mn, vj)});
      if (vj < mn) mn = vj;
      if (mx < vj) mx = vj;
    }
  }
  if (as.empty() || bs.empty()) return std::nullopt;

  // Along `as` the values fall and the max bound rises; along `bs` the values
  // rise and the min bound falls. For each a the admissible b form a prefix
  // of `bs`, whose last element is the best chance for the max condition.
  std::size_t prefix = 0;
  for (const auto& a : as) {
    while (prefix < bs.size() && below(a.value, bs[prefix].bound)) ++prefix;
    if (prefix == 0) continue;
    const auto& b = bs[prefix - 1];
    if (below(a.bound, b.value)) return ZigzagWitness{p[a.index].x, p[b.index].x};
  }
  return std::nullopt;
}

bool witness_holds(const PLMap& f, const Lap& lap, const ZigzagWitness& w, const ZigzagOptions& options) {
  if (!(w.a < lap.left && lap.right < w.b)) return false;
  if (w.a < kZero || w.b > kOne) return false;
  const bool strict = options.attainment == Attainment::strict;
  const Rational fa = f.eval(w.a);
  const Rational fb = f.eval(w.b);
  const bool min_at_a = lap.direction == Direction::decreasing;
  const Rational& lo = min_at_a ? fa : fb;
  const Rational& hi = min_at_a ? fb : fa;
  if (!(lo < hi)) return false;
  for (const auto& q : f.breakpoints()) {
    if (q.x <= w.a || q.x >= w.b) continue;
    if (strict ? (q.y <= lo || q.y >= hi) : (q.y < lo || q.y > hi)) return false;
  }
  return true;
}

ZigzagVerdict is_in_zigzag(const PLMap& f, const Rational& y, const ZigzagOptions& options) {
  if (y < kZero || y > kOne) fail(ErrorCode::domain, "zigzag query point " + y.str() + " is outside [0,1]");
  const auto ls = laps(f);
  ZigzagVerdict verdict;
  for (std::size_t idx : laps_containing(ls, y)) {
    LapCheck check;
    check.lap = ls[idx];
    check.outer = idx == 0 || idx + 1 == ls.size();
    if (!check.outer) check.witness = find_lap_witness(f, ls, idx, options);
    if (!check.witness && !verdict.failing_lap) verdict.failing_lap = check.lap;
    verdict.applicable_laps.push_back(std::move(check));
  }
  verdict.in_zigzag = !verdict.failing_lap.has_value();
  return verdict;
}

std::vector<OpenInterval> zigzag_set(const PLMap& f, const ZigzagOptions& options) {
  const auto ls = laps(f);
  std::vector<OpenInterval> out;
  bool extend = false;
  for (std::size_t k = 1; k + 1 < ls.size(); ++k) {
    if (!find_lap_witness(f, ls, k, options)) {
      extend = false;
      continue;
    }
    // Adjacent witnessed laps share a critical point that is itself in a
    // zigzag, so their open intervals merge.
    if (extend)
      out.back().hi = ls[k].right;
    else
      out.push_back({ls[k].left, ls[k].right});
    extend = true;
  }
  return out;
}

bool remark_no_zigzag(const PLMap& f, std::size_t lap_index) {
  const auto ls = laps(f);
  if (lap_index == 0 || lap_index + 1 >= ls.size())
    fail(ErrorCode::invalid_argument, "lap index " + std::to_string(lap_index) + " is not an interior lap");
  return is_extreme_value(f.eval(ls[lap_index].left)) || is_extreme_value(f.eval(ls[lap_index].right));
}

namespace {

bool attains_in_open(const PLMap& f, const Rational& level, const Rational& a, const Rational& b) {
  for (const auto& x : level_crossings(f, level))
    if (a < x && x < b) return true;
  return false;
}

}  // namespace

bool not_in_zigzag_witness_holds(const PLMap& f, const Rational& y, const NotInZigzagWitness& w) {
  if (!(w.a < w.b) || w.a < kZero || w.b > kOne) return false;
  if (!(w.a <= y && y <= w.b)) return false;
  const Rational fa = f.eval(w.a);
  const Rational fb = f.eval(w.b);
  if (attains_in_open(f, fa, w.a, w.b) || attains_in_open(f, fb, w.a, w.b)) return false;
  if (w.which == WitnessCase::left_extreme) return is_extreme_value(fa) && is_injective_on(f, y, w.b);
  return is_extreme_value(fb) && is_injective_on(f, w.a, y);
}

std::optional<NotInZigzagWitness> lemma_witness(const PLMap& f, const Rational& y) {
  if (y < kZero || y > kOne) fail(ErrorCode::domain, "query point " + y.str() + " is outside [0,1]");
  const auto ls = laps(f);
  std::vector<Rational> extremes = level_crossings(f, kZero);
  for (auto& x : level_crossings(f, kOne)) extremes.push_back(std::move(x));
  std::sort(extremes.begin(), extremes.end());

  // Maximal stretch to the right / left of y on which f stays injective.
  const auto around = laps_containing(ls, y);
  const Rational right_end = ls[around.back()].right;
  const Rational left_end = ls[around.front()].left;
  const auto& p = f.breakpoints();

  // a: extreme-valued points at or left of y, nearest first.
  for (auto it = std::upper_bound(extremes.begin(), extremes.end(), y); it != extremes.begin();) {
    const Rational& a = *--it;
    std::vector<Rational> bs{right_end};
    for (std::size_t i = p.size(); i-- > 0;)
      if (y <= p[i].x && p[i].x < right_end) bs.push_back(p[i].x);
    for (const auto& b : bs) {
      if (!(a < b)) continue;
      NotInZigzagWitness w{a, b, WitnessCase::left_extreme};
      if (not_in_zigzag_witness_holds(f, y, w)) return w;
    }
  }
  // b: extreme-valued points at or right of y, nearest first.
  for (auto it = std::lower_bound(extremes.begin(), extremes.end(), y); it != extremes.end(); ++it) {
    const Rational& b = *it;
    std::vector<Rational> as{left_end};
    for (const auto& q : p)
      if (left_end < q.x && q.x <= y) as.push_back(q.x);
    for (const auto& a : as) {
      if (!(a < b)) continue;
      NotInZigzagWitness w{a, b, WitnessCase::right_extreme};
      if (not_in_zigzag_witness_holds(f, y, w)) return w;
    }
  }
  return std::nullopt;
}

std::vector<Rational> composition_property_check(const PLMap& f, const PLMap& g, std::span<const Rational> samples,
                                                 const ZigzagOptions& options) {
  const PLMap gf = compose(g, f);
  std::vector<Rational> violations;
  for (const auto& y : samples) {
    if (!is_in_zigzag(gf, y, options).in_zigzag) continue;
    if (is_in_zigzag(f, y, options).in_zigzag) continue;
    if (is_in_zigzag(g, f.eval(y), options).in_zigzag) continue;
    violations.push_back(y);
  }
  return violations;
}

std::vector<Rational> lap_midpoints(const PLMap& f) {
  std::vector<Rational> out;
  for (const auto& l : laps(f)) out.push_back((l.left + l.right) / Rational(2));
  return out;
}

}  // namespace pliml
