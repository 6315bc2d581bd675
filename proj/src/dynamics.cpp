#include "pliml/dynamics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pliml/error.hpp"

namespace pliml {

namespace {

const Rational kZero(0);
const Rational kOne(1);

Interval lap_image(const PLMap& f, const Lap& lap) {
  Rational l = f.eval(lap.left);
  Rational r = f.eval(lap.right);
  return l < r ? Interval{l, r} : Interval{r, l};
}

Rational min_abs_slope(const PLMap& f) {
  const auto& p = f.breakpoints();
  Rational best = abs((p[1].y - p[0].y) / (p[1].x - p[0].x));
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    Rational s = abs((p[i + 1].y - p[i].y) / (p[i + 1].x - p[i].x));
    if (s < best) best = s;
  }
  return best;
}

Rational min_lap_length(const PLMap& f) {
  const auto ls = laps(f);
  Rational best = ls.front().right - ls.front().left;
  for (const auto& l : ls) best = min(best, l.right - l.left);
  return best;
}

// J_i = [i eps/4, i eps/4 + eps/2] clipped to [0,1].
std::vector<Interval> quarter_shift_cover(const Rational& eps) {
  std::vector<Interval> cover;
  const Rational step = eps / Rational(4);
  const Rational width = eps / Rational(2);
  for (std::int64_t i = 0;; ++i) {
    Rational lo = step * Rational(i);
    Rational hi = min(lo + width, kOne);
    cover.push_back({lo, hi});
    if (hi == kOne) break;
  }
  return cover;
}

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix multiply(const BoolMatrix& a, const BoolMatrix& b) {
  const std::size_t n = a.size();
  BoolMatrix c(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (b[k][j]) c[i][j] = true;
  return c;
}

}  // namespace

const char* to_string(Decision d) noexcept {
  switch (d) {
    case Decision::no: return "no";
    case Decision::yes: return "yes";
    case Decision::indeterminate: return "indeterminate";
  }
  return "?";
}

const char* to_string(GapSide side) noexcept { return side == GapSide::left ? "left-gap" : "right-gap"; }

BranchResult branch(const PLMap& f, const Rational& y) {
  if (y < kZero || y > kOne) fail(ErrorCode::domain, "branch point " + y.str() + " is outside [0,1]");
  const auto ls = laps(f);
  auto it = std::upper_bound(ls.begin(), ls.end(), y, [](const Rational& v, const Lap& l) { return v < l.left; });
  const std::size_t idx = static_cast<std::size_t>(it - ls.begin()) - 1;
  BranchResult out;
  if (idx > 0 && ls[idx].left == y) {
    const Lap& left = ls[idx - 1];
    const Lap& right = ls[idx];
    const Interval left_image = lap_image(f, left);
    const Interval right_image = lap_image(f, right);
    out.at_critical = true;
    out.tie_rule_applied = left_image == right_image;
    const bool take_left = right_image.contains(left_image);
    const Lap& chosen = take_left ? left : right;
    out.domain = {chosen.left, chosen.right};
    out.branch = take_left ? left_image : right_image;
    return out;
  }
  out.domain = {ls[idx].left, ls[idx].right};
  out.branch = lap_image(f, ls[idx]);
  return out;
}

bool OrbitTable::all_closed() const {
  return std::all_of(orbits.begin(), orbits.end(), [](const CriticalOrbit& o) { return o.closed; });
}

OrbitTable post_critical_orbits(const PLMap& f, const OrbitBudget& budget) {
  OrbitTable table;
  for (const auto& c : critical_set(f, true)) {
    CriticalOrbit entry;
    entry.point = c;
    std::map<Rational, std::size_t> seen;
    Rational x = c;
    for (std::size_t step = 0; step <= budget.max_steps; ++step) {
      auto [pos, inserted] = seen.emplace(x, step);
      if (!inserted) {
        entry.closed = true;
        entry.preperiod = pos->second;
        entry.period = step - pos->second;
        break;
      }
      entry.orbit.push_back(x);
      x = f.eval(x);
    }
    table.orbits.push_back(std::move(entry));
  }
  return table;
}

Decision is_post_critically_finite(const PLMap& f, const OrbitBudget& budget) {
  return post_critical_orbits(f, budget).all_closed() ? Decision::yes : Decision::indeterminate;
}

std::optional<MarkovPartition> markov_partition(const PLMap& f, const OrbitBudget& budget) {
  return markov_partition(f, post_critical_orbits(f, budget));
}

std::optional<MarkovPartition> markov_partition(const PLMap& f, const OrbitTable& table) {
  if (!table.all_closed()) return std::nullopt;
  std::set<Rational> points;
  for (const auto& o : table.orbits) points.insert(o.orbit.begin(), o.orbit.end());
  MarkovPartition mp;
  mp.points.assign(points.begin(), points.end());
  const std::size_t cells = mp.points.size() - 1;
  mp.transitions.assign(cells, std::vector<bool>(cells, false));
  for (std::size_t u = 0; u < cells; ++u) {
    const Interval img = image(f, {mp.points[u], mp.points[u + 1]});
    for (std::size_t v = 0; v < cells; ++v)
      mp.transitions[u][v] = img.contains(Interval{mp.points[v], mp.points[v + 1]});
  }
  return mp;
}

bool is_primitive(const BoolMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) return false;
  // M^k > 0 for all k >= n^2 - 2n + 2 when M is primitive, and never otherwise.
  std::uint64_t exponent = static_cast<std::uint64_t>(n) * n - 2 * n + 2;
  BoolMatrix result;
  BoolMatrix base = matrix;
  bool have_result = false;
  while (exponent > 0) {
    if (exponent & 1U) {
      result = have_result ? multiply(result, base) : base;
      have_result = true;
    }
    exponent >>= 1U;
    if (exponent > 0) base = multiply(base, base);
  }
  for (const auto& row : result)
    for (bool cell : row)
      if (!cell) return false;
  return true;
}

Interval iterated_image(const PLMap& f, Interval j, unsigned n) {
  for (unsigned k = 0; k < n; ++k) j = image(f, j);
  return j;
}

Decision leo_by_image_iteration(const PLMap& f, unsigned depth) {
  if (!is_onto(f)) return Decision::no;
  bool all_reached = true;
  for (auto j : quarter_shift_cover(min_lap_length(f))) {
    std::vector<Interval> history{j};
    bool reached = j.is_unit();
    for (unsigned k = 0; k < depth && !reached; ++k) {
      j = image(f, j);
      if (j.is_unit()) {
        reached = true;
        break;
      }
      if (std::find(history.begin(), history.end(), j) != history.end()) return Decision::no;
      history.push_back(j);
    }
    all_reached &= reached;
  }
  if (all_reached && min_abs_slope(f) > Rational(2)) return Decision::yes;
  return Decision::indeterminate;
}

Decision is_leo(const PLMap& f, const LeoOptions& options) {
  if (!is_onto(f)) return Decision::no;
  return is_leo(f, post_critical_orbits(f, options.orbit_budget), options);
}

Decision is_leo(const PLMap& f, const OrbitTable& table, const LeoOptions& options) {
  if (!is_onto(f)) return Decision::no;
  if (auto mp = markov_partition(f, table)) {
    if (!is_primitive(mp->transitions)) return Decision::no;
    if (min_abs_slope(f) > kOne) return Decision::yes;
  }
  return leo_by_image_iteration(f, options.fallback_depth);
}

unsigned leo_uniform_N(const PLMap& f, const Rational& eps, const LeoBudget& budget) {
  if (eps.sign() <= 0) fail(ErrorCode::invalid_argument, "eps must be positive");
  unsigned worst = 1;
  for (auto j : quarter_shift_cover(eps)) {
    unsigned n = 0;
    do {
      j = image(f, j);
      ++n;
      if (n > budget.max_iterations)
        fail(ErrorCode::budget_exceeded, "interval [" + j.lo.str() + "," + j.hi.str() + "] not onto after " +
                                             std::to_string(budget.max_iterations) + " iterations");
    } while (!j.is_unit());
    worst = std::max(worst, n);
  }
  return worst;
}

StabilizationData branch_stabilization(const PLMap& f, const BackwardOrbit& orbit,
                                       const StabilizationOptions& options) {
  if (!is_onto(f)) fail(ErrorCode::precondition, "map is not onto");
  if (is_post_critically_finite(f, options.leo.orbit_budget) != Decision::yes)
    fail(ErrorCode::precondition, "map is not verifiably post-critically finite at this budget");
  const Decision leo = is_leo(f, options.leo);
  if (leo == Decision::no) fail(ErrorCode::precondition, "map is not leo");
  if (leo == Decision::indeterminate) fail(ErrorCode::precondition, "leo property could not be decided");
  orbit.validate(f);

  const std::uint64_t start = orbit.preperiod();
  const std::uint64_t period = orbit.period();
  std::vector<PLMap> iterates{f};
  auto power = [&](unsigned j) -> const PLMap& {
    while (iterates.size() < j) iterates.push_back(compose(f, iterates.back(), options.limits));
    return iterates[j - 1];
  };

  // B(f^j, x_{i+j}) shrinks with j; it is taken as stable once it stays put
  // across one full period of the orbit.
  Interval settled;
  unsigned depth = 0;
  {
    Interval previous = branch(power(1), orbit.at(start + 1)).branch;
    unsigned run_start = 1;
    for (unsigned j = 2;; ++j) {
      if (j > options.max_depth)
        fail(ErrorCode::budget_exceeded, "branches did not stabilize within depth " + std::to_string(options.max_depth));
      Interval current = branch(power(j), orbit.at(start + j)).branch;
      if (!previous.contains(current))
        fail(ErrorCode::internal, "branch nesting violated at depth " + std::to_string(j));
      if (current != previous) run_start = j;
      previous = current;
      if (j - run_start >= period) {
        settled = current;
        depth = run_start;
        break;
      }
    }
  }

  StabilizationData data;
  data.a = settled.lo;
  data.b = settled.hi;
  data.first_index = start;
  data.stabilization_depth = depth;

  const Rational& x = orbit.at(start);
  const Rational left_gap = x - data.a;
  const Rational right_gap = data.b - x;
  Rational gap;
  if (left_gap.sign() > 0) {
    data.side = GapSide::left;
    gap = left_gap;
  } else if (right_gap.sign() > 0) {
    data.side = GapSide::right;
    gap = right_gap;
  } else {
    fail(ErrorCode::internal, "degenerate branch [" + data.a.str() + "," + data.b.str() + "]");
  }
  data.epsilon = min(gap, data.b - data.a) / Rational(2);
  data.leo_depth = leo_uniform_N(f, data.epsilon / Rational(2));

  const std::uint64_t floor = std::max<std::uint64_t>(data.leo_depth, depth);
  data.step = (floor / period + 1) * period;
  return data;
}

bool stabilization_holds(const PLMap& f, const BackwardOrbit& orbit, const StabilizationData& data,
                         std::size_t stages, const Limits& limits) {
  if (!(data.a < data.b) || data.epsilon.sign() <= 0 || data.step == 0) return false;
  const PLMap block = iterate(f, static_cast<unsigned>(data.step), limits);
  const Interval ab{data.a, data.b};
  const std::size_t count = stages + orbit.period();
  for (std::size_t i = 0; i <= count; ++i) {
    const Rational& x = orbit.at(data.n(i));
    if (data.side == GapSide::left ? x < data.a + data.epsilon : x > data.b - data.epsilon) return false;
    if (i >= 1 && branch(block, x).branch != ab) return false;
  }
  for (const auto& j : quarter_shift_cover(data.epsilon / Rational(2)))
    if (!image(block, j).is_unit()) return false;
  return true;
}

}  // namespace pliml
