#include "pliml/plmap.hpp"

#include <algorithm>
#include <sstream>

#include "pliml/error.hpp"

namespace pliml {

namespace {

const Rational kZero(0);
const Rational kOne(1);

bool collinear(const Point& a, const Point& b, const Point& c) {
  return (b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x);
}

// Pushes p, dropping the previous point whenever it became a collinear
// interior point.
void push_merged(std::vector<Point>& out, Point p) {
  while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) out.pop_back();
  out.push_back(std::move(p));
}

std::vector<Point> merge_collinear(std::vector<Point> points) {
  std::vector<Point> out;
  out.reserve(points.size());
  for (auto& p : points) push_merged(out, std::move(p));
  return out;
}

int slope_sign(const Point& a, const Point& b) { return (b.y - a.y).sign(); }

}  // namespace

PLMap::PLMap() : points_{{kZero, kZero}, {kOne, kOne}} {}

PLMap PLMap::identity() { return PLMap(); }

PLMap PLMap::make(std::vector<Point> points) {
  if (points.size() < 2) fail(ErrorCode::domain, "a map needs at least two breakpoints");
  if (points.front().x != kZero || points.back().x != kOne)
    fail(ErrorCode::domain, "breakpoints must span the domain [0,1]");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.y < kZero || p.y > kOne)
      fail(ErrorCode::domain, "value " + p.y.str() + " at x=" + p.x.str() + " is outside [0,1]");
    if (i == 0) continue;
    if (!(points[i - 1].x < p.x))
      fail(ErrorCode::domain, "breakpoint x-coordinates must be strictly increasing (at x=" + p.x.str() + ")");
    if (points[i - 1].y == p.y)
      fail(ErrorCode::domain, "constant segment on [" + points[i - 1].x.str() + "," + p.x.str() + "]");
  }
  return PLMap(merge_collinear(std::move(points)));
}

PLMap make_plmap(std::vector<Point> points) { return PLMap::make(std::move(points)); }

PLMap from_trusted_points(std::vector<Point> points) { return PLMap(merge_collinear(std::move(points))); }

std::size_t PLMap::segment_of(const Rational& x) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), x,
                             [](const Rational& v, const Point& p) { return v < p.x; });
  std::size_t idx = static_cast<std::size_t>(it - points_.begin());
  if (idx == 0) return 0;
  return std::min(idx - 1, points_.size() - 2);
}

Rational PLMap::eval(const Rational& x) const {
  if (x < kZero || x > kOne) fail(ErrorCode::domain, "evaluation point " + x.str() + " is outside [0,1]");
  const std::size_t i = segment_of(x);
  const Point& a = points_[i];
  const Point& b = points_[i + 1];
  if (x == a.x) return a.y;
  if (x == b.x) return b.y;
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

PLMap compose(const PLMap& outer, const PLMap& inner, const Limits& limits) {
  const auto& op = outer.points_;
  const auto& ip = inner.points_;
  std::vector<Point> out;
  out.reserve(ip.size() + op.size());

  auto outer_lower = [&](const Rational& v) {
    return static_cast<std::size_t>(
        std::upper_bound(op.begin(), op.end(), v, [](const Rational& a, const Point& p) { return a < p.x; }) -
        op.begin());
  };
  auto outer_upper = [&](const Rational& v) {
    return static_cast<std::size_t>(
        std::lower_bound(op.begin(), op.end(), v, [](const Point& p, const Rational& a) { return p.x < a; }) -
        op.begin());
  };

  for (std::size_t i = 0; i + 1 < ip.size(); ++i) {
    const Point& a = ip[i];
    const Point& b = ip[i + 1];
    push_merged(out, {a.x, outer.eval(a.y)});
    // Outer breakpoints strictly inside the segment's range, in x order.
    const bool rising = a.y < b.y;
    const Rational& lo = rising ? a.y : b.y;
    const Rational& hi = rising ? b.y : a.y;
    const std::size_t first = outer_lower(lo);
    const std::size_t last = outer_upper(hi);  // exclusive
    if (first >= last) continue;
    const Rational dx_dy = (b.x - a.x) / (b.y - a.y);
    auto emit = [&](std::size_t k) {
      push_merged(out, {a.x + (op[k].x - a.y) * dx_dy, op[k].y});
    };
    if (rising) {
      for (std::size_t k = first; k < last; ++k) emit(k);
    } else {
      for (std::size_t k = last; k-- > first;) emit(k);
    }
    if (out.size() > limits.breakpoint_budget)
      fail(ErrorCode::budget_exceeded,
           "composition exceeds the breakpoint budget of " + std::to_string(limits.breakpoint_budget));
  }
  push_merged(out, {ip.back().x, outer.eval(ip.back().y)});
  return PLMap(std::move(out));
}

PLMap iterate(const PLMap& f, unsigned n, const Limits& limits) {
  if (n == 0) fail(ErrorCode::invalid_argument, "iterates start at 1");
  PLMap result = f;
  for (unsigned k = 1; k < n; ++k) result = compose(f, result, limits);
  return result;
}

std::vector<Lap> laps(const PLMap& f) {
  const auto& p = f.breakpoints();
  std::vector<Lap> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    if (slope_sign(p[i - 1], p[i]) != slope_sign(p[i], p[i + 1])) {
      out.push_back({p[start].x, p[i].x, slope_sign(p[i - 1], p[i]) > 0 ? Direction::increasing : Direction::decreasing});
      start = i;
    }
  }
  const std::size_t n = p.size();
  out.push_back({p[start].x, p[n - 1].x,
                 slope_sign(p[n - 2], p[n - 1]) > 0 ? Direction::increasing : Direction::decreasing});
  return out;
}

std::vector<Rational> critical_set(const PLMap& f, bool include_endpoints) {
  std::vector<Rational> out;
  if (include_endpoints) out.push_back(kZero);
  const auto ls = laps(f);
  for (std::size_t i = 1; i < ls.size(); ++i) out.push_back(ls[i].left);
  if (include_endpoints) out.push_back(kOne);
  return out;
}

std::vector<Rational> level_crossings(const PLMap& f, const Rational& c) {
  const auto& p = f.breakpoints();
  std::vector<Rational> out;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const Point& a = p[i];
    const Point& b = p[i + 1];
    if (c < min(a.y, b.y) || c > max(a.y, b.y)) continue;
    Rational x = c == a.y ? a.x : (c == b.y ? b.x : a.x + (c - a.y) * (b.x - a.x) / (b.y - a.y));
    if (out.empty() || out.back() != x) out.push_back(std::move(x));
  }
  return out;
}

bool is_onto(const PLMap& f) {
  bool has_zero = false;
  bool has_one = false;
  for (const auto& p : f.breakpoints()) {
    has_zero |= p.y == kZero;
    has_one |= p.y == kOne;
  }
  return has_zero && has_one;
}

Interval image(const PLMap& f, const Interval& j) {
  Rational lo = f.eval(j.lo);
  Rational hi = lo;
  auto widen = [&](const Rational& v) {
    if (v < lo) lo = v;
    if (hi < v) hi = v;
  };
  widen(f.eval(j.hi));
  const auto& p = f.breakpoints();
  for (std::size_t i = f.segment_of(j.lo) + 1; i < p.size() && p[i].x < j.hi; ++i) widen(p[i].y);
  return {lo, hi};
}

bool is_injective_on(const PLMap& f, const Rational& lo, const Rational& hi) {
  for (const auto& c : critical_set(f))
    if (lo < c && c < hi) return false;
  return true;
}

PLMap parse_map(std::string_view text) {
  std::vector<Point> points;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string xs, ys, extra;
    if (!(fields >> xs)) continue;
    if (!(fields >> ys) || (fields >> extra))
      fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected exactly two rationals");
    try {
      points.push_back({Rational::parse(xs), Rational::parse(ys)});
    } catch (const Error& e) {
      fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return PLMap::make(std::move(points));
}

std::string to_text(const PLMap& f) {
  std::string out;
  for (const auto& p : f.breakpoints()) {
    out += p.x.str();
    out += ' ';
    out += p.y.str();
    out += '\n';
  }
  return out;
}

}  // namespace pliml
