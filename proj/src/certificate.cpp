#include "pliml/certificate.hpp"

#include <map>
#include <tuple>

#include <json.hpp>

#include "pliml/error.hpp"

namespace pliml {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFormat = "pliml-certificate/1";

std::string q(const Rational& r) { return r.numerator_str() + "/" + r.denominator_str(); }

Rational rational_at(const Json& j, const char* what) {
  if (!j.is_string()) fail(ErrorCode::parse, std::string("certificate: ") + what + " must be a rational string");
  return Rational::parse(j.get<std::string>());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::parse, std::string("certificate: missing field '") + key + "'");
  return j.at(key);
}

std::uint64_t unsigned_at(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) fail(ErrorCode::parse, std::string("certificate: '") + key + "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(q(r));
  return out;
}

std::vector<Rational> rationals_from(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::parse, std::string("certificate: ") + what + " must be an array");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_at(e, what));
  return out;
}

Json map_json(const PLMap& f) {
  Json out = Json::array();
  for (const auto& p : f.breakpoints()) out.push_back(Json::array({q(p.x), q(p.y)}));
  return out;
}

PLMap map_from(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::parse, "certificate: map must be an array of [x, y] pairs");
  std::vector<Point> points;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) fail(ErrorCode::parse, "certificate: map point must be [x, y]");
    points.push_back({rational_at(e[0], "map x"), rational_at(e[1], "map y")});
  }
  return make_plmap(std::move(points));
}

const char* direction_name(Direction d) { return d == Direction::increasing ? "increasing" : "decreasing"; }

Direction direction_from(const Json& j) {
  const auto s = j.get<std::string>();
  if (s == "increasing") return Direction::increasing;
  if (s == "decreasing") return Direction::decreasing;
  fail(ErrorCode::parse, "certificate: unknown lap direction '" + s + "'");
}

Json lap_json(const Lap& lap) {
  return Json{{"left", q(lap.left)}, {"right", q(lap.right)}, {"direction", direction_name(lap.direction)}};
}

Lap lap_from(const Json& j) {
  return {rational_at(field(j, "left"), "lap left"), rational_at(field(j, "right"), "lap right"),
          direction_from(field(j, "direction"))};
}

Json verdict_json(const ZigzagVerdict& v) {
  Json laps = Json::array();
  for (const auto& c : v.applicable_laps) {
    Json entry = lap_json(c.lap);
    entry["outer"] = c.outer;
    entry["witness"] = c.witness ? Json{{"a", q(c.witness->a)}, {"b", q(c.witness->b)}} : Json(nullptr);
    laps.push_back(std::move(entry));
  }
  return Json{{"in_zigzag", v.in_zigzag},
              {"applicable_laps", std::move(laps)},
              {"failing_lap", v.failing_lap ? lap_json(*v.failing_lap) : Json(nullptr)}};
}

ZigzagVerdict verdict_from(const Json& j) {
  ZigzagVerdict v;
  v.in_zigzag = field(j, "in_zigzag").get<bool>();
  for (const auto& e : field(j, "applicable_laps")) {
    LapCheck c;
    c.lap = lap_from(e);
    c.outer = field(e, "outer").get<bool>();
    const Json& w = field(e, "witness");
    if (!w.is_null()) c.witness = ZigzagWitness{rational_at(field(w, "a"), "witness a"), rational_at(field(w, "b"), "witness b")};
    v.applicable_laps.push_back(std::move(c));
  }
  const Json& failing = field(j, "failing_lap");
  if (!failing.is_null()) v.failing_lap = lap_from(failing);
  return v;
}

class MapTable {
public:
  std::string add(const PLMap* m) {
    auto it = ids_.find(m);
    if (it != ids_.end()) return it->second;
    std::string id = "m" + std::to_string(ids_.size());
    ids_.emplace(m, id);
    json_[id] = map_json(*m);
    return id;
  }
  Json take() { return std::move(json_); }

private:
  std::map<const PLMap*, std::string> ids_;
  Json json_ = Json::object();
};

bool is_identity_on(const PLMap& f, const Rational& lo, const Rational& hi) {
  if (f.eval(lo) != lo || f.eval(hi) != hi) return false;
  for (const auto& p : f.breakpoints())
    if (lo <= p.x && p.x <= hi && p.y != p.x) return false;
  return true;
}

}  // namespace

std::string certificate_to_json(const Certificate& c) {
  MapTable table;
  Json out;
  out["format"] = kFormat;
  out["pipeline"] = to_string(c.pipeline);
  out["map"] = table.add(&c.map);
  out["orbit"] = Json{{"prefix", rationals(c.orbit.prefix())}, {"period", rationals(c.orbit.period_block())}};
  if (c.stabilization) {
    const auto& s = *c.stabilization;
    out["stabilization"] = Json{{"a", q(s.a)},
                                {"b", q(s.b)},
                                {"epsilon", q(s.epsilon)},
                                {"side", to_string(s.side)},
                                {"stabilization_depth", s.stabilization_depth},
                                {"leo_depth", s.leo_depth}};
  } else {
    out["stabilization"] = nullptr;
  }
  out["n_sequence"] = Json{{"first_index", c.first_index}, {"step", c.step}};
  Json stages = Json::array();
  for (std::size_t i = 0; i < c.stages.size(); ++i) {
    const Stage& st = c.stages[i];
    Json s;
    s["index"] = i + 1;
    s["n"] = st.n;
    s["case"] = to_string(st.pair.kind);
    s["beta"] = q(st.pair.beta);
    s["s"] = table.add(st.pair.s.get());
    s["t"] = table.add(st.pair.t.get());
    s["g"] = st.g ? Json(table.add(st.g.get())) : Json(nullptr);
    s["orbit_value"] = q(st.orbit_value);
    s["coordinate"] = q(st.coordinate);
    s["zigzag_verdict"] = st.verdict ? verdict_json(*st.verdict) : Json(nullptr);
    s["ok"] = st.ok;
    s["failure"] = st.failure;
    stages.push_back(std::move(s));
  }
  out["stages"] = std::move(stages);
  out["repeat_index"] = c.repeat_index;
  out["repeat_period"] = c.repeat_period;
  out["result"] = Json{{"passed", c.passed},
                       {"first_failing_stage", c.first_failing_stage ? Json(*c.first_failing_stage) : Json(nullptr)},
                       {"failure", c.failure}};
  out["maps"] = table.take();
  return out.dump(2) + "\n";
}

Certificate certificate_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::parse, std::string("certificate: ") + e.what());
  }
  try {
    if (field(j, "format") != kFormat) fail(ErrorCode::parse, "certificate: unsupported format");
    std::map<std::string, std::shared_ptr<const PLMap>> maps;
    for (const auto& [id, m] : field(j, "maps").items()) maps[id] = std::make_shared<const PLMap>(map_from(m));
    auto lookup = [&](const Json& id) {
      auto it = maps.find(id.get<std::string>());
      if (it == maps.end()) fail(ErrorCode::parse, "certificate: unknown map id " + id.dump());
      return it->second;
    };

    Certificate c;
    const auto pipeline = field(j, "pipeline").get<std::string>();
    if (pipeline == "minc") c.pipeline = Pipeline::minc;
    else if (pipeline == "general") c.pipeline = Pipeline::general;
    else fail(ErrorCode::parse, "certificate: unknown pipeline '" + pipeline + "'");
    c.map = *lookup(field(j, "map"));
    const Json& orbit = field(j, "orbit");
    c.orbit = BackwardOrbit(rationals_from(field(orbit, "prefix"), "orbit prefix"),
                            rationals_from(field(orbit, "period"), "orbit period"));

    const Json& n = field(j, "n_sequence");
    c.first_index = unsigned_at(n, "first_index");
    c.step = unsigned_at(n, "step");
    const Json& stab = field(j, "stabilization");
    if (!stab.is_null()) {
      StabilizationData s;
      s.a = rational_at(field(stab, "a"), "a");
      s.b = rational_at(field(stab, "b"), "b");
      s.epsilon = rational_at(field(stab, "epsilon"), "epsilon");
      const auto side = field(stab, "side").get<std::string>();
      if (side == "left-gap") s.side = GapSide::left;
      else if (side == "right-gap") s.side = GapSide::right;
      else fail(ErrorCode::parse, "certificate: unknown gap side '" + side + "'");
      s.stabilization_depth = static_cast<unsigned>(unsigned_at(stab, "stabilization_depth"));
      s.leo_depth = static_cast<unsigned>(unsigned_at(stab, "leo_depth"));
      s.first_index = c.first_index;
      s.step = c.step;
      c.stabilization = s;
    }

    for (const auto& e : field(j, "stages")) {
      Stage st;
      st.n = unsigned_at(e, "n");
      const auto kind = field(e, "case").get<std::string>();
      if (kind == "case1") st.pair.kind = FactorCase::case1;
      else if (kind == "case2") st.pair.kind = FactorCase::case2;
      else fail(ErrorCode::parse, "certificate: unknown case '" + kind + "'");
      st.pair.beta = rational_at(field(e, "beta"), "beta");
      st.pair.s = lookup(field(e, "s"));
      st.pair.t = lookup(field(e, "t"));
      if (!field(e, "g").is_null()) st.g = lookup(field(e, "g"));
      st.orbit_value = rational_at(field(e, "orbit_value"), "orbit_value");
      st.coordinate = rational_at(field(e, "coordinate"), "coordinate");
      if (!field(e, "zigzag_verdict").is_null()) st.verdict = verdict_from(field(e, "zigzag_verdict"));
      st.ok = field(e, "ok").get<bool>();
      st.failure = field(e, "failure").get<std::string>();
      c.stages.push_back(std::move(st));
    }
    c.repeat_index = unsigned_at(j, "repeat_index");
    c.repeat_period = unsigned_at(j, "repeat_period");
    const Json& result = field(j, "result");
    c.passed = field(result, "passed").get<bool>();
    if (!field(result, "first_failing_stage").is_null()) c.first_failing_stage = unsigned_at(result, "first_failing_stage");
    c.failure = field(result, "failure").get<std::string>();
    return c;
  } catch (const Json::exception& e) {
    fail(ErrorCode::parse, std::string("certificate: ") + e.what());
  }
}

VerifyReport verify_certificate(const Certificate& c, const Limits& limits) {
  VerifyReport report;
  auto problem = [&](std::string what) { report.problems.push_back(std::move(what)); };
  try {
    if (!c.orbit.is_valid_for(c.map)) problem("orbit is not a backward orbit of the map");
    if (c.pipeline == Pipeline::minc) {
      if (c.map != minc_map()) problem("minc certificate for a different map");
      if (c.first_index != 0 || c.step != 2) problem("minc certificate must use n_i = 2i");
    } else if (!c.stabilization) {
      problem("general certificate without stabilization data");
    } else if (c.stabilization->first_index != c.first_index || c.stabilization->step != c.step) {
      problem("n-sequence differs from the stabilization data");
    }
    if (c.step == 0) fail(ErrorCode::invalid_argument, "step must be positive");

    const PLMap block = iterate(c.map, static_cast<unsigned>(c.step), limits);
    const StageRepeat repeat = stage_repeat(c.orbit, c.first_index, c.step);
    if (repeat.index != c.repeat_index || repeat.period != c.repeat_period)
      problem("repeat block should start at stage " + std::to_string(repeat.index) + " with period " +
              std::to_string(repeat.period));
    if (c.stages.size() < repeat.index + repeat.period) problem("stages stop before the repeat block closes");

    std::map<std::pair<const PLMap*, const PLMap*>, bool> factor_checked;
    std::map<std::tuple<const PLMap*, const PLMap*, const PLMap*>, bool> g_checked;
    std::map<std::pair<const PLMap*, Rational>, ZigzagVerdict> verdicts;
    bool all_ok = true;
    for (std::size_t i = 1; i <= c.stages.size(); ++i) {
      const Stage& st = c.stages[i - 1];
      const std::string tag = "stage " + std::to_string(i) + ": ";
      const PLMap& s = *st.pair.s;
      const PLMap& t = *st.pair.t;
      if (st.n != c.first_index + i * c.step) problem(tag + "n does not follow the n-sequence");
      if (st.orbit_value != c.orbit.at(st.n)) problem(tag + "orbit value differs from x_n");

      auto key = std::make_pair(&s, &t);
      if (!factor_checked.count(key)) factor_checked[key] = compose(t, s, limits) == block;
      if (!factor_checked[key]) problem(tag + "t o s differs from f^step");
      if (st.pair.kind == FactorCase::case1) {
        if (t.eval(st.pair.beta) != Rational(0)) problem(tag + "t(beta) != 0");
        if (!is_identity_on(s, st.pair.beta, Rational(1))) problem(tag + "s is not the identity on [beta,1]");
      } else {
        if (t.eval(st.pair.beta) != Rational(1)) problem(tag + "t(beta) != 1");
        if (!is_identity_on(s, Rational(0), st.pair.beta)) problem(tag + "s is not the identity on [0,beta]");
      }
      if (c.pipeline == Pipeline::minc) {
        const FactorCase expected = minc_stage_choice(st.orbit_value);
        const Rational beta = expected == FactorCase::case1 ? Rational(7, 18) : Rational(11, 18);
        if (st.pair.kind != expected || st.pair.beta != beta) problem(tag + "factor pair does not follow the minc rule");
      }
      if (s.eval(st.orbit_value) != st.coordinate) problem(tag + "coordinate differs from s(x_n)");

      bool ok = st.coordinate == st.orbit_value;
      if (i >= 2) {
        const Stage& prev = c.stages[i - 2];
        if (!st.g || !st.verdict) {
          problem(tag + "missing bonding map or verdict");
          ok = false;
        } else {
          auto g_key = std::make_tuple(st.g.get(), prev.pair.s.get(), &t);
          if (!g_checked.count(g_key)) g_checked[g_key] = *st.g == compose(*prev.pair.s, t, limits);
          if (!g_checked[g_key]) problem(tag + "g differs from s_{i-1} o t_i");
          auto v_key = std::make_pair(st.g.get(), st.coordinate);
          if (!verdicts.count(v_key)) verdicts.emplace(v_key, is_in_zigzag(*st.g, st.coordinate));
          const ZigzagVerdict& verdict = verdicts.at(v_key);
          if (verdict != *st.verdict) problem(tag + "recorded zigzag verdict differs from the recomputed one");
          ok = ok && st.g->eval(st.coordinate) == prev.coordinate && !verdict.in_zigzag;
        }
      } else if (st.g || st.verdict) {
        problem(tag + "the first stage has no bonding map");
      }
      if (ok != st.ok) problem(tag + "recorded stage result differs from the recomputed one");
      all_ok = all_ok && ok;
    }
    if (c.stages.size() >= repeat.index + repeat.period &&
        !same_stage_data(c.stages[repeat.index - 1], c.stages[repeat.index - 1 + repeat.period]))
      problem("stage data do not repeat at stage " + std::to_string(repeat.index));

    bool stabilized = true;
    if (c.pipeline == Pipeline::general && c.stabilization)
      stabilized = stabilization_holds(c.map, c.orbit, *c.stabilization, c.stages.size(), limits);
    report.passed = all_ok && stabilized;
    if (report.passed != c.passed) problem("recorded result differs from the recomputed one");
  } catch (const Error& e) {
    problem(e.what());
  }
  report.consistent = report.problems.empty();
  if (!report.consistent) report.passed = false;
  return report;
}

}  // namespace pliml
