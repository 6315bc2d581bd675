#include "pliml/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace pliml {

namespace {

using Json = nlohmann::ordered_json;

std::string q(const Rational& r) { return r.str(); }

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(q(r));
  return out;
}

}  // namespace

std::string decimal(const Rational& r) { return number(r.to_double()); }

std::string analyze_report(const PLMap& f, const AnalyzeOptions& options) {
  Json out;
  Json points = Json::array();
  for (const auto& p : f.breakpoints()) points.push_back(Json::array({q(p.x), q(p.y)}));
  out["breakpoints"] = std::move(points);
  out["critical_set"] = rationals(critical_set(f));

  Json lap_list = Json::array();
  for (const auto& l : laps(f))
    lap_list.push_back(Json{{"left", q(l.left)},
                            {"right", q(l.right)},
                            {"direction", l.direction == Direction::increasing ? "increasing" : "decreasing"}});
  out["laps"] = std::move(lap_list);
  out["onto"] = is_onto(f);

  out["zigzag_attainment"] = options.zigzag.attainment == Attainment::strict ? "strict" : "non-strict";
  Json zz = Json::array();
  for (const auto& iv : zigzag_set(f, options.zigzag)) zz.push_back(Json::array({q(iv.lo), q(iv.hi)}));
  out["zigzag_set"] = std::move(zz);

  const OrbitTable table = post_critical_orbits(f, options.leo.orbit_budget);
  Json orbits = Json::array();
  for (const auto& o : table.orbits) {
    Json entry{{"point", q(o.point)}, {"closed", o.closed}};
    if (o.closed) {
      entry["preperiod"] = o.preperiod;
      entry["period"] = o.period;
    }
    entry["orbit"] = rationals(o.orbit);
    orbits.push_back(std::move(entry));
  }
  out["post_critical_orbits"] = std::move(orbits);
  out["post_critically_finite"] = to_string(table.all_closed() ? Decision::yes : Decision::indeterminate);

  if (auto mp = markov_partition(f, table)) {
    Json rows = Json::array();
    for (const auto& row : mp->transitions) {
      Json r = Json::array();
      for (bool cell : row) r.push_back(cell ? 1 : 0);
      rows.push_back(std::move(r));
    }
    out["markov_partition"] = Json{{"points", rationals(mp->points)},
                                   {"transitions", std::move(rows)},
                                   {"primitive", is_primitive(mp->transitions)}};
  } else {
    out["markov_partition"] = nullptr;
  }
  const Decision leo = is_leo(f, table, options.leo);
  out["leo"] = to_string(leo);
  if (options.leo_epsilon && leo == Decision::yes) {
    out["leo_uniform_N"] = Json{{"epsilon", q(*options.leo_epsilon)}, {"N", leo_uniform_N(f, *options.leo_epsilon)}};
  }
  return out.dump(2) + "\n";
}

std::string render_svg(const PLMap& f, const PlotSpec& spec) {
  const double w = spec.width;
  const double h = spec.height;
  const double m = spec.margin;
  auto px = [&](const Rational& x) { return number(m + x.to_double() * w); };
  auto py = [&](const Rational& y) { return number(m + (1.0 - y.to_double()) * h); };
  const std::string lo = number(m);
  const std::string right = number(m + w);
  const std::string bottom = number(m + h);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + number(w + 2 * m) + "\" height=\"" +
         number(h + 2 * m) + "\">\n";
  out += "  <rect x=\"" + lo + "\" y=\"" + lo + "\" width=\"" + number(w) + "\" height=\"" + number(h) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  const std::string dash = "\" stroke=\"gray\" stroke-width=\"0.75\" stroke-dasharray=\"4,3\"/>\n";
  if (spec.diagonal)
    out += "  <line x1=\"" + lo + "\" y1=\"" + bottom + "\" x2=\"" + right + "\" y2=\"" + lo + dash;
  for (const auto& c : spec.guides) {
    out += "  <line x1=\"" + px(c) + "\" y1=\"" + lo + "\" x2=\"" + px(c) + "\" y2=\"" + bottom + dash;
    out += "  <line x1=\"" + lo + "\" y1=\"" + py(c) + "\" x2=\"" + right + "\" y2=\"" + py(c) + dash;
  }
  out += "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  bool first = true;
  for (const auto& p : f.breakpoints()) {
    if (!first) out += ' ';
    first = false;
    out += px(p.x) + "," + py(p.y);
  }
  out += "\"/>\n";
  for (const auto& p : spec.marks)
    out += "  <circle cx=\"" + px(p.x) + "\" cy=\"" + py(p.y) + "\" r=\"3\" fill=\"black\"/>\n";
  out += "</svg>\n";
  return out;
}

std::string render_csv(const PLMap& f) {
  std::string out = "x,y,x_exact,y_exact\n";
  for (const auto& p : f.breakpoints()) out += decimal(p.x) + "," + decimal(p.y) + "," + q(p.x) + "," + q(p.y) + "\n";
  return out;
}

}  // namespace pliml
