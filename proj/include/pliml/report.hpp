#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pliml/dynamics.hpp"
#include "pliml/zigzag.hpp"

namespace pliml {

struct AnalyzeOptions {
  ZigzagOptions zigzag{};
  LeoOptions leo{};
  /// When set and the map is leo, the report includes leo_uniform_N(f, eps).
  std::optional<Rational> leo_epsilon;
};

/// JSON object with the breakpoints, laps, critical set, zigzag set,
/// post-critical orbit table, Markov partition and leo verdict.
std::string analyze_report(const PLMap& f, const AnalyzeOptions& options = {});

struct PlotSpec {
  unsigned width = 400;
  unsigned height = 400;
  unsigned margin = 20;
  std::vector<Rational> guides;  // dashed lines x = c and y = c
  std::vector<Point> marks;      // filled dots
  bool diagonal = false;         // dashed y = x
};

/// SVG 1.1 document. The polyline vertices are the breakpoints mapped to
/// (margin + x * width, margin + (1 - y) * height), printed with 12
/// significant digits.
std::string render_svg(const PLMap& f, const PlotSpec& spec = {});

/// `x,y,x_exact,y_exact` rows, decimals with 12 significant digits.
std::string render_csv(const PLMap& f);

/// %.12g formatting of the nearest double.
std::string decimal(const Rational& r);

}  // namespace pliml
