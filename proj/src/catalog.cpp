#include "pliml/catalog.hpp"

#include "pliml/factorize.hpp"

namespace pliml {

namespace {

PLMap from_pairs(std::initializer_list<std::pair<Rational, Rational>> pairs) {
  std::vector<Point> points;
  for (const auto& [x, y] : pairs) points.push_back({x, y});
  return make_plmap(std::move(points));
}

}  // namespace

std::vector<std::string> builtin_names() { return {"minc", "identity", "tent", "fig3-left", "fig3-right"}; }

std::optional<PLMap> builtin_map(std::string_view name) {
  using R = Rational;
  if (name == "minc") return minc_map();
  if (name == "identity") return PLMap::identity();
  if (name == "tent") return from_pairs({{R(0), R(0)}, {R(1, 2), R(1)}, {R(1), R(0)}});
  if (name == "fig3-left")
    return from_pairs({{R(0), R(0)}, {R(1, 5), R(1)}, {R(2, 5), R(1, 4)}, {R(3, 5), R(3, 4)}, {R(4, 5), R(1, 2)}, {R(1), R(1)}});
  if (name == "fig3-right")
    return from_pairs({{R(0), R(0)}, {R(1, 5), R(17, 20)}, {R(2, 5), R(1, 2)}, {R(3, 5), R(17, 20)}, {R(4, 5), R(1, 4)}, {R(1), R(1)}});
  return std::nullopt;
}

}  // namespace pliml
