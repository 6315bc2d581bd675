#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pliml/plmap.hpp"

namespace pliml {

/// minc, identity, tent, fig3-left, fig3-right.
std::vector<std::string> builtin_names();

std::optional<PLMap> builtin_map(std::string_view name);

}  // namespace pliml
