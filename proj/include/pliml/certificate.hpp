#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pliml/factorize.hpp"

namespace pliml {

/// JSON text, two-space indent, keys in a fixed order. Maps are stored once in
/// a "maps" table and referenced by id; rationals are "p/q" strings.
std::string certificate_to_json(const Certificate& certificate);

/// Inverse of certificate_to_json. Stage pairs come back without a base map.
Certificate certificate_from_json(std::string_view text);

struct VerifyReport {
  bool consistent = true;  // every recorded identity re-checked
  bool passed = false;     // recomputed overall verdict
  std::vector<std::string> problems;
};

/// Re-checks a certificate from its own data: orbit validity, t o s = f^step
/// and the identity region of s for every stage, g_{i-1} = s_{i-1} o t_i,
/// coordinate transport, zigzag verdicts, the repeat block, and for the
/// general pipeline the stabilization conditions.
VerifyReport verify_certificate(const Certificate& certificate, const Limits& limits = {});

}  // namespace pliml
