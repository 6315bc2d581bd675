#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pliml/plmap.hpp"

namespace pliml {

/// Eventually periodic backward orbit (x_0, x_1, ...) with f(x_{i+1}) = x_i:
/// x_i = prefix[i] for i < |prefix|, afterwards the period block repeats.
/// Stored canonically: shortest prefix, primitive block.
class BackwardOrbit {
public:
  BackwardOrbit(std::vector<Rational> prefix, std::vector<Rational> period_block);

  static BackwardOrbit constant(Rational value);
  /// `prefix: q_0 q_1 ... ; period: r_0 r_1 ...`, or the shorthand `const:q`.
  static BackwardOrbit parse(std::string_view text);

  const std::vector<Rational>& prefix() const { return prefix_; }
  const std::vector<Rational>& period_block() const { return block_; }
  std::size_t preperiod() const { return prefix_.size(); }
  std::size_t period() const { return block_.size(); }

  const Rational& at(std::uint64_t i) const;
  /// Index into prefix ++ block that holds x_i.
  std::size_t position(std::uint64_t i) const;

  /// Throws ErrorCode::invalid_orbit unless f(x_{i+1}) = x_i for every
  /// consecutive pair, including the seam and the wrap-around of the block.
  void validate(const PLMap& f) const;
  bool is_valid_for(const PLMap& f) const;

  std::string str() const;

  friend bool operator==(const BackwardOrbit&, const BackwardOrbit&) = default;

private:
  std::vector<Rational> prefix_;
  std::vector<Rational> block_;
};

}  // namespace pliml
