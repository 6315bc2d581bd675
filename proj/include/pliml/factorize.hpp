#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pliml/dynamics.hpp"
#include "pliml/orbit.hpp"
#include "pliml/plmap.hpp"
#include "pliml/zigzag.hpp"

namespace pliml {

/// Minc's map: (0,0) (1/3,1) (4/9,1/3) (5/9,2/3) (2/3,0) (1,1).
PLMap minc_map();

/// case1: s is the identity on [beta,1] and t(beta) = 0.
/// case2: s is the identity on [0,beta] and t(beta) = 1.
enum class FactorCase { case1 = 1, case2 = 2 };

const char* to_string(FactorCase c) noexcept;

/// s, t with t ∘ s = base.
struct FactorPair {
  std::shared_ptr<const PLMap> s;
  std::shared_ptr<const PLMap> t;
  FactorCase kind = FactorCase::case1;
  Rational beta;
  std::shared_ptr<const PLMap> base;
};

/// s(y) = beta (1 - f(y)) on [0,beta], y on [beta,1];
/// t(y) = 1 - y / beta on [0,beta], f(y) on [beta,1]. Needs f(beta) = 0, beta > 0.
FactorPair split_case1(const PLMap& f, const Rational& beta);

/// s(y) = y on [0,beta], 1 - (1 - beta) f(y) on [beta,1];
/// t(y) = f(y) on [0,beta], (1 - y) / (1 - beta) on [beta,1]. Needs f(beta) = 1, beta < 1.
FactorPair split_case2(const PLMap& f, const Rational& beta);

/// Interval with independently open or closed ends.
struct Window {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(const Rational& v) const {
    return (lo_closed ? lo <= v : lo < v) && (hi_closed ? v <= hi : v < hi);
  }
};

struct BetaChoice {
  Rational partner;  // alpha for case1 (f(alpha) = 1), gamma for case2 (f(gamma) = 0)
  Rational beta;
};

/// case1: alpha < beta in the window with f(alpha) = 1, f(beta) = 0, beta the
/// smallest zero preceded by a one, alpha the nearest such one.
/// case2: beta < gamma with f(beta) = 1, f(gamma) = 0, gamma the largest zero
/// preceded by a one, beta the nearest such one.
BetaChoice find_beta(const PLMap& f, const Window& window, FactorCase kind);

/// case2 on [0, 7/18], case1 on (7/18, 1].
FactorCase minc_stage_choice(const Rational& x);

/// g_i = s_i ∘ t_{i+1}; also checks t_i ∘ s_i = base_i for every pair.
std::vector<std::shared_ptr<const PLMap>> build_g_sequence(const std::vector<FactorPair>& pairs,
                                                           const Limits& limits = {});

struct Stage {
  std::uint64_t n = 0;  // n_i
  FactorPair pair;
  /// Bonding map g_{i-1} = s_{i-1} ∘ t_i into the previous coordinate; empty for the first stage.
  std::shared_ptr<const PLMap> g;
  Rational orbit_value;  // x_{n_i}
  Rational coordinate;   // s_i(x_{n_i})
  std::optional<ZigzagVerdict> verdict;  // of coordinate under g
  bool ok = true;
  std::string failure;
};

enum class Pipeline { minc, general };

const char* to_string(Pipeline p) noexcept;

/// Finite record establishing, stage by stage, that t_i ∘ s_i is the block
/// map, that g_{i-1} = s_{i-1} ∘ t_i carries coordinate i to coordinate i-1,
/// and that coordinate i is not in a zigzag of g_{i-1}. Stage data repeat
/// with `repeat_period` from `repeat_index` on, which extends the finite
/// checks to every stage.
struct Certificate {
  Pipeline pipeline = Pipeline::minc;
  PLMap map;
  BackwardOrbit orbit = BackwardOrbit::constant(Rational(0));
  std::optional<StabilizationData> stabilization;
  std::uint64_t first_index = 0;  // n_0
  std::uint64_t step = 1;         // n_i - n_{i-1}
  std::vector<Stage> stages;      // stages[0] is stage 1
  std::size_t repeat_index = 1;
  std::size_t repeat_period = 1;
  bool passed = false;
  std::optional<std::size_t> first_failing_stage;
  std::string failure;
};

struct StageRepeat {
  std::size_t index = 2;   // first stage whose data repeat
  std::size_t period = 1;  // stage period from there on
};

/// Stage i depends on x_{n_{i-1}} and x_{n_i}; once n_{i-1} reaches the period
/// block the data repeat with period L / gcd(L, step).
StageRepeat stage_repeat(const BackwardOrbit& orbit, std::uint64_t first_index, std::uint64_t step);

/// Case, beta, s, t, g, coordinate and verdict agree.
bool same_stage_data(const Stage& x, const Stage& y);

/// s_i(x_{n_i}) for every stage, after checking g_{i-1}(xi_i) = xi_{i-1}.
std::vector<Rational> transform_point(const BackwardOrbit& orbit, const Certificate& certificate);

struct CertifyOptions {
  std::size_t stages = 10;
  unsigned jobs = 1;
  Limits limits{};
  StabilizationOptions stabilization{};
};

Certificate certify_minc(const BackwardOrbit& orbit, const CertifyOptions& options = {});
Certificate certify_general(const PLMap& f, const BackwardOrbit& orbit, const CertifyOptions& options = {});

}  // namespace pliml
