#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pliml/orbit.hpp"
#include "pliml/plmap.hpp"

namespace pliml {

enum class Decision { no, yes, indeterminate };

const char* to_string(Decision d) noexcept;

/// J(f,y) and its image B(f,y) = f(J).
struct BranchResult {
  Interval domain;  // J
  Interval branch;  // B
  bool at_critical = false;
  /// Both candidate laps had the same image and the left one was taken.
  bool tie_rule_applied = false;
};

/// At a critical point the lap with the smaller image is taken (the left one
/// when both images coincide).
BranchResult branch(const PLMap& f, const Rational& y);

struct CriticalOrbit {
  Rational point;
  std::vector<Rational> orbit;  // point, f(point), ... up to the first repeat
  bool closed = false;          // false when the step budget ran out
  std::size_t preperiod = 0;    // k: f^{k+j}(c) = f^k(c), both minimal
  std::size_t period = 0;       // j
};

struct OrbitTable {
  std::vector<CriticalOrbit> orbits;  // critical set including 0 and 1
  bool all_closed() const;
};

struct OrbitBudget {
  std::size_t max_steps = 10'000;
};

OrbitTable post_critical_orbits(const PLMap& f, const OrbitBudget& budget = {});

/// yes when every critical orbit closed within budget, indeterminate otherwise.
Decision is_post_critically_finite(const PLMap& f, const OrbitBudget& budget = {});

struct MarkovPartition {
  std::vector<Rational> points;  // sorted, starts at 0 and ends at 1
  /// transitions[u][v] iff f([p_u,p_{u+1}]) covers [p_v,p_{v+1}].
  std::vector<std::vector<bool>> transitions;
};

/// Forward orbit closure of the critical set; nullopt when some critical
/// orbit did not close within budget.
std::optional<MarkovPartition> markov_partition(const PLMap& f, const OrbitBudget& budget = {});
/// Same, from an already computed orbit table.
std::optional<MarkovPartition> markov_partition(const PLMap& f, const OrbitTable& table);

/// Some power up to the Wielandt bound n^2 - 2n + 2 is strictly positive.
bool is_primitive(const std::vector<std::vector<bool>>& matrix);

struct LeoOptions {
  unsigned fallback_depth = 64;
  OrbitBudget orbit_budget{};
};

/// Locally eventually onto. With a Markov partition: no when the transition
/// matrix is not primitive, yes when it is primitive and every slope has
/// modulus > 1. Otherwise (no partition, or a slope of modulus <= 1) an
/// image-iteration semi-decision runs: it refutes on an image cycle that is
/// not [0,1], and confirms when the minimum slope modulus exceeds 2 and a
/// cover of intervals no longer than half the shortest lap reaches [0,1].
Decision is_leo(const PLMap& f, const LeoOptions& options = {});
/// Same, reusing a post-critical orbit table of f.
Decision is_leo(const PLMap& f, const OrbitTable& table, const LeoOptions& options = {});

/// The semi-decision on its own, exposed for cross-checking.
Decision leo_by_image_iteration(const PLMap& f, unsigned depth);

struct LeoBudget {
  unsigned max_iterations = 10'000;
};

/// Least N with f^N(J_i) = [0,1] for the cover J_i = [i eps/4, i eps/4 + eps/2]
/// (clipped to [0,1]). Every interval of length >= 3 eps/4 contains a J_i, so
/// f^n(J) = [0,1] for all n >= N and all J with diam(J) >= eps.
unsigned leo_uniform_N(const PLMap& f, const Rational& eps, const LeoBudget& budget = {});

/// f^n(J) computed by iterating interval images, without forming f^n.
Interval iterated_image(const PLMap& f, Interval j, unsigned n);

enum class GapSide { left, right };

const char* to_string(GapSide side) noexcept;

/// Output of the branch-stabilization step: the orbit indices n_0 < n_1 < ...
/// (n_i = first_index + i * step), the common branch [a,b] and the gap eps.
struct StabilizationData {
  Rational a;
  Rational b;
  Rational epsilon;
  GapSide side = GapSide::left;
  std::uint64_t first_index = 0;  // n_0
  std::uint64_t step = 1;         // n_i - n_{i-1}
  unsigned stabilization_depth = 1;
  unsigned leo_depth = 1;  // N for intervals of diameter >= eps/2

  std::uint64_t n(std::uint64_t i) const { return first_index + i * step; }
  friend bool operator==(const StabilizationData&, const StabilizationData&) = default;
};

struct StabilizationOptions {
  unsigned max_depth = 64;
  Limits limits{};
  LeoOptions leo{};
};

/// A_i = B(f^j, x_{i+j}) for j past the point where the nested branches stop
/// shrinking. Requires f onto, post-critically finite and leo.
StabilizationData branch_stabilization(const PLMap& f, const BackwardOrbit& orbit,
                                       const StabilizationOptions& options = {});

/// Re-checks the three conditions for stages 1..stages plus one orbit period:
/// B(f^step, x_{n_i}) = [a,b]; the gap side excludes every x_{n_i}; and every
/// interval of diameter >= eps/2 maps onto [0,1] under f^step.
bool stabilization_holds(const PLMap& f, const BackwardOrbit& orbit, const StabilizationData& data,
                         std::size_t stages, const Limits& limits = {});

}  // namespace pliml
