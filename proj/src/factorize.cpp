#include "pliml/factorize.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "parallel.hpp"
#include "pliml/error.hpp"

namespace pliml {

namespace {

const Rational kZero(0);
const Rational kOne(1);

std::shared_ptr<const PLMap> share(PLMap m) { return std::make_shared<const PLMap>(std::move(m)); }

void check_factorization(const FactorPair& pair, const Limits& limits) {
  if (compose(*pair.t, *pair.s, limits) != *pair.base)
    fail(ErrorCode::internal, std::string("t o s differs from the base map for ") + to_string(pair.kind) +
                                  " with beta = " + pair.beta.str());
}

using MapKey = std::pair<const PLMap*, const PLMap*>;

// Caches s ∘ t by operand identity; pairs are shared across stages.
class CompositionCache {
public:
  explicit CompositionCache(const Limits& limits) : limits_(limits) {}

  std::shared_ptr<const PLMap> get(const std::shared_ptr<const PLMap>& outer,
                                   const std::shared_ptr<const PLMap>& inner) {
    const MapKey key{outer.get(), inner.get()};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto g = share(compose(*outer, *inner, limits_));
    cache_.emplace(key, g);
    return g;
  }

private:
  Limits limits_;
  std::map<MapKey, std::shared_ptr<const PLMap>> cache_;
};

template <class PairFor>
void run_stages(Certificate& cert, const PairFor& pair_for, const CertifyOptions& options) {
  const auto [r, p] = stage_repeat(cert.orbit, cert.first_index, cert.step);
  cert.repeat_index = r;
  cert.repeat_period = p;
  const std::size_t count = std::max(options.stages, r + p);

  CompositionCache compositions(options.limits);
  std::map<const FactorPair*, bool> checked;
  cert.stages.assign(count, Stage{});
  for (std::size_t i = 1; i <= count; ++i) {
    Stage& st = cert.stages[i - 1];
    st.n = cert.first_index + i * cert.step;
    st.orbit_value = cert.orbit.at(st.n);
    const FactorPair& pair = pair_for(st.orbit_value);
    if (!checked[&pair]) {
      check_factorization(pair, options.limits);
      checked[&pair] = true;
    }
    st.pair = pair;
    st.coordinate = pair.s->eval(st.orbit_value);
    if (i >= 2) st.g = compositions.get(cert.stages[i - 2].pair.s, pair.t);
  }

  // One zigzag verdict per distinct (g, coordinate).
  std::map<std::pair<const PLMap*, Rational>, std::size_t> job_index;
  std::vector<std::pair<const PLMap*, Rational>> jobs;
  for (const auto& st : cert.stages) {
    if (!st.g) continue;
    auto key = std::make_pair(st.g.get(), st.coordinate);
    if (job_index.emplace(key, jobs.size()).second) jobs.push_back(key);
  }
  std::vector<ZigzagVerdict> verdicts(jobs.size());
  detail::parallel_for(jobs.size(), options.jobs,
                       [&](std::size_t k) { verdicts[k] = is_in_zigzag(*jobs[k].first, jobs[k].second); });

  for (std::size_t i = 1; i <= count; ++i) {
    Stage& st = cert.stages[i - 1];
    auto reject = [&](std::string why) {
      st.ok = false;
      st.failure = std::move(why);
    };
    if (st.coordinate != st.orbit_value) {
      reject("s_" + std::to_string(i) + " moves x_" + std::to_string(st.n) + " = " + st.orbit_value.str());
      continue;
    }
    if (!st.g) continue;
    st.verdict = verdicts[job_index.at({st.g.get(), st.coordinate})];
    const Rational& previous = cert.stages[i - 2].coordinate;
    if (st.g->eval(st.coordinate) != previous) {
      reject("g_" + std::to_string(i - 1) + " does not carry coordinate " + std::to_string(i) + " to coordinate " +
             std::to_string(i - 1));
    } else if (st.verdict->in_zigzag) {
      reject("coordinate " + st.coordinate.str() + " is in a zigzag of g_" + std::to_string(i - 1));
    }
  }

  if (!same_stage_data(cert.stages[r - 1], cert.stages[r - 1 + p]))
    fail(ErrorCode::internal, "stage data do not repeat at index " + std::to_string(r));

  cert.passed = true;
  for (std::size_t i = 0; i < count; ++i) {
    if (!cert.stages[i].ok) {
      cert.passed = false;
      cert.first_failing_stage = i + 1;
      cert.failure = "stage " + std::to_string(i + 1) + ": " + cert.stages[i].failure;
      break;
    }
  }
}

}  // namespace

StageRepeat stage_repeat(const BackwardOrbit& orbit, std::uint64_t first_index, std::uint64_t step) {
  StageRepeat out;
  while (first_index + (out.index - 1) * step < orbit.preperiod()) ++out.index;
  const std::uint64_t period = orbit.period();
  out.period = static_cast<std::size_t>(period / std::gcd(period, step));
  return out;
}

bool same_stage_data(const Stage& x, const Stage& y) {
  if (x.pair.kind != y.pair.kind || x.pair.beta != y.pair.beta || x.coordinate != y.coordinate) return false;
  if (*x.pair.s != *y.pair.s || *x.pair.t != *y.pair.t) return false;
  if (static_cast<bool>(x.g) != static_cast<bool>(y.g)) return false;
  if (x.g && *x.g != *y.g) return false;
  return x.verdict == y.verdict;
}

PLMap minc_map() {
  return from_trusted_points({{Rational(0), Rational(0)},
                              {Rational(1, 3), Rational(1)},
                              {Rational(4, 9), Rational(1, 3)},
                              {Rational(5, 9), Rational(2, 3)},
                              {Rational(2, 3), Rational(0)},
                              {Rational(1), Rational(1)}});
}

const char* to_string(FactorCase c) noexcept { return c == FactorCase::case1 ? "case1" : "case2"; }

const char* to_string(Pipeline p) noexcept { return p == Pipeline::minc ? "minc" : "general"; }

FactorPair split_case1(const PLMap& f, const Rational& beta) {
  if (beta <= kZero || beta > kOne) fail(ErrorCode::precondition, "case1 needs 0 < beta <= 1, got " + beta.str());
  if (f.eval(beta) != kZero) fail(ErrorCode::precondition, "case1 needs f(beta) = 0, got f(" + beta.str() + ") = " +
                                                               f.eval(beta).str());
  std::vector<Point> s;
  std::vector<Point> t{{kZero, kOne}, {beta, kZero}};
  for (const auto& p : f.breakpoints()) {
    if (p.x < beta) s.push_back({p.x, beta * (kOne - p.y)});
    if (p.x > beta) t.push_back(p);
  }
  s.push_back({beta, beta});
  if (beta < kOne) s.push_back({kOne, kOne});

  FactorPair out;
  out.s = share(make_plmap(std::move(s)));
  out.t = share(make_plmap(std::move(t)));
  out.kind = FactorCase::case1;
  out.beta = beta;
  out.base = share(f);
  check_factorization(out, Limits{});
  return out;
}

FactorPair split_case2(const PLMap& f, const Rational& beta) {
  if (beta < kZero || beta >= kOne) fail(ErrorCode::precondition, "case2 needs 0 <= beta < 1, got " + beta.str());
  if (f.eval(beta) != kOne) fail(ErrorCode::precondition, "case2 needs f(beta) = 1, got f(" + beta.str() + ") = " +
                                                              f.eval(beta).str());
  std::vector<Point> s{{kZero, kZero}};
  if (beta > kZero) s.push_back({beta, beta});
  std::vector<Point> t;
  for (const auto& p : f.breakpoints()) {
    if (p.x < beta) t.push_back(p);
    if (p.x > beta) s.push_back({p.x, kOne - (kOne - beta) * p.y});
  }
  t.push_back({beta, kOne});
  t.push_back({kOne, kZero});

  FactorPair out;
  out.s = share(make_plmap(std::move(s)));
  out.t = share(make_plmap(std::move(t)));
  out.kind = FactorCase::case2;
  out.beta = beta;
  out.base = share(f);
  check_factorization(out, Limits{});
  return out;
}

BetaChoice find_beta(const PLMap& f, const Window& window, FactorCase kind) {
  auto inside = [&](std::vector<Rational> v) {
    v.erase(std::remove_if(v.begin(), v.end(), [&](const Rational& q) { return !window.contains(q); }), v.end());
    return v;
  };
  const auto ones = inside(level_crossings(f, kOne));
  const auto zeros = inside(level_crossings(f, kZero));
  if (kind == FactorCase::case1) {
    for (const auto& z : zeros) {
      auto it = std::lower_bound(ones.begin(), ones.end(), z);
      if (it != ones.begin()) return {*std::prev(it), z};
    }
  } else {
    for (auto z = zeros.rbegin(); z != zeros.rend(); ++z) {
      auto it = std::lower_bound(ones.begin(), ones.end(), *z);
      if (it != ones.begin()) return {*z, *std::prev(it)};
    }
  }
  fail(ErrorCode::precondition, std::string("no ") + (kind == FactorCase::case1 ? "alpha < beta" : "beta < gamma") +
                                    " with values 1 then 0 in the window [" + window.lo.str() + ", " +
                                    window.hi.str() + "]");
}

FactorCase minc_stage_choice(const Rational& x) {
  if (x < kZero || x > kOne) fail(ErrorCode::domain, "stage coordinate " + x.str() + " is outside [0,1]");
  return x <= Rational(7, 18) ? FactorCase::case2 : FactorCase::case1;
}

std::vector<std::shared_ptr<const PLMap>> build_g_sequence(const std::vector<FactorPair>& pairs,
                                                           const Limits& limits) {
  for (const auto& pair : pairs) check_factorization(pair, limits);
  for (std::size_t i = 1; i < pairs.size(); ++i)
    if (*pairs[i].base != *pairs[0].base)
      fail(ErrorCode::precondition, "pair " + std::to_string(i) + " factors a different block map");
  CompositionCache compositions(limits);
  std::vector<std::shared_ptr<const PLMap>> out;
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i) out.push_back(compositions.get(pairs[i].s, pairs[i + 1].t));
  return out;
}

std::vector<Rational> transform_point(const BackwardOrbit& orbit, const Certificate& certificate) {
  std::vector<Rational> out;
  out.reserve(certificate.stages.size());
  for (std::size_t i = 0; i < certificate.stages.size(); ++i) {
    const Stage& st = certificate.stages[i];
    Rational xi = st.pair.s->eval(orbit.at(st.n));
    if (xi != st.coordinate)
      fail(ErrorCode::precondition, "stage " + std::to_string(i + 1) + " coordinate " + xi.str() +
                                        " differs from the certificate's " + st.coordinate.str());
    if (i > 0) {
      if (!st.g) fail(ErrorCode::precondition, "stage " + std::to_string(i + 1) + " has no bonding map");
      if (st.g->eval(xi) != out.back())
        fail(ErrorCode::precondition, "g_" + std::to_string(i) + " does not carry coordinate " +
                                          std::to_string(i + 1) + " to coordinate " + std::to_string(i));
    }
    out.push_back(std::move(xi));
  }
  return out;
}

Certificate certify_minc(const BackwardOrbit& orbit, const CertifyOptions& options) {
  Certificate cert;
  cert.pipeline = Pipeline::minc;
  cert.map = minc_map();
  cert.orbit = orbit;
  orbit.validate(cert.map);
  cert.first_index = 0;
  cert.step = 2;

  const PLMap block = iterate(cert.map, 2, options.limits);
  const FactorPair case1 = split_case1(block, Rational(7, 18));
  const FactorPair case2 = split_case2(block, Rational(11, 18));
  run_stages(
      cert,
      [&](const Rational& x) -> const FactorPair& { return minc_stage_choice(x) == FactorCase::case1 ? case1 : case2; },
      options);
  return cert;
}

Certificate certify_general(const PLMap& f, const BackwardOrbit& orbit, const CertifyOptions& options) {
  Certificate cert;
  cert.pipeline = Pipeline::general;
  cert.map = f;
  cert.orbit = orbit;
  const StabilizationData data = branch_stabilization(f, orbit, options.stabilization);
  cert.stabilization = data;
  cert.first_index = data.first_index;
  cert.step = data.step;

  const PLMap block = iterate(f, static_cast<unsigned>(data.step), options.limits);
  FactorPair pair;
  if (data.side == GapSide::left) {
    const auto choice = find_beta(block, {data.a, data.a + data.epsilon, true, false}, FactorCase::case1);
    pair = split_case1(block, choice.beta);
  } else {
    const auto choice = find_beta(block, {data.b - data.epsilon, data.b, false, true}, FactorCase::case2);
    pair = split_case2(block, choice.beta);
  }
  run_stages(cert, [&](const Rational&) -> const FactorPair& { return pair; }, options);

  const std::size_t checked_stages = cert.stages.size();
  if (cert.passed && !stabilization_holds(f, orbit, data, checked_stages, options.limits)) {
    cert.passed = false;
    cert.failure = "branch stabilization conditions do not hold";
  }
  return cert;
}

}  // namespace pliml
