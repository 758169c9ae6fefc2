#pragma once

/**
 * @file verify.hpp
 * @brief Property checks for monotone, subadditive, positively homogeneous maps on cones.
 *
 * Every check is a sampled search for the worst violation of one axiom or
 * inequality. Trial inputs are regenerated from (seed, trial index), so a
 * report is deterministic, schedule-independent and its witness replays to
 * the same violation through the matching *_violation function.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conekit/error.hpp"
#include "conekit/norms.hpp"
#include "conekit/operators.hpp"
#include "conekit/parallel.hpp"
#include "conekit/random.hpp"
#include "conekit/space.hpp"

namespace conekit {

/// Tolerance for algebraic identities and estimator comparisons.
inline constexpr double kIdentityTolerance = 1e-12;

struct Witness {
  std::vector<SampledFunction> functions;
  std::vector<double> scalars;
};

struct PropertyReport {
  std::string property;
  bool passed = true;
  std::size_t trials = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::size_t witness_index = 0;
  Witness witness;
  /// Named quantities computed along the way (norm values, counters).
  std::vector<std::pair<std::string, double>> quantities;
  std::string note;

  std::optional<double> quantity(const std::string& name) const {
    for (const auto& [k, v] : quantities)
      if (k == name) return v;
    return std::nullopt;
  }
};

// ---------------------------------------------------------------------------
// Violation measures. Zero means the property holds on that input.

/// Largest coordinate of (A phi - A psi)^+, for phi <= psi.
template <ConeOperator Op>
double monotone_violation(const Op& op, const SampledFunction& phi, const SampledFunction& psi) {
  const auto diff = op(phi) - op(psi);
  double worst = 0.0;
  for (double v : diff.values()) worst = std::max(worst, v);
  return worst;
}

/// Largest coordinate of (A(phi+psi) - A phi - A psi)^+, scaled by max(1, ||A phi||, ||A psi||).
template <ConeOperator Op>
double subadditive_violation(const Op& op, const SampledFunction& phi, const SampledFunction& psi) {
  const auto a_phi = op(phi);
  const auto a_psi = op(psi);
  const auto excess = op(phi + psi) - (a_phi + a_psi);
  double worst = 0.0;
  for (double v : excess.values()) worst = std::max(worst, v);
  return worst / std::max({1.0, sup_norm(a_phi), sup_norm(a_psi)});
}

/// ||A(t phi) - t A phi|| / max(1, t ||A phi||).
template <ConeOperator Op>
double homogeneity_violation(const Op& op, const SampledFunction& phi, double t) {
  const auto a_phi = op(phi);
  return sup_norm(op(t * phi) - t * a_phi) / std::max(1.0, t * sup_norm(a_phi));
}

/// Largest coordinate of (|A phi - A psi| - A|phi - psi|)^+.
template <ConeOperator Op>
double fundamental_violation(const Op& op, const SampledFunction& phi, const SampledFunction& psi) {
  const auto lhs = abs(op(phi) - op(psi));
  const auto rhs = op(abs(phi - psi));
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, lhs[i] - rhs[i]);
  return worst;
}

/// (||x - p| - p| - 3x)^+ for scalars x, p >= 0.
inline double pointwise_lemma_violation(double x, double p) {
  return std::max(0.0, std::fabs(std::fabs(x - p) - p) - 3.0 * x);
}

// ---------------------------------------------------------------------------
// Trial input generators.

namespace samplers {

inline std::pair<SampledFunction, SampledFunction> ordered_pair(const Domain& d, std::uint64_t seed,
                                                                std::size_t index) {
  auto rng = trial_stream(seed, index);
  auto phi = random_cone_function(d, rng);
  auto noise = random_cone_function(d, rng);
  auto psi = phi + noise;
  return {std::move(phi), std::move(psi)};
}

inline std::pair<SampledFunction, SampledFunction> cone_pair(const Domain& d, std::uint64_t seed,
                                                             std::size_t index) {
  auto rng = trial_stream(seed, index);
  auto phi = random_cone_function(d, rng);
  auto psi = random_cone_function(d, rng);
  return {std::move(phi), std::move(psi)};
}

/// Scales cycle through 0, 0.5, 1, 2 and a uniform draw from (0, 10).
inline std::pair<SampledFunction, double> scaled(const Domain& d, std::uint64_t seed, std::size_t index) {
  auto rng = trial_stream(seed, index);
  auto phi = random_cone_function(d, rng);
  static constexpr std::array<double, 4> fixed{0.0, 0.5, 1.0, 2.0};
  const double draw = rng.uniform(0.0, 10.0);
  const double t = index % 5 < 4 ? fixed[index % 5] : draw;
  return {std::move(phi), t};
}

inline std::pair<double, double> scalar_pair(std::uint64_t seed, std::size_t index, double hi = 10.0) {
  auto rng = trial_stream(seed, index);
  const double x = rng.uniform(0.0, hi);
  const double p = rng.uniform(0.0, hi);
  return {x, p};
}

}  // namespace samplers

namespace detail {

template <typename ViolationAt, typename WitnessAt>
PropertyReport run_check(std::string name, std::size_t trials, std::uint64_t seed, double tolerance,
                         ViolationAt violation_at, WitnessAt witness_at) {
  if (trials == 0) throw InvalidArgument("trials must be positive");
  auto violations = parallel_map(trials, violation_at);
  const std::size_t best = argmax_first(violations);
  PropertyReport r;
  r.property = std::move(name);
  r.trials = trials;
  r.seed = seed;
  r.tolerance = tolerance;
  r.worst_violation = violations[best];
  r.passed = r.worst_violation <= tolerance;
  r.witness_index = best;
  r.witness = witness_at(best);
  return r;
}

}  // namespace detail

template <ConeOperator Op>
PropertyReport check_monotone(const Op& op, std::size_t trials, std::uint64_t seed) {
  const Domain d = op.domain();
  return detail::run_check(
      "monotone", trials, seed, kIdentityTolerance,
      [&](std::size_t i) {
        auto [phi, psi] = samplers::ordered_pair(d, seed, i);
        return monotone_violation(op, phi, psi);
      },
      [&](std::size_t i) {
        auto [phi, psi] = samplers::ordered_pair(d, seed, i);
        return Witness{{std::move(phi), std::move(psi)}, {}};
      });
}

template <ConeOperator Op>
PropertyReport check_subadditive(const Op& op, std::size_t trials, std::uint64_t seed) {
  const Domain d = op.domain();
  return detail::run_check(
      "subadditive", trials, seed, kIdentityTolerance,
      [&](std::size_t i) {
        auto [phi, psi] = samplers::cone_pair(d, seed, i);
        return subadditive_violation(op, phi, psi);
      },
      [&](std::size_t i) {
        auto [phi, psi] = samplers::cone_pair(d, seed, i);
        return Witness{{std::move(phi), std::move(psi)}, {}};
      });
}

template <ConeOperator Op>
PropertyReport check_homogeneous(const Op& op, std::size_t trials, std::uint64_t seed) {
  const Domain d = op.domain();
  return detail::run_check(
      "homogeneous", trials, seed, kIdentityTolerance,
      [&](std::size_t i) {
        auto [phi, t] = samplers::scaled(d, seed, i);
        return homogeneity_violation(op, phi, t);
      },
      [&](std::size_t i) {
        auto [phi, t] = samplers::scaled(d, seed, i);
        return Witness{{std::move(phi)}, {t}};
      });
}

template <ConeOperator Op>
PropertyReport check_fundamental_inequality(const Op& op, std::size_t trials, std::uint64_t seed) {
  const Domain d = op.domain();
  auto r = detail::run_check(
      "fundamental_inequality", trials, seed, kIdentityTolerance,
      [&](std::size_t i) {
        auto [phi, psi] = samplers::cone_pair(d, seed, i);
        return fundamental_violation(op, phi, psi);
      },
      [&](std::size_t i) {
        auto [phi, psi] = samplers::cone_pair(d, seed, i);
        return Witness{{std::move(phi), std::move(psi)}, {}};
      });
  r.note =
      "|A phi - A psi| <= A|phi - psi|; with positive homogeneity and a monotone norm this gives "
      "||A phi - A psi|| <= (C/eps) ||A(eps |phi - psi|)|| for every eps > 0";
  return r;
}

/// ||A||_LIP <= C ||A||, with ||A||_LIP estimated by sampling and ||A|| from the closed form.
template <HasExactNorm Op>
PropertyReport check_lipschitz_from_bounded(const Op& op, std::size_t trials, std::uint64_t seed,
                                            double normality_constant = 1.0) {
  const double exact = exact_norm(op);
  const auto lip = empirical_lip_seminorm(op, trials, seed);
  PropertyReport r;
  r.property = "lipschitz_from_bounded";
  r.trials = trials;
  r.seed = seed;
  r.tolerance = kIdentityTolerance;
  r.worst_violation = std::max(0.0, lip.value - normality_constant * exact);
  r.passed = r.worst_violation <= r.tolerance;
  r.witness_index = lip.witness_index;
  r.witness = Witness{lip.witness, {}};
  r.quantities = {{"exact_norm", exact}, {"lipschitz_estimate", lip.value}, {"C", normality_constant}};
  return r;
}

/// ||A|| <= ||A||_LIP <= C ||A||, both estimates also matched against the closed form.
template <HasExactNorm Op>
PropertyReport check_sandwich(const Op& op, std::size_t trials, std::uint64_t seed,
                              double normality_constant = 1.0) {
  const double exact = exact_norm(op);
  const auto op_est = empirical_op_norm(op, trials, seed);
  const auto lip_est = empirical_lip_seminorm(op, trials, seed);
  const double lower = std::max(0.0, op_est.value - lip_est.value);
  const double upper = std::max(0.0, lip_est.value - normality_constant * op_est.value);
  PropertyReport r;
  r.property = "sandwich";
  r.trials = trials;
  r.seed = seed;
  r.tolerance = kIdentityTolerance;
  r.worst_violation = std::max({lower, upper, std::fabs(op_est.value - exact),
                                std::fabs(lip_est.value - exact)});
  r.passed = r.worst_violation <= r.tolerance;
  r.witness_index = lip_est.witness_index;
  r.witness = Witness{{op_est.witness[0], lip_est.witness[0], lip_est.witness[1]}, {}};
  r.quantities = {{"exact_norm", exact},
                  {"op_norm_estimate", op_est.value},
                  {"lipschitz_estimate", lip_est.value},
                  {"C", normality_constant}};
  return r;
}

/// Scalar form of ||eps|phi-psi| - phi0| - phi0| <= 3 eps |phi - psi|, with
/// x = eps|phi-psi|(w) and p = phi0(w). Checked exactly (tolerance 0).
///
/// Equality can only occur at x = 0, so the inequality is tested non-strictly.
inline PropertyReport check_pointwise_lemma(std::span<const std::pair<double, double>> samples,
                                            std::uint64_t seed = 0) {
  if (samples.empty()) throw InvalidArgument("no samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [x, p] = samples[i];
    if (!std::isfinite(x) || !std::isfinite(p) || x < 0.0 || p < 0.0)
      throw InvalidArgument("sample " + std::to_string(i) + " must be finite and nonnegative");
  }
  PropertyReport r;
  r.property = "pointwise_lemma";
  r.trials = samples.size();
  r.seed = seed;
  r.tolerance = 0.0;
  std::size_t equalities = 0;
  std::size_t equalities_off_zero = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [x, p] = samples[i];
    const double v = pointwise_lemma_violation(x, p);
    if (v > r.worst_violation) {
      r.worst_violation = v;
      r.witness_index = i;
    }
    if (std::fabs(std::fabs(x - p) - p) == 3.0 * x) {
      ++equalities;
      if (x != 0.0) ++equalities_off_zero;
    }
  }
  r.passed = r.worst_violation <= r.tolerance;
  r.witness = Witness{{}, {samples[r.witness_index].first, samples[r.witness_index].second}};
  r.quantities = {{"equality_cases", static_cast<double>(equalities)},
                  {"equality_cases_with_positive_x", static_cast<double>(equalities_off_zero)}};
  return r;
}

inline PropertyReport check_pointwise_lemma(std::size_t trials, std::uint64_t seed) {
  std::vector<std::pair<double, double>> samples(trials);
  for (std::size_t i = 0; i < trials; ++i) samples[i] = samplers::scalar_pair(seed, i);
  return check_pointwise_lemma(samples, seed);
}

// ---------------------------------------------------------------------------
// Known-bad operators for harness self-tests.

namespace doubles {

/// -A: order-reversing, fails the monotone check.
template <ConeOperator Op>
FunctionOperator negated(Op op) {
  const Domain d = op.domain();
  return FunctionOperator(d, [op = std::move(op)](const SampledFunction& f) { return -1.0 * op(f); },
                          "negated");
}

/// Pointwise square: superadditive on the cone, fails subadditivity and the fundamental inequality.
inline FunctionOperator squared(const Domain& d) {
  return FunctionOperator(
      d,
      [](const SampledFunction& f) {
        std::vector<double> v(f.values().begin(), f.values().end());
        for (double& x : v) x *= x;
        return SampledFunction(f.domain(), std::move(v));
      },
      "squared");
}

/// A + c: affine shift, fails positive homogeneity (A(0) != 0).
template <ConeOperator Op>
FunctionOperator shifted(Op op, double c = 1.0) {
  const Domain d = op.domain();
  return FunctionOperator(
      d,
      [op = std::move(op), c](const SampledFunction& f) {
        return op(f) + SampledFunction::constant(f.domain(), c);
      },
      "shifted");
}

}  // namespace doubles

enum class Axiom { Monotone, Subadditive, Homogeneous, Fundamental };

inline std::optional<Axiom> parse_axiom(const std::string& name) {
  if (name == "monotone") return Axiom::Monotone;
  if (name == "subadditive") return Axiom::Subadditive;
  if (name == "homogeneous") return Axiom::Homogeneous;
  if (name == "fundamental" || name == "fundamental_inequality") return Axiom::Fundamental;
  return std::nullopt;
}

/// The designated known-bad double for an axiom.
template <ConeOperator Op>
FunctionOperator known_bad(Axiom axiom, const Op& op) {
  switch (axiom) {
    case Axiom::Monotone: return doubles::negated(op);
    case Axiom::Subadditive: return doubles::squared(op.domain());
    case Axiom::Homogeneous: return doubles::shifted(op);
    case Axiom::Fundamental: return doubles::squared(op.domain());
  }
  throw InvalidArgument("unknown axiom");
}

/// Runs every check on `op`. With `inject_bad`, the named axiom is checked on
/// its known-bad double instead, which must make the suite fail.
template <HasExactNorm Op>
std::vector<PropertyReport> run_suite(const Op& op, std::size_t trials, std::uint64_t seed,
                                      std::optional<Axiom> inject_bad = std::nullopt,
                                      double normality_constant = 1.0) {
  auto axiom_check = [&](Axiom axiom, auto&& check) {
    if (inject_bad == axiom) {
      auto r = check(known_bad(axiom, op));
      r.note = "known-bad double injected";
      return r;
    }
    return check(op);
  };
  std::vector<PropertyReport> out;
  out.push_back(axiom_check(Axiom::Monotone, [&](const auto& a) { return check_monotone(a, trials, seed); }));
  out.push_back(
      axiom_check(Axiom::Subadditive, [&](const auto& a) { return check_subadditive(a, trials, seed); }));
  out.push_back(
      axiom_check(Axiom::Homogeneous, [&](const auto& a) { return check_homogeneous(a, trials, seed); }));
  out.push_back(axiom_check(Axiom::Fundamental,
                            [&](const auto& a) { return check_fundamental_inequality(a, trials, seed); }));
  out.push_back(check_lipschitz_from_bounded(op, trials, seed, normality_constant));
  out.push_back(check_sandwich(op, trials, seed, normality_constant));
  out.push_back(check_pointwise_lemma(trials, seed));
  return out;
}

inline bool all_passed(std::span<const PropertyReport> reports) {
  return std::all_of(reports.begin(), reports.end(), [](const PropertyReport& r) { return r.passed; });
}

}  // namespace conekit
