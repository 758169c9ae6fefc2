#pragma once

/**
 * @file norms.hpp
 * @brief Operator norm and Lipschitz seminorm: closed forms and sampling estimators.
 *
 * For A positively homogeneous on the cone Z,
 *
 *   ||A||     = sup_{phi in Z, ||phi|| = 1} ||A phi||,
 *   ||A||_LIP = sup_{phi != psi in Z} ||A phi - A psi|| / ||phi - psi||.
 *
 * For the sup-kernel and max-type kernel classes both equal the largest
 * kernel entry over the admissible set. The estimators below are restricted
 * suprema (lower bounds) that always include an attaining probe: phi = 1
 * for the operator norm and the pair (1, 0) for the seminorm.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "conekit/error.hpp"
#include "conekit/operators.hpp"
#include "conekit/parallel.hpp"
#include "conekit/random.hpp"
#include "conekit/space.hpp"

namespace conekit {

inline double exact_norm_finite(const FiniteKernel& k) noexcept {
  double best = 0.0;
  for (double v : k.entries()) best = std::max(best, v);
  return best;
}

/// Largest kernel entry over the discrete admissible set.
inline double exact_norm_continuous(const ContinuousKernelSpec& spec, const AdmissibleMask& mask) {
  if (mask.size() != spec.size()) throw DomainMismatch("mask size does not match the grid");
  double best = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (std::size_t j = 0; j < spec.size(); ++j)
      if (mask(i, j)) best = std::max(best, spec.kernel(i, j));
  return best;
}

inline double exact_norm(const SupKernelOperator& op) noexcept { return exact_norm_finite(op.kernel()); }
inline double exact_norm(const MaxKernelOperator& op) {
  return exact_norm_continuous(op.spec(), op.mask());
}

template <typename Op>
concept HasExactNorm = ConeOperator<Op> && requires(const Op& op) {
  { exact_norm(op) } -> std::convertible_to<double>;
};

struct NormEstimate {
  double value = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  /// Sample index attaining `value`; 0 is the deterministic probe.
  std::size_t witness_index = 0;
  /// phi for the operator norm, (phi, psi) for the Lipschitz seminorm.
  std::vector<SampledFunction> witness;
};

// Sample generators, exposed so a witness can be regenerated from (seed, index).

inline SampledFunction op_norm_sample(const Domain& domain, std::uint64_t seed, std::size_t index) {
  if (index == 0) return SampledFunction::ones(domain);
  auto rng = trial_stream(seed, index);
  return random_unit_cone_function(domain, rng);
}

/// Pair (phi, psi) of cone functions with ||phi - psi|| = 1 up to rounding.
inline std::pair<SampledFunction, SampledFunction> lip_sample(const Domain& domain, std::uint64_t seed,
                                                              std::size_t index) {
  if (index == 0) return {SampledFunction::ones(domain), SampledFunction::zero(domain)};
  auto rng = trial_stream(seed, index);
  for (;;) {
    auto phi = random_cone_function(domain, rng);
    auto psi = random_cone_function(domain, rng);
    const double gap = sup_norm(phi - psi);
    if (gap == 0.0) continue;  // degenerate pair, redraw
    return {(1.0 / gap) * phi, (1.0 / gap) * psi};
  }
}

/// ||A phi - A psi|| / ||phi - psi|| for one pair.
template <ConeOperator Op>
double lip_ratio(const Op& op, const SampledFunction& phi, const SampledFunction& psi) {
  return sup_norm(op(phi) - op(psi)) / sup_norm(phi - psi);
}

template <ConeOperator Op>
NormEstimate empirical_op_norm(const Op& op, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("trials must be positive");
  const Domain domain = op.domain();
  auto values = parallel_map(trials + 1, [&](std::size_t i) {
    return sup_norm(op(op_norm_sample(domain, seed, i)));
  });
  const std::size_t best = argmax_first(values);
  return NormEstimate{values[best], trials, seed, best, {op_norm_sample(domain, seed, best)}};
}

template <ConeOperator Op>
NormEstimate empirical_lip_seminorm(const Op& op, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("trials must be positive");
  const Domain domain = op.domain();
  auto values = parallel_map(trials + 1, [&](std::size_t i) {
    auto [phi, psi] = lip_sample(domain, seed, i);
    return lip_ratio(op, phi, psi);
  });
  const std::size_t best = argmax_first(values);
  auto [phi, psi] = lip_sample(domain, seed, best);
  return NormEstimate{values[best], trials, seed, best, {std::move(phi), std::move(psi)}};
}

/// Re-evaluates the operator on a stored witness.
template <ConeOperator Op>
double replay_estimate(const Op& op, const NormEstimate& est) {
  if (est.witness.size() == 1) return sup_norm(op(est.witness[0])) / sup_norm(est.witness[0]);
  if (est.witness.size() == 2) return lip_ratio(op, est.witness[0], est.witness[1]);
  throw InvalidArgument("norm estimate has no witness");
}

}  // namespace conekit
