#pragma once

/**
 * @file ubp.hpp
 * @brief Uniform boundedness experiment over finite operator families.
 *
 * For a family of monotone, subadditive, positively homogeneous maps that
 * is pointwise bounded (sup_A ||A phi|| < inf for every phi in the cone),
 * the Lipschitz seminorms are uniformly bounded. The experiment records the
 * pointwise bounds M_phi on a probe set, computes sup_A ||A||_LIP from the
 * closed forms and certifies the explicit bound M = C * M_1, where M_1 is
 * the pointwise bound at the probe phi = 1.
 *
 * That phi = 1 suffices is specific to the kernel classes here: for them
 * ||A 1|| equals the largest admissible kernel entry, which is ||A||_LIP.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "conekit/error.hpp"
#include "conekit/generators.hpp"
#include "conekit/norms.hpp"
#include "conekit/operators.hpp"
#include "conekit/random.hpp"
#include "conekit/verify.hpp"

namespace conekit {

using FamilyMember = std::variant<SupKernelOperator, MaxKernelOperator>;

inline Domain member_domain(const FamilyMember& a) {
  return std::visit([](const auto& op) { return op.domain(); }, a);
}
inline SampledFunction apply_member(const FamilyMember& a, const SampledFunction& f) {
  return std::visit([&](const auto& op) { return op(f); }, a);
}
inline double exact_norm(const FamilyMember& a) {
  return std::visit([](const auto& op) { return exact_norm(op); }, a);
}

enum class FamilyGenerator { Random, Zero, Continuous, Mixed };

inline FamilyGenerator parse_family_generator(const std::string& name) {
  if (name == "random") return FamilyGenerator::Random;
  if (name == "zero") return FamilyGenerator::Zero;
  if (name == "continuous") return FamilyGenerator::Continuous;
  if (name == "mixed") return FamilyGenerator::Mixed;
  throw ParseError("--gen", "unknown family generator '" + name + "' (random|zero|continuous|mixed)");
}

inline const char* to_string(FamilyGenerator g) {
  switch (g) {
    case FamilyGenerator::Random: return "random";
    case FamilyGenerator::Zero: return "zero";
    case FamilyGenerator::Continuous: return "continuous";
    case FamilyGenerator::Mixed: return "mixed";
  }
  return "?";
}

struct FamilySpec {
  std::size_t count = 100;
  FamilyGenerator generator = FamilyGenerator::Random;
  std::uint64_t seed = 0;
  /// Kernel entries are clipped to [0, bound].
  double bound = 7.0;
  /// Size of the shared index set / grid.
  std::size_t size = 8;
  /// Set entry (0,0) of member 0 to `bound`.
  bool plant_maximal_entry = true;
  /// Random probes in addition to phi = 1.
  std::size_t random_probes = 8;
};

inline void validate(const FamilySpec& spec) {
  if (spec.count < 1) throw InvalidArgument("family must contain at least one operator");
  if (!(spec.bound > 0.0) || !std::isfinite(spec.bound)) throw InvalidArgument("bound must be finite and > 0");
  if (spec.size < 2) throw InvalidArgument("family domain size must be >= 2");
}

/// Member `index` of the family. Depends only on (spec.seed, index), so
/// enlarging `count` keeps the earlier members unchanged.
inline FamilyMember generate_member(const FamilySpec& spec, std::size_t index) {
  const std::size_t n = spec.size;
  if (spec.generator == FamilyGenerator::Zero) return SupKernelOperator(FiniteKernel::zero(n));

  auto rng = trial_stream(spec.seed, index);
  // Drawing past the cap and clipping puts mass exactly at the bound.
  const double hi = 1.25 * spec.bound;
  auto clip = [&](std::vector<double> table) {
    for (double& x : table) x = std::min(x, spec.bound);
    if (spec.plant_maximal_entry && index == 0) table[0] = spec.bound;
    return table;
  };

  const bool continuous = spec.generator == FamilyGenerator::Continuous ||
                          (spec.generator == FamilyGenerator::Mixed && index % 2 == 1);
  if (!continuous) {
    auto k = random_finite_kernel(n, rng, 0.0, hi);
    return SupKernelOperator(FiniteKernel(n, clip({k.entries().begin(), k.entries().end()})));
  }
  auto s = random_continuous_spec(n, 1.0, rng, 0.0, hi);
  auto table = clip({s.kernel_table().begin(), s.kernel_table().end()});
  if (spec.plant_maximal_entry && index == 0) {
    // (0,0) must be admissible for the planted entry to count.
    std::vector<double> alpha(s.alpha().values().begin(), s.alpha().values().end());
    alpha[0] = 0.0;
    return MaxKernelOperator(ContinuousKernelSpec(SampledFunction(s.grid(), std::move(alpha)), s.beta(),
                                                  std::move(table)));
  }
  return MaxKernelOperator(ContinuousKernelSpec(s.alpha(), s.beta(), std::move(table)));
}

inline std::vector<FamilyMember> generate_family(const FamilySpec& spec) {
  validate(spec);
  std::vector<FamilyMember> family;
  family.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) family.push_back(generate_member(spec, i));
  return family;
}

/// Probe `index` on `domain`: 0 is the constant 1, the rest are uniform cone functions.
inline SampledFunction ubp_probe(const Domain& domain, std::uint64_t seed, std::size_t index) {
  if (index == 0) return SampledFunction::ones(domain);
  auto rng = trial_stream(splitmix64_mix(seed ^ 0x5bd1e995ULL), index);
  return random_cone_function(domain, rng);
}

struct UbpResult {
  PropertyReport report;
  /// M_phi for each probe, probe 0 being phi = 1.
  std::vector<double> probe_bounds;
  double certified_bound = 0.0;
  double sup_lipschitz = 0.0;
  std::size_t argmax_member = 0;
};

inline UbpResult ubp_experiment(const std::vector<FamilyMember>& family, std::uint64_t seed,
                                std::size_t random_probes = 8, double normality_constant = 1.0) {
  if (family.empty()) throw InvalidArgument("empty operator family");
  UbpResult out;
  out.probe_bounds.assign(random_probes + 1, 0.0);
  for (std::size_t p = 0; p <= random_probes; ++p) {
    for (const auto& a : family) {
      const auto phi = ubp_probe(member_domain(a), seed, p);
      out.probe_bounds[p] = std::max(out.probe_bounds[p], sup_norm(apply_member(a, phi)));
    }
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double lip = exact_norm(family[i]);
    if (lip > out.sup_lipschitz) {
      out.sup_lipschitz = lip;
      out.argmax_member = i;
    }
  }
  out.certified_bound = normality_constant * out.probe_bounds[0];

  auto& r = out.report;
  r.property = "uniform_boundedness";
  r.trials = family.size();
  r.seed = seed;
  r.tolerance = kIdentityTolerance;
  r.worst_violation = std::max(0.0, out.sup_lipschitz - out.certified_bound);
  r.passed = r.worst_violation <= r.tolerance;
  r.witness_index = out.argmax_member;
  r.witness = Witness{{ubp_probe(member_domain(family[out.argmax_member]), seed, 0)}, {}};
  r.quantities = {{"certified_bound", out.certified_bound},
                  {"sup_lipschitz", out.sup_lipschitz},
                  {"C", normality_constant},
                  {"family_size", static_cast<double>(family.size())}};
  return out;
}

inline UbpResult ubp_experiment(const FamilySpec& spec, double normality_constant = 1.0) {
  return ubp_experiment(generate_family(spec), spec.seed, spec.random_probes, normality_constant);
}

}  // namespace conekit
