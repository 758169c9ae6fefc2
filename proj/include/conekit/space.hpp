#pragma once

/**
 * @file space.hpp
 * @brief Sampled function spaces under the sup norm.
 *
 * A Domain is either a finite index set {0..m-1} or an endpoint-inclusive
 * uniform grid s_i = i*a/(n-1) on [0,a]. A SampledFunction carries one
 * finite real per domain point. The positive cone is the set of functions
 * with every value >= 0, and the order is the pointwise order it induces.
 *
 * Order and cone predicates are exact comparisons with no tolerance.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conekit/error.hpp"

namespace conekit {

class Domain {
 public:
  enum class Kind { FiniteSet, UniformGrid };

  static Domain finite(std::size_t size) {
    if (size < 1) throw InvalidArgument("finite domain needs size >= 1");
    return Domain(Kind::FiniteSet, size, 0.0);
  }

  static Domain grid(std::size_t size, double endpoint) {
    if (size < 2) throw InvalidArgument("uniform grid needs at least 2 points");
    if (!(endpoint > 0.0) || !std::isfinite(endpoint))
      throw InvalidArgument("uniform grid needs a finite endpoint a > 0");
    return Domain(Kind::UniformGrid, size, endpoint);
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return size_; }
  double endpoint() const noexcept { return endpoint_; }
  bool is_grid() const noexcept { return kind_ == Kind::UniformGrid; }

  /// Grid spacing a/(n-1); zero for finite sets.
  double step() const noexcept {
    return is_grid() ? endpoint_ / static_cast<double>(size_ - 1) : 0.0;
  }

  /// Coordinate of point i. The last grid point is exactly a.
  double point(std::size_t i) const noexcept {
    if (!is_grid()) return static_cast<double>(i);
    if (i + 1 == size_) return endpoint_;
    return static_cast<double>(i) * endpoint_ / static_cast<double>(size_ - 1);
  }

  friend bool operator==(const Domain&, const Domain&) = default;

  std::string describe() const {
    if (!is_grid()) return "finite(" + std::to_string(size_) + ")";
    return "grid(" + std::to_string(size_) + ", a=" + std::to_string(endpoint_) + ")";
  }

 private:
  Domain(Kind kind, std::size_t size, double endpoint)
      : kind_(kind), size_(size), endpoint_(endpoint) {}

  Kind kind_;
  std::size_t size_;
  double endpoint_;
};

inline void require_compatible(const Domain& lhs, const Domain& rhs) {
  if (lhs != rhs)
    throw DomainMismatch(lhs.describe() + " vs " + rhs.describe());
}

/// Real-valued function sampled on a Domain. Immutable after construction.
class SampledFunction {
 public:
  SampledFunction(Domain domain, std::vector<double> values)
      : domain_(std::move(domain)), values_(std::move(values)) {
    if (values_.size() != domain_.size())
      throw InvalidArgument("expected " + std::to_string(domain_.size()) + " values, got " +
                            std::to_string(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!std::isfinite(values_[i]))
        throw InvalidArgument("value " + std::to_string(i) + " is not finite");
  }

  static SampledFunction constant(const Domain& domain, double c) {
    return SampledFunction(domain, std::vector<double>(domain.size(), c));
  }
  static SampledFunction zero(const Domain& domain) { return constant(domain, 0.0); }
  static SampledFunction ones(const Domain& domain) { return constant(domain, 1.0); }

  const Domain& domain() const noexcept { return domain_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  friend bool operator==(const SampledFunction&, const SampledFunction&) = default;

 private:
  Domain domain_;
  std::vector<double> values_;
};

inline double sup_norm(const SampledFunction& f) noexcept {
  double best = 0.0;
  for (double v : f.values()) best = std::max(best, std::fabs(v));
  return best;
}

inline SampledFunction abs(const SampledFunction& f) {
  std::vector<double> out(f.size());
  std::transform(f.values().begin(), f.values().end(), out.begin(),
                 [](double v) { return std::fabs(v); });
  return SampledFunction(f.domain(), std::move(out));
}

inline bool is_in_cone(const SampledFunction& f) noexcept {
  return std::all_of(f.values().begin(), f.values().end(), [](double v) { return v >= 0.0; });
}

/// f <= g in the order induced by the positive cone, i.e. g - f >= 0 pointwise.
inline bool partial_le(const SampledFunction& f, const SampledFunction& g) {
  require_compatible(f.domain(), g.domain());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!(f[i] <= g[i])) return false;
  return true;
}

inline void require_cone(const SampledFunction& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] < 0.0)
      throw ConeViolation("value " + std::to_string(i) + " is negative; operator is defined on the cone");
}

namespace detail {
template <typename Op>
SampledFunction zip(const SampledFunction& f, const SampledFunction& g, Op op) {
  require_compatible(f.domain(), g.domain());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = op(f[i], g[i]);
  return SampledFunction(f.domain(), std::move(out));
}
}  // namespace detail

inline SampledFunction operator+(const SampledFunction& f, const SampledFunction& g) {
  return detail::zip(f, g, [](double x, double y) { return x + y; });
}

inline SampledFunction operator-(const SampledFunction& f, const SampledFunction& g) {
  return detail::zip(f, g, [](double x, double y) { return x - y; });
}

inline SampledFunction operator*(double t, const SampledFunction& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = t * f[i];
  return SampledFunction(f.domain(), std::move(out));
}

/// Smallest C observed with ||phi|| <= C ||psi|| over ordered cone pairs 0 <= phi <= psi.
///
/// For the sup norm the true constant is 1; this estimator cross-checks that
/// and supports constants restricted to a sub-cone.
inline double estimate_normality_constant(
    std::span<const std::pair<SampledFunction, SampledFunction>> pairs) {
  double best = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [phi, psi] = pairs[i];
    if (phi.domain() != psi.domain()) throw InvalidPair(i, "domains differ");
    if (!is_in_cone(phi) || !is_in_cone(psi)) throw InvalidPair(i, "not in the cone");
    if (!partial_le(phi, psi)) throw InvalidPair(i, "phi <= psi does not hold");
    const double denom = sup_norm(psi);
    if (!(denom > 0.0)) throw InvalidPair(i, "psi is zero");
    best = std::max(best, sup_norm(phi) / denom);
  }
  return best;
}

}  // namespace conekit
