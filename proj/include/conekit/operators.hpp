#pragma once

/**
 * @file operators.hpp
 * @brief Max-type kernel operators on cones of sampled functions.
 *
 * Two operator classes are provided:
 *
 *   - sup-kernel (max-times) operators on a finite index set,
 *       (A f)(i) = max_j k(i,j) f(j),
 *   - max-type kernel operators on a uniform grid over [0,a] with
 *     state-dependent windows [alpha(s), beta(s)],
 *       (A f)(s_i) = max_{t_j in [alpha(s_i), beta(s_i)]} k(s_i,t_j) f(t_j).
 *
 * Both are monotone, subadditive and positively homogeneous on the cone.
 * The public apply functions accept cone inputs only; they throw
 * ConeViolation otherwise.
 *
 * The max-plus form of a sup-kernel operator is its log conjugate,
 *   log(A f) = maxplus(log k, log f),
 * with log 0 mapped to the tropical bottom -inf.
 */

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conekit/error.hpp"
#include "conekit/space.hpp"

namespace conekit {

namespace detail {
inline void require_nonnegative_table(std::span<const double> entries, const char* what) {
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (!std::isfinite(entries[i]) || entries[i] < 0.0)
      throw InvalidArgument(std::string(what) + " entry " + std::to_string(i) +
                            " must be finite and nonnegative");
}
}  // namespace detail

/// Nonnegative m x m matrix, row-major.
class FiniteKernel {
 public:
  FiniteKernel(std::size_t size, std::vector<double> entries)
      : size_(size), entries_(std::move(entries)) {
    if (size_ < 1) throw InvalidArgument("kernel size must be >= 1");
    if (entries_.size() != size_ * size_)
      throw InvalidArgument("kernel needs " + std::to_string(size_ * size_) + " entries");
    detail::require_nonnegative_table(entries_, "kernel");
  }

  explicit FiniteKernel(const std::vector<std::vector<double>>& rows)
      : FiniteKernel(rows.size(), flatten(rows)) {}

  static FiniteKernel identity(std::size_t m) {
    std::vector<double> e(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) e[i * m + i] = 1.0;
    return FiniteKernel(m, std::move(e));
  }

  static FiniteKernel zero(std::size_t m) { return FiniteKernel(m, std::vector<double>(m * m, 0.0)); }

  std::size_t size() const noexcept { return size_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * size_ + j]; }
  std::span<const double> entries() const noexcept { return entries_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(entries_).subspan(i * size_, size_);
  }

  Domain domain() const { return Domain::finite(size_); }

 private:
  static std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    out.reserve(rows.size() * rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size())
        throw InvalidArgument("kernel row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " +
                              std::to_string(rows.size()));
      out.insert(out.end(), rows[i].begin(), rows[i].end());
    }
    return out;
  }

  std::size_t size_;
  std::vector<double> entries_;
};

/// Window bounds alpha <= beta and a kernel table sampled on a uniform grid over [0,a].
class ContinuousKernelSpec {
 public:
  ContinuousKernelSpec(SampledFunction alpha, SampledFunction beta, std::vector<double> kernel)
      : alpha_(std::move(alpha)), beta_(std::move(beta)), kernel_(std::move(kernel)) {
    const Domain& grid = alpha_.domain();
    if (!grid.is_grid()) throw InvalidArgument("continuous kernel needs a uniform grid domain");
    require_compatible(grid, beta_.domain());
    const std::size_t n = grid.size();
    if (kernel_.size() != n * n)
      throw InvalidArgument("kernel table needs " + std::to_string(n * n) + " entries");
    detail::require_nonnegative_table(kernel_, "kernel");
    const double a = grid.endpoint();
    for (std::size_t i = 0; i < n; ++i) {
      if (alpha_[i] < 0.0 || alpha_[i] > a || beta_[i] < 0.0 || beta_[i] > a)
        throw InvalidArgument("alpha/beta at point " + std::to_string(i) + " leave [0,a]");
      if (alpha_[i] > beta_[i])
        throw InvalidArgument("alpha > beta at point " + std::to_string(i));
    }
  }

  const Domain& grid() const noexcept { return alpha_.domain(); }
  std::size_t size() const noexcept { return grid().size(); }
  const SampledFunction& alpha() const noexcept { return alpha_; }
  const SampledFunction& beta() const noexcept { return beta_; }
  double kernel(std::size_t i, std::size_t j) const noexcept { return kernel_[i * size() + j]; }
  std::span<const double> kernel_table() const noexcept { return kernel_; }

 private:
  SampledFunction alpha_;
  SampledFunction beta_;
  std::vector<double> kernel_;
};

/// Discrete admissible set: mask(i,j) iff t_j lies in [alpha(s_i), beta(s_i)].
class AdmissibleMask {
 public:
  AdmissibleMask(std::size_t size, std::vector<bool> cells) : size_(size), cells_(std::move(cells)) {}

  std::size_t size() const noexcept { return size_; }
  bool operator()(std::size_t i, std::size_t j) const { return cells_[i * size_ + j]; }

  std::size_t row_count(std::size_t i) const {
    std::size_t c = 0;
    for (std::size_t j = 0; j < size_; ++j) c += (*this)(i, j) ? 1 : 0;
    return c;
  }

 private:
  std::size_t size_;
  std::vector<bool> cells_;
};

/// Relative grid-snap tolerance applied to window bounds, in units of the grid step.
inline constexpr double kGridSnap = 1e-9;

inline AdmissibleMask build_admissible_mask(const ContinuousKernelSpec& spec) {
  const Domain& grid = spec.grid();
  const std::size_t n = grid.size();
  const double tau = grid.step() * kGridSnap;
  std::vector<bool> cells(n * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = spec.alpha()[i] - tau;
    const double hi = spec.beta()[i] + tau;
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      const double t = grid.point(j);
      if (lo <= t && t <= hi) {
        cells[i * n + j] = true;
        any = true;
      }
    }
    if (!any) {
      // Window falls strictly between two grid points.
      const double mid = 0.5 * (spec.alpha()[i] + spec.beta()[i]);
      double nearest = std::round(mid / grid.step());
      nearest = std::clamp(nearest, 0.0, static_cast<double>(n - 1));
      cells[i * n + static_cast<std::size_t>(nearest)] = true;
    }
  }
  return AdmissibleMask(n, std::move(cells));
}

inline SampledFunction apply_finite(const FiniteKernel& k, const SampledFunction& f) {
  require_compatible(k.domain(), f.domain());
  require_cone(f);
  const std::size_t m = k.size();
  std::vector<double> out(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double best = 0.0;
    for (std::size_t j = 0; j < m; ++j) best = std::max(best, k(i, j) * f[j]);
    out[i] = best;
  }
  return SampledFunction(f.domain(), std::move(out));
}

inline SampledFunction apply_continuous(const ContinuousKernelSpec& spec, const AdmissibleMask& mask,
                                        const SampledFunction& f) {
  require_compatible(spec.grid(), f.domain());
  require_cone(f);
  if (mask.size() != spec.size()) throw DomainMismatch("mask size does not match the grid");
  const std::size_t n = spec.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (mask(i, j)) best = std::max(best, spec.kernel(i, j) * f[j]);
    out[i] = best;
  }
  return SampledFunction(f.domain(), std::move(out));
}

/// Tropical zero of the max-plus semiring.
inline constexpr double kMaxPlusBottom = -std::numeric_limits<double>::infinity();

/// (log k) (x) g in the max-plus semiring: result(i) = max_j (log k(i,j) + g(j)).
///
/// g may contain the bottom value -inf; NaN and +inf are rejected. Zero kernel
/// entries become bottom, and a row with no finite term yields bottom.
inline std::vector<double> maxplus_apply(const FiniteKernel& k, std::span<const double> g) {
  if (g.size() != k.size())
    throw DomainMismatch("max-plus vector has " + std::to_string(g.size()) +
                         " entries, kernel is " + std::to_string(k.size()));
  for (std::size_t j = 0; j < g.size(); ++j)
    if (std::isnan(g[j]) || g[j] == std::numeric_limits<double>::infinity())
      throw InvalidArgument("max-plus entry " + std::to_string(j) + " must be real or -inf");
  const std::size_t m = k.size();
  std::vector<double> out(m, kMaxPlusBottom);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (k(i, j) == 0.0 || g[j] == kMaxPlusBottom) continue;
      out[i] = std::max(out[i], std::log(k(i, j)) + g[j]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operator handles. Anything with domain() and a call operator on sampled
// functions can be fed to the norm estimators and property checks.

template <typename Op>
concept ConeOperator = requires(const Op& op, const SampledFunction& f) {
  { op.domain() } -> std::convertible_to<Domain>;
  { op(f) } -> std::same_as<SampledFunction>;
};

class SupKernelOperator {
 public:
  explicit SupKernelOperator(FiniteKernel kernel) : kernel_(std::move(kernel)) {}

  Domain domain() const { return kernel_.domain(); }
  const FiniteKernel& kernel() const noexcept { return kernel_; }
  SampledFunction operator()(const SampledFunction& f) const { return apply_finite(kernel_, f); }

 private:
  FiniteKernel kernel_;
};

class MaxKernelOperator {
 public:
  explicit MaxKernelOperator(ContinuousKernelSpec spec)
      : spec_(std::move(spec)), mask_(build_admissible_mask(spec_)) {}

  Domain domain() const { return spec_.grid(); }
  const ContinuousKernelSpec& spec() const noexcept { return spec_; }
  const AdmissibleMask& mask() const noexcept { return mask_; }
  SampledFunction operator()(const SampledFunction& f) const {
    return apply_continuous(spec_, mask_, f);
  }

 private:
  ContinuousKernelSpec spec_;
  AdmissibleMask mask_;
};

/// Wraps an arbitrary callable; used for test doubles and ad-hoc maps.
class FunctionOperator {
 public:
  using Fn = std::function<SampledFunction(const SampledFunction&)>;

  FunctionOperator(Domain domain, Fn fn, std::string name = "function")
      : domain_(std::move(domain)), fn_(std::move(fn)), name_(std::move(name)) {}

  Domain domain() const { return domain_; }
  const std::string& name() const noexcept { return name_; }
  SampledFunction operator()(const SampledFunction& f) const {
    require_compatible(domain_, f.domain());
    return fn_(f);
  }

 private:
  Domain domain_;
  Fn fn_;
  std::string name_;
};

static_assert(ConeOperator<SupKernelOperator>);
static_assert(ConeOperator<MaxKernelOperator>);
static_assert(ConeOperator<FunctionOperator>);

}  // namespace conekit
