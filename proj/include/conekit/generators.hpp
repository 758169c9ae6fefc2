#pragma once

// Kernel and window generators: random draws for experiments and the
// named generators accepted in continuous-spec files.
//
// Named generators:
//   "const:c"                    constant c
//   "linear"                     alpha(s) = 0, beta(s) = s
//   "product"                    k(s,t) = s*t (kernel only)
//   "uniform_random:seed:lo:hi"  i.i.d. uniform draws in [lo, hi)

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "conekit/error.hpp"
#include "conekit/operators.hpp"
#include "conekit/random.hpp"
#include "conekit/space.hpp"

namespace conekit {

inline FiniteKernel random_finite_kernel(std::size_t m, SplitMix64& rng, double lo = 0.0, double hi = 10.0) {
  std::vector<double> e(m * m);
  for (double& x : e) x = rng.uniform(lo, hi);
  return FiniteKernel(m, std::move(e));
}

/// Random windows alpha <= beta (min/max of two uniform draws per point) and a uniform kernel table.
inline ContinuousKernelSpec random_continuous_spec(std::size_t n, double a, SplitMix64& rng, double lo = 0.0,
                                                   double hi = 10.0) {
  const Domain grid = Domain::grid(n, a);
  std::vector<double> alpha(n), beta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform(0.0, a);
    const double v = rng.uniform(0.0, a);
    alpha[i] = std::min(u, v);
    beta[i] = std::max(u, v);
  }
  std::vector<double> kernel(n * n);
  for (double& x : kernel) x = rng.uniform(lo, hi);
  return ContinuousKernelSpec(SampledFunction(grid, std::move(alpha)), SampledFunction(grid, std::move(beta)),
                              std::move(kernel));
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text, const std::string& where) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(where, "cannot parse number '" + std::string(text) + "'");
  return value;
}

struct UniformGen {
  std::uint64_t seed;
  double lo;
  double hi;
};

inline UniformGen parse_uniform(const std::vector<std::string_view>& parts, const std::string& where) {
  if (parts.size() != 4) throw ParseError(where, "expected uniform_random:seed:lo:hi");
  UniformGen g{parse_number<std::uint64_t>(parts[1], where), parse_number<double>(parts[2], where),
               parse_number<double>(parts[3], where)};
  if (!(g.lo <= g.hi)) throw ParseError(where, "uniform_random needs lo <= hi");
  return g;
}

}  // namespace detail

enum class WindowSide { Alpha, Beta };

/// Window bound on the grid from a named generator. Values are clipped to [0, a].
inline SampledFunction generate_window(std::string_view name, const Domain& grid, WindowSide side,
                                       const std::string& where) {
  const auto parts = detail::split(name, ':');
  const std::size_t n = grid.size();
  const double a = grid.endpoint();
  std::vector<double> v(n);
  if (parts[0] == "const" && parts.size() == 2) {
    const double c = detail::parse_number<double>(parts[1], where);
    std::fill(v.begin(), v.end(), c);
  } else if (parts[0] == "linear" && parts.size() == 1) {
    for (std::size_t i = 0; i < n; ++i) v[i] = side == WindowSide::Alpha ? 0.0 : grid.point(i);
  } else if (parts[0] == "uniform_random") {
    const auto g = detail::parse_uniform(parts, where);
    SplitMix64 rng(g.seed);
    for (double& x : v) x = std::clamp(rng.uniform(g.lo, g.hi), 0.0, a);
  } else {
    throw ParseError(where, "unknown window generator '" + std::string(name) + "'");
  }
  return SampledFunction(grid, std::move(v));
}

/// Row-major n x n kernel table from a named generator.
inline std::vector<double> generate_kernel_table(std::string_view name, const Domain& grid,
                                                 const std::string& where) {
  const auto parts = detail::split(name, ':');
  const std::size_t n = grid.size();
  std::vector<double> k(n * n);
  if (parts[0] == "const" && parts.size() == 2) {
    const double c = detail::parse_number<double>(parts[1], where);
    std::fill(k.begin(), k.end(), c);
  } else if (parts[0] == "product" && parts.size() == 1) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) k[i * n + j] = grid.point(i) * grid.point(j);
  } else if (parts[0] == "uniform_random") {
    const auto g = detail::parse_uniform(parts, where);
    SplitMix64 rng(g.seed);
    for (double& x : k) x = rng.uniform(g.lo, g.hi);
  } else {
    throw ParseError(where, "unknown kernel generator '" + std::string(name) + "'");
  }
  return k;
}

/// Finite kernel from a name: "zero[:m]", "identity[:m]", "random[:m]" (uniform [0, hi) from `seed`),
/// or "uniform_random:seed:lo:hi[:m]". Default size is 4.
inline FiniteKernel generate_finite_kernel(std::string_view name, std::uint64_t seed, double hi = 10.0) {
  const std::string where = "--gen";
  const auto parts = detail::split(name, ':');
  auto size_at = [&](std::size_t idx) -> std::size_t {
    if (parts.size() <= idx) return 4;
    const auto m = detail::parse_number<std::size_t>(parts[idx], where);
    if (m < 1) throw ParseError(where, "kernel size must be >= 1");
    return m;
  };
  if (parts[0] == "zero" && parts.size() <= 2) return FiniteKernel::zero(size_at(1));
  if (parts[0] == "identity" && parts.size() <= 2) return FiniteKernel::identity(size_at(1));
  if (parts[0] == "random" && parts.size() <= 2) {
    SplitMix64 rng(seed);
    return random_finite_kernel(size_at(1), rng, 0.0, hi);
  }
  if (parts[0] == "uniform_random" && (parts.size() == 4 || parts.size() == 5)) {
    const auto g = detail::parse_uniform({parts.begin(), parts.begin() + 4}, where);
    if (g.lo < 0.0) throw ParseError(where, "kernel entries must be nonnegative");
    SplitMix64 rng(g.seed);
    return random_finite_kernel(size_at(4), rng, g.lo, g.hi);
  }
  throw ParseError(where, "unknown kernel generator '" + std::string(name) + "'");
}

}  // namespace conekit
